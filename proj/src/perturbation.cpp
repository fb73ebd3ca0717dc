#include "pairtrap/perturbation.hpp"

#include "pairtrap/numerov.hpp"
#include "pairtrap/quadrature.hpp"

#include <cmath>
#include <span>

namespace pairtrap::perturbation {

namespace {

// Simpson over the step's support, which ends exactly on a grid node.
double step_overlap(const analytic::PiecewiseSolution& sol, std::span<const double> weight) {
    const auto& grid = sol.grid;
    double h = sol.spacing();
    std::size_t edge = sol.edge_index;
    if (edge >= grid.size() || std::abs(grid[edge] - sol.potential.a) > 0.5 * h)
        throw GridTooCoarse("first_order_energy: grid does not resolve r = a");
    std::size_t lo = 0;
    if (sol.channel.dim == 1) {
        std::size_t centre = grid.size() / 2;
        lo = 2 * centre - edge; // mirror node at -a
    }
    std::size_t count = edge - lo + 1;
    if (count % 2 == 0)
        throw GridTooCoarse("first_order_energy: step edge not on a Simpson panel boundary");
    return simpson_uniform(weight.subspan(lo, count), h);
}

} // namespace

double first_order_energy(const analytic::PiecewiseSolution& sol, const RydbergPotential& q) {
    const auto& grid = sol.grid;
    double h = sol.spacing();
    std::vector<double> f2(grid.size()), ryd(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f2[i] = sol.values[i] * sol.values[i];
        ryd[i] = f2[i] * rydberg_value(q, std::abs(grid[i]));
    }
    double term_ryd = simpson_uniform(ryd, h);
    double term_step = sol.potential.v0 * step_overlap(sol, f2);
    return term_ryd - term_step;
}

PerturbationReport compare(const ChannelSpec& c, const StepPotential& p,
                           const RydbergPotential& q) {
    PerturbationReport rep;
    rep.channel = c;
    rep.v0 = p.v0;
    rep.a = p.a;
    rep.g = q.g;
    rep.rc = q.rc;

    rep.e_step = analytic::eigenvalue(c, p);
    auto sol = analytic::build_solution(c, p, rep.e_step);
    rep.e_corrected = rep.e_step + first_order_energy(sol, q);

    auto v = [&](double r) { return rydberg_value(q, r); };
    auto grid = numerov::default_grid(c);
    try {
        analytic::EnergyWindow w(std::min(rep.e_step, rep.e_corrected) - 1.5,
                                 std::max(rep.e_step, rep.e_corrected) + 1.5);
        rep.e_numerov = numerov::numerov_level(c, v, grid, w);
    } catch (const WindowTooNarrow&) {
        double ho = oscillator_energy(c);
        analytic::EnergyWindow w(ho + std::min(q.g, 0.0) - 1.0, ho + std::max(q.g, 0.0) + 1.0);
        rep.e_numerov = numerov::numerov_level(c, v, grid, w);
    }
    return rep;
}

std::vector<double> first_order_state_correction(const analytic::PiecewiseSolution& sol,
                                                 const RydbergPotential& q,
                                                 int basis_size) {
    const ChannelSpec& c = sol.channel;
    const StepPotential& p = sol.potential;
    int level = c.dim == 1 ? c.n / 2 : c.n;

    auto energies = analytic::find_eigenvalues(c, p, analytic::default_window(c, p, basis_size),
                                               basis_size);
    std::vector<double> corrected = sol.values;
    double h = sol.spacing();

    for (std::size_t j = 0; j < energies.size(); ++j) {
        if (static_cast<int>(j) == level) continue;
        int nj = c.dim == 1 ? 2 * static_cast<int>(j) + c.n % 2 : static_cast<int>(j);
        ChannelSpec cj(c.dim, nj, c.l);
        auto basis = analytic::build_solution(cj, p, energies[j], sol.grid.back(),
                                              static_cast<int>(sol.grid.size()));
        if (basis.grid.size() != sol.grid.size())
            throw GridMismatch("first_order_state_correction: basis grid differs");

        std::vector<double> prod(sol.grid.size()), prod_ryd(sol.grid.size());
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            prod[i] = basis.values[i] * sol.values[i];
            prod_ryd[i] = prod[i] * rydberg_value(q, std::abs(sol.grid[i]));
        }
        double mat = simpson_uniform(prod_ryd, h) - p.v0 * step_overlap(sol, prod);
        double coeff = mat / (sol.energy - energies[j]);
        for (std::size_t i = 0; i < corrected.size(); ++i)
            corrected[i] += coeff * basis.values[i];
    }

    std::vector<double> sq(corrected.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = corrected[i] * corrected[i];
    double norm2 = simpson_uniform(sq, h);
    double inv = 1.0 / std::sqrt(norm2);
    for (double& v : corrected) v *= inv;
    return corrected;
}

} // namespace pairtrap::perturbation
