#include "pairtrap/analytic.hpp"

#include "pairtrap/quadrature.hpp"
#include "pairtrap/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

namespace pairtrap::analytic {

namespace sf = pairtrap::specfun;

namespace {

constexpr double kBisectTol = 1e-10;    // |dE| refinement target
constexpr double kResidualTol = 1e-6;   // |W| accepted as "is an eigenvalue"

struct Determinant {
    double num = 0.0; // f_in f_out' - f_in' f_out, with the kappa-cancellation done analytically
    double den = 1.0; // max(|f_in f_out'|, |f_in' f_out|)

    double value() const { return num / std::max(den, 1e-300); }
};

// Boundary pieces at r = a with the common positive prefactor
// r^(lambda+1/2) exp(-r^2/4) (or exp(-x^2/4) in 1D) divided out; the
// scaled determinant is invariant under that scaling.
Determinant radial_determinant(double lambda, const StepPotential& p, double E) {
    const double a = p.a;
    const double w = 0.5 * a * a;
    const double beta = lambda + 1.0;
    const double ain = 0.5 * (beta - (E - p.v0));
    const double aout = 0.5 * (beta - E);
    const double m = sf::kummer_m(ain, beta, w);
    const double mz = sf::kummer_m_dz(ain, beta, w);
    const double u = sf::tricomi_u(aout, beta, w);
    const double uz = sf::tricomi_u_dz(aout, beta, w);
    const double kappa = (lambda + 0.5) / a - 0.5 * a;
    Determinant d;
    d.num = a * (m * uz - mz * u);
    d.den = std::max(std::abs(m * (kappa * u + a * uz)),
                     std::abs((kappa * m + a * mz) * u));
    return d;
}

Determinant even_determinant_1d(const StepPotential& p, double E) {
    const double a = p.a;
    const double w = 0.5 * a * a;
    const double ain = 0.25 - 0.5 * (E - p.v0);
    const double aout = 0.25 - 0.5 * E;
    const double m = sf::kummer_m(ain, 0.5, w);
    const double mz = sf::kummer_m_dz(ain, 0.5, w);
    const double u = sf::tricomi_u(aout, 0.5, w);
    const double uz = sf::tricomi_u_dz(aout, 0.5, w);
    Determinant d;
    d.num = a * (m * uz - mz * u);
    d.den = std::max(std::abs(m * a * (uz - 0.5 * u)),
                     std::abs(a * (mz - 0.5 * m) * u));
    return d;
}

Determinant odd_determinant_1d(const StepPotential& p, double E) {
    const double a = p.a;
    const double w = 0.5 * a * a;
    const double a2 = a * a;
    const double ain = 0.75 - 0.5 * (E - p.v0);
    const double aout = 0.25 - 0.5 * E;
    const double m = sf::kummer_m(ain, 1.5, w);
    const double mz = sf::kummer_m_dz(ain, 1.5, w);
    const double u = sf::tricomi_u(aout, 0.5, w);
    const double uz = sf::tricomi_u_dz(aout, 0.5, w);
    Determinant d;
    d.num = a2 * (m * uz - mz * u) - m * u;
    d.den = std::max(std::abs(a * m * a * (uz - 0.5 * u)),
                     std::abs((m + a2 * mz - 0.5 * a2 * m) * u));
    return d;
}

Determinant determinant(const ChannelSpec& c, const StepPotential& p, double E) {
    if (c.dim == 1)
        return c.n % 2 == 0 ? even_determinant_1d(p, E) : odd_determinant_1d(p, E);
    return radial_determinant(effective_l(c.dim, c.l), p, E);
}

void require_positive_range(const StepPotential& p, const char* who) {
    if (!(p.a > 0.0))
        throw DomainError(std::string(who) + ": the matching radius requires a > 0");
}

std::string channel_str(const ChannelSpec& c) {
    std::ostringstream os;
    os << "dim=" << c.dim << " n=" << c.n << " l=" << c.l;
    return os.str();
}

// Scan for sign changes of the determinant and bisect each bracket.
// Early exit after `count` roots: the window construction guarantees no
// family root sits below e_min, so the k-th root found is level k.
std::vector<double> scan_roots(const std::function<double(double)>& w_of_e,
                               const EnergyWindow& w, int count) {
    std::vector<double> roots;
    if (count <= 0) return roots;
    double e0 = w.e_min;
    double w0 = w_of_e(e0);
    while (e0 < w.e_max && static_cast<int>(roots.size()) < count) {
        double e1 = std::min(e0 + w.scan_step, w.e_max);
        double w1 = w_of_e(e1);
        if (w0 == 0.0) {
            roots.push_back(e0);
        } else if (w0 * w1 < 0.0) {
            double lo = e0, hi = e1, flo = w0;
            for (int it = 0; it < 200 && hi - lo > kBisectTol; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = w_of_e(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        e0 = e1;
        w0 = w1;
    }
    return roots;
}

} // namespace

double matching_determinant(const ChannelSpec& c, const StepPotential& p, double E) {
    require_positive_range(p, "matching_determinant");
    try {
        return determinant(c, p, E).value();
    } catch (const Error& e) {
        throw EvaluationError("matching_determinant at " + channel_str(c) +
                              " E=" + std::to_string(E) + ": " + e.what());
    }
}

EnergyWindow default_window(const ChannelSpec& c, const StepPotential& p, int count) {
    double lo_ho, hi_ho;
    if (c.dim == 1) {
        int base = c.n % 2;
        lo_ho = base + 0.5;
        hi_ho = base + 2.0 * (count - 1) + 0.5;
    } else {
        double lambda = effective_l(c.dim, c.l);
        lo_ho = lambda + 1.0;
        hi_ho = 2.0 * (count - 1) + lambda + 1.0;
    }
    return EnergyWindow(lo_ho + std::min(p.v0, 0.0) - 1.0,
                        hi_ho + std::max(p.v0, 0.0) + 1.0);
}

std::vector<double> find_eigenvalues(const ChannelSpec& c, const StepPotential& p,
                                     const EnergyWindow& w, int count) {
    require_positive_range(p, "find_eigenvalues");
    try {
        auto f = [&](double e) { return determinant(c, p, e).value(); };
        return scan_roots(f, w, count);
    } catch (const Error& e) {
        throw EvaluationError("find_eigenvalues at " + channel_str(c) + ": " + e.what());
    }
}

std::vector<double> find_eigenvalues_strict(const ChannelSpec& c, const StepPotential& p,
                                            const EnergyWindow& w, int count) {
    auto roots = find_eigenvalues(c, p, w, count);
    if (static_cast<int>(roots.size()) < count) {
        std::ostringstream os;
        os << "window [" << w.e_min << ", " << w.e_max << "] holds " << roots.size()
           << " roots of " << channel_str(c) << ", wanted " << count;
        throw WindowTooNarrow(os.str());
    }
    return roots;
}

std::vector<double> radial_eigenvalues(double lambda, const StepPotential& p,
                                       const EnergyWindow& w, int count) {
    require_positive_range(p, "radial_eigenvalues");
    try {
        auto f = [&](double e) { return radial_determinant(lambda, p, e).value(); };
        return scan_roots(f, w, count);
    } catch (const Error& e) {
        throw EvaluationError("radial_eigenvalues at lambda=" + std::to_string(lambda) +
                              ": " + e.what());
    }
}

double eigenvalue(const ChannelSpec& c, const StepPotential& p) {
    int index = c.dim == 1 ? c.n / 2 : c.n;
    auto roots = find_eigenvalues_strict(c, p, default_window(c, p, index + 1), index + 1);
    return roots[index];
}

namespace {

// Full-prefactor branch evaluations used when sampling the eigenfunction.
struct Branches {
    ChannelSpec c;
    StepPotential p;
    double E;
    double lambda = 0.0; // radial only
    double beta_in = 0.0, alpha_in = 0.0, alpha_out = 0.0;

    explicit Branches(const ChannelSpec& c_, const StepPotential& p_, double e)
        : c(c_), p(p_), E(e) {
        if (c.dim == 1) {
            bool even = c.n % 2 == 0;
            beta_in = even ? 0.5 : 1.5;
            alpha_in = (even ? 0.25 : 0.75) - 0.5 * (E - p.v0);
            alpha_out = 0.25 - 0.5 * E;
        } else {
            lambda = effective_l(c.dim, c.l);
            beta_in = lambda + 1.0;
            alpha_in = 0.5 * (beta_in - (E - p.v0));
            alpha_out = 0.5 * (beta_in - E);
        }
    }

    double prefactor(double r) const {
        if (c.dim == 1) return std::exp(-0.25 * r * r);
        return std::pow(r, lambda + 0.5) * std::exp(-0.25 * r * r);
    }

    double inner(double r) const {
        double w = 0.5 * r * r;
        double m = sf::kummer_m(alpha_in, beta_in, w);
        double v = prefactor(r) * m;
        if (c.dim == 1 && c.n % 2 != 0) v *= r;
        return v;
    }

    double outer(double r) const {
        double w = 0.5 * r * r;
        double beta_out = c.dim == 1 ? 0.5 : beta_in;
        return prefactor(r) * sf::tricomi_u(alpha_out, beta_out, w);
    }

    double inner_slope(double r) const {
        double w = 0.5 * r * r;
        double m = sf::kummer_m(alpha_in, beta_in, w);
        double mz = sf::kummer_m_dz(alpha_in, beta_in, w);
        if (c.dim == 1) {
            if (c.n % 2 == 0) return prefactor(r) * r * (mz - 0.5 * m);
            return prefactor(r) * (m + r * r * (mz - 0.5 * m));
        }
        double kappa = (lambda + 0.5) / r - 0.5 * r;
        return prefactor(r) * (kappa * m + r * mz);
    }

    double outer_slope(double r) const {
        double w = 0.5 * r * r;
        double beta_out = c.dim == 1 ? 0.5 : beta_in;
        double u = sf::tricomi_u(alpha_out, beta_out, w);
        double uz = sf::tricomi_u_dz(alpha_out, beta_out, w);
        if (c.dim == 1) return prefactor(r) * r * (uz - 0.5 * u);
        double kappa = (lambda + 0.5) / r - 0.5 * r;
        return prefactor(r) * (kappa * u + r * uz);
    }
};

int count_nodes(const std::vector<double>& values, double threshold) {
    int nodes = 0;
    double last = 0.0;
    for (double v : values) {
        if (std::abs(v) <= threshold) continue;
        if (last != 0.0 && ((v > 0.0) != (last > 0.0))) ++nodes;
        last = v;
    }
    return nodes;
}

} // namespace

PiecewiseSolution build_solution(const ChannelSpec& c, const StepPotential& p, double E,
                                 double r_max, int n_grid) {
    require_positive_range(p, "build_solution");
    double wnorm = matching_determinant(c, p, E);
    if (std::abs(wnorm) > kResidualTol)
        throw NotAnEigenvalue("build_solution: |W(E)| = " + std::to_string(std::abs(wnorm)) +
                              " at E = " + std::to_string(E));

    double extent = r_max > 0.0
                        ? r_max
                        : std::max(2.0 * std::sqrt(std::max({E, E - p.v0, 1.0})) + 8.0,
                                   p.a + 4.0);
    if (n_grid < 64) n_grid = 64;

    // spacing chosen so the step edge lands on an even-index node
    double h0 = extent / (n_grid - 1);
    long m = std::max<long>(2, 2 * std::lround(p.a / (2.0 * h0)));
    double h = p.a / static_cast<double>(m);
    long half_n = 2 * static_cast<long>(std::ceil(extent / (2.0 * h)));

    Branches br(c, p, E);

    // coefficients from cross-matching the boundary values; fall back to the
    // slopes when the eigenfunction has a node at the edge
    double fin = br.inner(p.a), fout = br.outer(p.a);
    double din = br.inner_slope(p.a), dout = br.outer_slope(p.a);
    double cin, cout;
    if (std::abs(fin) + std::abs(fout) >
        1e-8 * p.a * (std::abs(din) + std::abs(dout))) {
        cin = fout;
        cout = fin;
    } else {
        cin = dout;
        cout = din;
    }

    PiecewiseSolution sol;
    sol.channel = c;
    sol.potential = p;
    sol.energy = E;

    auto sample = [&](double r) {
        return r <= p.a ? cin * br.inner(r) : cout * br.outer(r);
    };

    try {
        if (c.dim == 1) {
            long total = 2 * half_n + 1;
            sol.grid.resize(total);
            sol.values.resize(total);
            double parity = c.n % 2 == 0 ? 1.0 : -1.0;
            for (long j = 0; j <= half_n; ++j) {
                double x = j * h;
                double v = sample(x);
                sol.grid[half_n + j] = x;
                sol.values[half_n + j] = v;
                sol.grid[half_n - j] = -x;
                sol.values[half_n - j] = parity * v;
            }
            sol.edge_index = static_cast<std::size_t>(half_n + m);
        } else {
            sol.grid.resize(half_n + 1);
            sol.values.resize(half_n + 1);
            for (long j = 0; j <= half_n; ++j) {
                double r = j * h;
                sol.grid[j] = r;
                sol.values[j] = j == 0 ? 0.0 : sample(r);
            }
            sol.edge_index = static_cast<std::size_t>(m);
        }
    } catch (const Error& e) {
        throw EvaluationError("build_solution at " + channel_str(c) + ": " + e.what());
    }

    // L2-normalize with the same Simpson rule the observables use
    std::vector<double> sq(sol.values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = sol.values[i] * sol.values[i];
    double norm2 = simpson_uniform(sq, h);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw NotAnEigenvalue("build_solution: non-normalizable profile at E = " +
                              std::to_string(E));
    double scale = 1.0 / std::sqrt(norm2);

    // fix the overall sign: first significant sample left of the edge positive
    double peak = 0.0;
    for (double v : sol.values) peak = std::max(peak, std::abs(v));
    for (std::size_t i = c.dim == 1 ? sol.values.size() / 2 : 0; i < sol.values.size(); ++i) {
        if (std::abs(sol.values[i]) > 1e-6 * peak) {
            if (sol.values[i] < 0.0) scale = -scale;
            break;
        }
    }
    for (double& v : sol.values) v *= scale;
    sol.inner_coeff = cin * scale;
    sol.outer_coeff = cout * scale;

    int nodes = count_nodes(sol.values, 1e-9 * std::abs(scale) * peak);
    if (nodes != c.n)
        throw NotAnEigenvalue("build_solution: profile has " + std::to_string(nodes) +
                              " nodes, channel expects " + std::to_string(c.n));
    return sol;
}

ScanResult spectrum_scan(const std::vector<ChannelSpec>& channels, const ScanAxis& axis,
                         int jobs) {
    if (axis.points < 1) throw DomainError("spectrum_scan: need at least one point");
    const std::size_t npts = static_cast<std::size_t>(axis.points);
    const std::size_t ntask = npts * channels.size();

    auto scan_value = [&](std::size_t i) {
        return axis.points == 1
                   ? axis.lo
                   : axis.lo + (axis.hi - axis.lo) * static_cast<double>(i) /
                         (axis.points - 1);
    };

    std::vector<ScanRow> rows(ntask);
    std::vector<char> ok(ntask, 0);
    std::vector<std::string> errs(ntask);

    auto run_task = [&](std::size_t t) {
        std::size_t ip = t / channels.size();
        const ChannelSpec& ch = channels[t % channels.size()];
        double v = scan_value(ip);
        StepPotential pot = axis.vary == ScanAxis::Vary::v0 ? StepPotential(v, axis.fixed)
                                                            : StepPotential(axis.fixed, v);
        try {
            rows[t] = ScanRow{v, ch, eigenvalue(ch, pot)};
            ok[t] = 1;
        } catch (const std::exception& e) {
            errs[t] = e.what();
        }
    };

    if (jobs <= 1) {
        for (std::size_t t = 0; t < ntask; ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t t = next++; t < ntask; t = next++) run_task(t);
        };
        std::vector<std::thread> pool;
        int nthread = std::min<std::size_t>(jobs, ntask);
        pool.reserve(nthread);
        for (int i = 0; i < nthread; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ScanResult result;
    result.rows.reserve(ntask);
    for (std::size_t t = 0; t < ntask; ++t) {
        if (ok[t]) {
            result.rows.push_back(rows[t]);
        } else {
            result.gaps.push_back(
                ScanGap{scan_value(t / channels.size()), channels[t % channels.size()], errs[t]});
        }
    }
    return result;
}

} // namespace pairtrap::analytic
