#include "pairtrap/observables.hpp"

#include "pairtrap/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace pairtrap::observables {

namespace {

constexpr double kTailThreshold = 1e-10;

bool tail_below_threshold(const std::vector<double>& density, bool check_front) {
    double peak = 0.0;
    for (double d : density) peak = std::max(peak, d);
    bool ok = density.back() <= kTailThreshold * peak;
    if (check_front) ok = ok && density.front() <= kTailThreshold * peak;
    return ok;
}

} // namespace

Density density(const analytic::PiecewiseSolution& sol) {
    Density d;
    d.grid = sol.grid;
    d.values.resize(sol.values.size());
    for (std::size_t i = 0; i < sol.values.size(); ++i)
        d.values[i] = sol.values[i] * sol.values[i];
    return d;
}

Density density(const numerov::GriddedSolution& sol) {
    Density d;
    d.grid = sol.coordinates();
    d.values.resize(sol.values.size());
    for (std::size_t i = 0; i < sol.values.size(); ++i)
        d.values[i] = sol.values[i] * sol.values[i];
    return d;
}

MeanSquare mean_square_separation_checked(const analytic::PiecewiseSolution& sol) {
    std::vector<double> integrand(sol.values.size());
    for (std::size_t i = 0; i < sol.values.size(); ++i) {
        double x = sol.grid[i];
        integrand[i] = x * x * sol.values[i] * sol.values[i];
    }
    MeanSquare ms;
    ms.value = simpson_uniform(integrand, sol.spacing());
    std::vector<double> dens(sol.values.size());
    for (std::size_t i = 0; i < dens.size(); ++i) dens[i] = sol.values[i] * sol.values[i];
    ms.tail_ok = tail_below_threshold(dens, sol.channel.dim == 1);
    return ms;
}

MeanSquare mean_square_separation_checked(const numerov::GriddedSolution& sol) {
    const auto& g = sol.grid;
    double h = g.spacing();
    std::vector<double> integrand(sol.values.size());
    if (g.mode == numerov::NumerovGrid::Mode::radial_log) {
        // integral r^2 f^2 dr = integral r^3 f^2 ds
        for (std::size_t i = 0; i < sol.values.size(); ++i) {
            double r = g.coordinate(static_cast<int>(i));
            integrand[i] = r * r * r * sol.values[i] * sol.values[i];
        }
    } else {
        for (std::size_t i = 0; i < sol.values.size(); ++i) {
            double x = g.coordinate(static_cast<int>(i));
            integrand[i] = x * x * sol.values[i] * sol.values[i];
        }
    }
    MeanSquare ms;
    ms.value = simpson_uniform(integrand, h);
    std::vector<double> dens(sol.values.size());
    for (std::size_t i = 0; i < dens.size(); ++i) dens[i] = sol.values[i] * sol.values[i];
    ms.tail_ok = tail_below_threshold(dens, g.mode == numerov::NumerovGrid::Mode::linear_1d);
    return ms;
}

double mean_square_separation(const analytic::PiecewiseSolution& sol) {
    return mean_square_separation_checked(sol).value;
}

double mean_square_separation(const numerov::GriddedSolution& sol) {
    return mean_square_separation_checked(sol).value;
}

CorrelationScan correlation_scan(int dim, double v0, double a_lo, double a_hi, int points,
                                 int jobs) {
    if (points < 1) throw DomainError("correlation_scan: need at least one point");
    ChannelSpec ground(dim, 0, 0);

    auto a_of = [&](int i) {
        return points == 1 ? a_lo : a_lo + (a_hi - a_lo) * static_cast<double>(i) / (points - 1);
    };

    std::vector<CorrelationPoint> pts(points);
    std::vector<char> ok(points, 0);
    std::vector<std::string> errs(points);

    auto run_point = [&](int i) {
        double a = a_of(i);
        try {
            StepPotential p(v0, a);
            double e = analytic::eigenvalue(ground, p);
            auto sol = analytic::build_solution(ground, p, e);
            double msq = mean_square_separation(sol);
            pts[i] = CorrelationPoint{dim, v0, a, std::sqrt(msq), e};
            ok[i] = 1;
        } catch (const std::exception& e) {
            errs[i] = e.what();
        }
    };

    if (jobs <= 1) {
        for (int i = 0; i < points; ++i) run_point(i);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int i = next++; i < points; i = next++) run_point(i);
        };
        std::vector<std::thread> pool;
        int nthread = std::min(jobs, points);
        for (int i = 0; i < nthread; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    CorrelationScan result;
    for (int i = 0; i < points; ++i) {
        if (ok[i]) {
            result.points.push_back(pts[i]);
        } else {
            result.gaps.push_back(analytic::ScanGap{a_of(i), ground, errs[i]});
        }
    }
    return result;
}

} // namespace pairtrap::observables
