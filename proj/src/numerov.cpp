#include "pairtrap/numerov.hpp"

#include "pairtrap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pairtrap::numerov {

namespace {

constexpr double kBisectTol = 1e-9;
constexpr double kRenormLimit = 1e250;

double centrifugal_coeff(double lambda) { return lambda * lambda - 0.25; }

} // namespace

NumerovGrid::NumerovGrid(Mode m, double lo, double hi, int n)
    : mode(m), x_min(lo), x_max(hi), n_points(n) {
    if (!(lo < hi)) throw DomainError("NumerovGrid: need x_min < x_max");
    if (n < 1000) throw DomainError("NumerovGrid: need n_points >= 1000");
    if (mode == Mode::linear_1d) {
        if (std::abs(lo + hi) > 1e-12 * std::abs(hi))
            throw DomainError("NumerovGrid: 1D grid must be symmetric about 0");
        if (n % 2 == 0) throw DomainError("NumerovGrid: 1D grid needs an odd point count");
    } else if (mode == Mode::radial_linear) {
        if (lo < 0.0) throw DomainError("NumerovGrid: radial grid requires x_min >= 0");
    }
}

double NumerovGrid::coordinate(int i) const {
    double t = x_min + i * spacing();
    return mode == Mode::radial_log ? std::exp(t) : t;
}

NumerovGrid default_grid(const ChannelSpec& c) {
    if (c.dim == 1) return NumerovGrid(NumerovGrid::Mode::linear_1d, -15.0, 15.0, 6001);
    double lambda = effective_l(c.dim, c.l);
    // push r_min inward until the seed value r^(lambda+1/2) is negligible
    double r_min = std::min(1e-4, std::pow(1e-6, 1.0 / (lambda + 0.5)));
    return NumerovGrid(NumerovGrid::Mode::radial_log, std::log(r_min), std::log(20.0), 8001);
}

NumerovGrid snapped_grid(const ChannelSpec& c, double a) {
    if (!(a > 0.0)) return default_grid(c);
    NumerovGrid g = default_grid(c);
    double h0 = g.spacing();
    if (g.mode == NumerovGrid::Mode::linear_1d) {
        long m = std::max<long>(1, std::lround(a / h0));
        double h = a / static_cast<double>(m);
        long half = static_cast<long>(std::ceil(g.x_max / h));
        return NumerovGrid(g.mode, -half * h, half * h, static_cast<int>(2 * half + 1));
    }
    double sa = std::log(a);
    if (sa <= g.x_min + h0) return g; // step edge below the grid start
    long m = std::max<long>(1, std::lround((sa - g.x_min) / h0));
    double h = (sa - g.x_min) / static_cast<double>(m);
    long n = static_cast<long>(std::ceil((g.x_max - g.x_min) / h));
    return NumerovGrid(g.mode, g.x_min, g.x_min + n * h, static_cast<int>(n + 1));
}

std::vector<double> GriddedSolution::coordinates() const {
    std::vector<double> xs(values.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = grid.coordinate(static_cast<int>(i));
    return xs;
}

namespace {

// Precomputed E-independent pieces of Q(t) = A(t) - E B(t), where the
// transformed equation is y'' = Q y in the integration variable t.
struct SweepEngine {
    NumerovGrid grid;
    ChannelSpec channel;
    double h = 0.0;
    long n = 0;       // last node index of the integration range
    long offset = 0;  // index of t=0 in the stored arrays (1D half-line)
    std::vector<double> qa, qb;
    bool skip_first = false; // radial-linear grids never evaluate Q at r=0

    SweepEngine(const ChannelSpec& c, const Potential& v, const NumerovGrid& g)
        : grid(g), channel(c) {
        h = g.spacing();
        if (g.mode == NumerovGrid::Mode::linear_1d) {
            // parity-reduced half line [0, x_max]
            n = (g.n_points - 1) / 2;
            qa.resize(n + 1);
            qb.assign(n + 1, 1.0);
            for (long j = 0; j <= n; ++j) {
                double x = j * h;
                qa[j] = 0.25 * x * x + v(x);
            }
        } else {
            n = g.n_points - 1;
            double lambda = effective_l(c.dim, c.l);
            qa.resize(n + 1);
            qb.resize(n + 1);
            if (g.mode == NumerovGrid::Mode::radial_linear) {
                double cf = centrifugal_coeff(lambda);
                skip_first = g.x_min == 0.0;
                for (long j = skip_first ? 1 : 0; j <= n; ++j) {
                    double r = g.x_min + j * h;
                    qa[j] = cf / (r * r) + 0.25 * r * r + v(r);
                    qb[j] = 1.0;
                }
                if (skip_first) { qa[0] = 0.0; qb[0] = 0.0; }
            } else {
                for (long j = 0; j <= n; ++j) {
                    double s = g.x_min + j * h;
                    double r = std::exp(s);
                    double r2 = r * r;
                    qa[j] = lambda * lambda + r2 * (v(r) + 0.25 * r2);
                    qb[j] = r2;
                }
            }
        }
    }

    double q(long j, double E) const { return qa[j] - E * qb[j]; }

    // outermost classical turning point, clamped so both 5-point stencils fit
    long matching_index(double E) const {
        long mi = -1;
        for (long j = n; j >= (skip_first ? 1 : 0); --j) {
            if (q(j, E) <= 0.0) { mi = j; break; }
        }
        if (mi < 0) mi = n / 2;
        return std::clamp(mi, 4L, n - 4L);
    }

    struct Sweeps {
        std::vector<double> left;  // indices [0, mi]
        std::vector<double> right; // indices [mi, n]
        long mi = 0;
    };

    Sweeps sweep(double E) const {
        Sweeps s;
        s.mi = matching_index(E);
        double h2 = h * h / 12.0;
        auto gfac = [&](long j) { return 1.0 - h2 * q(j, E); };
        auto cfac = [&](long j) { return 2.0 + 10.0 * h2 * q(j, E); };

        // outward sweep
        s.left.resize(s.mi + 1);
        long start;
        double f_prev; // G_j y_j one step behind
        if (grid.mode == NumerovGrid::Mode::linear_1d) {
            if (channel.n % 2 == 0) {
                s.left[0] = 1.0;
                s.left[1] = s.left[0] * cfac(0) / (2.0 * gfac(1));
            } else {
                s.left[0] = 0.0;
                s.left[1] = 1.0;
            }
            start = 1;
            f_prev = gfac(0) * s.left[0];
        } else if (grid.mode == NumerovGrid::Mode::radial_linear) {
            double lambda = effective_l(channel.dim, channel.l);
            if (skip_first) {
                // r=0 never enters the recurrence: seed the first two interior
                // nodes with the regular power law and start one step later
                s.left[0] = 0.0;
                s.left[1] = std::pow(h, lambda + 0.5);
                s.left[2] = std::pow(2.0 * h, lambda + 0.5);
                start = 2;
                f_prev = gfac(1) * s.left[1];
            } else {
                s.left[0] = std::pow(grid.x_min, lambda + 0.5);
                s.left[1] = std::pow(grid.x_min + h, lambda + 0.5);
                start = 1;
                f_prev = gfac(0) * s.left[0];
            }
        } else {
            double lambda = effective_l(channel.dim, channel.l);
            s.left[0] = 1.0;
            s.left[1] = std::exp(lambda * h);
            start = 1;
            f_prev = gfac(0) * s.left[0];
        }
        for (long j = start; j < s.mi; ++j) {
            double f_next = cfac(j) * s.left[j] - f_prev;
            f_prev = gfac(j) * s.left[j];
            s.left[j + 1] = f_next / gfac(j + 1);
            if (std::abs(s.left[j + 1]) > kRenormLimit) {
                double scale = 1.0 / std::abs(s.left[j + 1]);
                for (long k = 0; k <= j + 1; ++k) s.left[k] *= scale;
                f_prev *= scale;
            }
            if (!std::isfinite(s.left[j + 1]))
                throw OverflowError("numerov_sweep: outward sweep overflow at E=" +
                                    std::to_string(E));
        }

        // inward sweep
        long len = n - s.mi + 1;
        s.right.resize(len);
        s.right[len - 1] = 0.0;
        s.right[len - 2] = 1e-30;
        f_prev = gfac(n) * s.right[len - 1];
        for (long j = n - 1; j > s.mi; --j) {
            long k = j - s.mi;
            double f_next = cfac(j) * s.right[k] - f_prev;
            f_prev = gfac(j) * s.right[k];
            s.right[k - 1] = f_next / gfac(j - 1);
            if (std::abs(s.right[k - 1]) > kRenormLimit) {
                double scale = 1.0 / std::abs(s.right[k - 1]);
                for (long q2 = k - 1; q2 < len; ++q2) s.right[q2] *= scale;
                f_prev *= scale;
            }
            if (!std::isfinite(s.right[k - 1]))
                throw OverflowError("numerov_sweep: inward sweep overflow at E=" +
                                    std::to_string(E));
        }
        return s;
    }

    // cross-Wronskian of the sweeps at the matching node, scaled to be
    // O(1) and free of spurious poles
    double mismatch(double E) const {
        Sweeps s = sweep(E);
        long mi = s.mi;
        double yl = s.left[mi];
        double yr = s.right[0];
        double dl = (25.0 * s.left[mi] - 48.0 * s.left[mi - 1] + 36.0 * s.left[mi - 2] -
                     16.0 * s.left[mi - 3] + 3.0 * s.left[mi - 4]) /
                    (12.0 * h);
        double dr = (-25.0 * s.right[0] + 48.0 * s.right[1] - 36.0 * s.right[2] +
                     16.0 * s.right[3] - 3.0 * s.right[4]) /
                    (12.0 * h);
        double nl = std::max(std::abs(yl), h * std::abs(dl));
        double nr = std::max(std::abs(yr), h * std::abs(dr));
        if (nl == 0.0 || nr == 0.0)
            throw OverflowError("numerov_sweep: degenerate sweep at E=" + std::to_string(E));
        return h * (dl * yr - dr * yl) / (nl * nr);
    }
};

int count_interior_nodes(const std::vector<double>& y, double peak) {
    int nodes = 0;
    double last = 0.0;
    double thr = 1e-9 * peak;
    for (double v : y) {
        if (std::abs(v) <= thr) continue;
        if (last != 0.0 && ((v > 0.0) != (last > 0.0))) ++nodes;
        last = v;
    }
    return nodes;
}

GriddedSolution assemble(const SweepEngine& eng, double E, const SweepEngine::Sweeps& s) {
    const NumerovGrid& g = eng.grid;
    long mi = s.mi;

    // stitch with the value ratio (slope ratio if the value sits on a node)
    double scale;
    if (std::abs(s.right[0]) > 1e-12 * std::abs(s.left[mi]) && s.right[0] != 0.0) {
        scale = s.left[mi] / s.right[0];
    } else {
        double dl = s.left[mi] - s.left[mi - 1];
        double dr = s.right[1] - s.right[0];
        scale = dl / dr;
    }
    std::vector<double> y(eng.n + 1);
    for (long j = 0; j <= mi; ++j) y[j] = s.left[j];
    for (long j = mi + 1; j <= eng.n; ++j) y[j] = scale * s.right[j - mi];

    double peak = 0.0;
    for (double v : y) peak = std::max(peak, std::abs(v));

    GriddedSolution sol;
    sol.grid = g;
    sol.energy = E;
    sol.nodes = count_interior_nodes(y, peak);

    double h = eng.h;
    if (g.mode == NumerovGrid::Mode::linear_1d) {
        long half = eng.n;
        std::vector<double> full(2 * half + 1);
        double parity = eng.channel.n % 2 == 0 ? 1.0 : -1.0;
        for (long j = 0; j <= half; ++j) {
            full[half + j] = y[j];
            full[half - j] = parity * y[j];
        }
        std::vector<double> sq(full.size());
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = full[i] * full[i];
        double norm2 = simpson_uniform(sq, h);
        double inv = 1.0 / std::sqrt(norm2);
        for (double& v : full) v *= inv;
        sol.values = std::move(full);
        sol.nodes = eng.channel.n % 2 == 0 ? 2 * sol.nodes : 2 * sol.nodes + 1;
    } else if (g.mode == NumerovGrid::Mode::radial_linear) {
        std::vector<double> sq(y.size());
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = y[i] * y[i];
        double norm2 = simpson_uniform(sq, h);
        double inv = 1.0 / std::sqrt(norm2);
        for (double& v : y) v *= inv;
        sol.values = std::move(y);
    } else {
        // u(s) -> f(r) = sqrt(r) u;  integral f^2 dr = integral u^2 r^2 ds
        std::vector<double> sq(y.size());
        for (std::size_t i = 0; i < sq.size(); ++i) {
            double r = g.coordinate(static_cast<int>(i));
            sq[i] = y[i] * y[i] * r * r;
        }
        double norm2 = simpson_uniform(sq, h);
        double inv = 1.0 / std::sqrt(norm2);
        sol.values.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            double r = g.coordinate(static_cast<int>(i));
            sol.values[i] = std::sqrt(r) * y[i] * inv;
        }
    }

    // keep the first antinode positive
    for (double v : sol.values) {
        if (std::abs(v) > 1e-6) {
            if (v < 0.0)
                for (double& w : sol.values) w = -w;
            break;
        }
    }
    return sol;
}

} // namespace

double numerov_sweep(const ChannelSpec& c, const Potential& v, const NumerovGrid& g, double E) {
    SweepEngine eng(c, v, g);
    return eng.mismatch(E);
}

std::vector<GriddedSolution> numerov_eigen(const ChannelSpec& c, const Potential& v,
                                           const NumerovGrid& g, const EnergyWindow& w,
                                           int count) {
    SweepEngine eng(c, v, g);
    std::vector<GriddedSolution> found;
    if (count <= 0) return found;

    double e0 = w.e_min;
    double d0 = eng.mismatch(e0);
    while (e0 < w.e_max && static_cast<int>(found.size()) < count) {
        double e1 = std::min(e0 + w.scan_step, w.e_max);
        double d1 = eng.mismatch(e1);
        double root = std::numeric_limits<double>::quiet_NaN();
        if (d0 == 0.0) {
            root = e0;
        } else if (d0 * d1 < 0.0) {
            double lo = e0, hi = e1, flo = d0;
            for (int it = 0; it < 200 && hi - lo > kBisectTol; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = eng.mismatch(mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            root = 0.5 * (lo + hi);
        }
        if (std::isfinite(root)) {
            auto sweeps = eng.sweep(root);
            found.push_back(assemble(eng, root, sweeps));
        }
        e0 = e1;
        d0 = d1;
    }
    std::sort(found.begin(), found.end(),
              [](const GriddedSolution& a, const GriddedSolution& b) { return a.energy < b.energy; });
    return found;
}

double numerov_level(const ChannelSpec& c, const Potential& v, const NumerovGrid& g,
                     const EnergyWindow& w) {
    // generous count: collect everything in the window, then pick by label
    auto sols = numerov_eigen(c, v, g, w, 64);
    for (const auto& s : sols)
        if (s.nodes == c.n) return s.energy;
    std::ostringstream os;
    os << "numerov_level: no root with " << c.n << " nodes in [" << w.e_min << ", "
       << w.e_max << "]";
    throw WindowTooNarrow(os.str());
}

} // namespace pairtrap::numerov
