#include "pairtrap/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace pairtrap::dynamics {

namespace {

using cplx = std::complex<double>;

void check_same_grid(const ComplexField& a, const ComplexField& b) {
    if (a.size() != b.size() || std::abs(a.x_min - b.x_min) > 1e-12 ||
        std::abs(a.dx - b.dx) > 1e-15)
        throw GridMismatch("fields live on different grids");
}

// Crank-Nicolson engine with the potential row and the Thomas forward
// sweep coefficients precomputed; one O(N) backsolve per step.
class CnStepper {
public:
    CnStepper(const ComplexField& proto, const Potential& v, double dt)
        : n_(proto.size()), dx_(proto.dx), theta_(0.0, 0.5 * dt) {
        if (n_ < 3) throw DomainError("cn_step: field too small");
        vrow_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            double x = proto.coordinate(i);
            vrow_[i] = 0.25 * x * x + v(std::abs(x));
        }
        inv_dx2_ = 1.0 / (dx_ * dx_);
        off_ = theta_ * (-inv_dx2_);
        diag_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            diag_[i] = 1.0 + theta_ * (2.0 * inv_dx2_ + vrow_[i]);
        // forward elimination on the constant tridiagonal (interior nodes)
        cprime_.resize(n_);
        cplx beta = diag_[1];
        if (std::abs(beta) == 0.0) throw SolveError("cn_step: singular system");
        cprime_[1] = off_ / beta;
        inv_beta_.resize(n_);
        inv_beta_[1] = 1.0 / beta;
        for (std::size_t i = 2; i + 1 < n_; ++i) {
            beta = diag_[i] - off_ * cprime_[i - 1];
            if (std::abs(beta) == 0.0) throw SolveError("cn_step: singular system");
            cprime_[i] = off_ / beta;
            inv_beta_[i] = 1.0 / beta;
        }
        rhs_.resize(n_);
    }

    void step(std::vector<cplx>& psi) {
        // rhs = (1 - i dt/2 H) psi
        rhs_[0] = 0.0;
        rhs_[n_ - 1] = 0.0;
        for (std::size_t i = 1; i + 1 < n_; ++i) {
            cplx hpsi = -(psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) * inv_dx2_ + vrow_[i] * psi[i];
            rhs_[i] = psi[i] - theta_ * hpsi;
        }
        // Thomas backsolve with cached coefficients
        psi[0] = 0.0;
        psi[n_ - 1] = 0.0;
        rhs_[1] = rhs_[1] * inv_beta_[1];
        for (std::size_t i = 2; i + 1 < n_; ++i)
            rhs_[i] = (rhs_[i] - off_ * rhs_[i - 1]) * inv_beta_[i];
        psi[n_ - 2] = rhs_[n_ - 2];
        for (std::size_t i = n_ - 3; i >= 1; --i)
            psi[i] = rhs_[i] - cprime_[i] * psi[i + 1];
    }

private:
    std::size_t n_;
    double dx_;
    cplx theta_;
    double inv_dx2_ = 0.0;
    cplx off_;
    std::vector<double> vrow_;
    std::vector<cplx> diag_, cprime_, inv_beta_, rhs_;
};

// Natural cubic spline through (x_i, y_i); used to move the analytic
// profile onto the dynamics grid.
class CubicSpline {
public:
    CubicSpline(const std::vector<double>& x, const std::vector<double>& y) : x_(x), y_(y) {
        std::size_t n = x.size();
        m_.assign(n, 0.0);
        if (n < 3) return;
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            d[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        }
        b[0] = b[n - 1] = 1.0;
        for (std::size_t i = 1; i < n; ++i) {
            double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        m_[n - 1] = d[n - 1] / b[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
    }

    double operator()(double xq) const {
        if (xq <= x_.front() || xq >= x_.back()) return 0.0;
        auto it = std::upper_bound(x_.begin(), x_.end(), xq);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        double h = x_[i] - x_[i - 1];
        double t0 = (x_[i] - xq) / h, t1 = (xq - x_[i - 1]) / h;
        return t0 * y_[i - 1] + t1 * y_[i] +
               ((t0 * t0 * t0 - t0) * m_[i - 1] + (t1 * t1 * t1 - t1) * m_[i]) * h * h / 6.0;
    }

private:
    std::vector<double> x_, y_;
    std::vector<double> m_;
};

} // namespace

double field_norm(const ComplexField& psi) {
    double s = 0.0;
    for (const auto& v : psi.values) s += std::norm(v);
    return s * psi.dx;
}

double fidelity(const ComplexField& a, const ComplexField& b) {
    check_same_grid(a, b);
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a.values[i]) * b.values[i];
    double f = std::abs(overlap) * a.dx;
    return std::clamp(f, 0.0, 1.0);
}

double avg_separation(const ComplexField& psi) {
    double s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        double x = psi.coordinate(i);
        s += x * x * std::norm(psi.values[i]);
    }
    return std::sqrt(s * psi.dx);
}

double energy_expectation(const ComplexField& psi, const Potential& v) {
    double inv_dx2 = 1.0 / (psi.dx * psi.dx);
    cplx e = 0.0;
    for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
        double x = psi.coordinate(i);
        cplx hpsi = -(psi.values[i + 1] - 2.0 * psi.values[i] + psi.values[i - 1]) * inv_dx2 +
                    (0.25 * x * x + v(std::abs(x))) * psi.values[i];
        e += std::conj(psi.values[i]) * hpsi;
    }
    return e.real() * psi.dx;
}

ComplexField cn_step(const ComplexField& psi, const Potential& v, double dt) {
    if (!(dt > 0.0)) throw DomainError("cn_step: dt must be positive");
    ComplexField out = psi;
    CnStepper stepper(psi, v, dt);
    stepper.step(out.values);
    out.time = psi.time + dt;
    return out;
}

ComplexField initial_field(const QuenchScenario& s, std::vector<std::string>* warnings) {
    s.validate();
    double e0 = analytic::eigenvalue(s.channel, s.initial);
    auto sol = analytic::build_solution(s.channel, s.initial, e0);
    CubicSpline spline(sol.grid, sol.values);

    ComplexField psi;
    psi.x_min = -s.box;
    psi.x_max = s.box;
    std::size_t n = static_cast<std::size_t>(std::lround(2.0 * s.box / s.dx)) + 1;
    psi.dx = 2.0 * s.box / static_cast<double>(n - 1);
    psi.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) psi.values[i] = spline(psi.coordinate(i));
    psi.values.front() = 0.0;
    psi.values.back() = 0.0;

    double raw = field_norm(psi);
    if (std::abs(raw - 1.0) > 1e-6 && warnings)
        warnings->push_back("initial-state resampling changed the norm by " +
                            std::to_string(std::abs(raw - 1.0)));
    double inv = 1.0 / std::sqrt(raw);
    for (auto& v : psi.values) v *= inv;
    return psi;
}

TimeSeries run_quench(const QuenchScenario& s) {
    TimeSeries ts;
    ComplexField psi = initial_field(s, &ts.warnings);
    const ComplexField psi0 = psi;

    auto v_final = [&](double r) { return step_value(s.final_pot, r); };
    CnStepper stepper(psi, v_final, s.dt);

    long steps = static_cast<long>(std::llround(s.t_max / s.dt));
    std::vector<long> snap_steps;
    snap_steps.reserve(s.snapshot_times.size());
    for (double t : s.snapshot_times)
        snap_steps.push_back(std::clamp<long>(std::llround(t / s.dt), 0, steps));

    auto record = [&](long k) {
        ts.times.push_back(k * s.dt);
        ts.fidelity.push_back(fidelity(psi0, psi));
        ts.avg_separation.push_back(avg_separation(psi));
    };
    auto snapshot = [&](long k) {
        for (std::size_t j = 0; j < snap_steps.size(); ++j) {
            if (snap_steps[j] != k) continue;
            Snapshot sn;
            sn.time = k * s.dt;
            sn.x.resize(psi.size());
            sn.density.resize(psi.size());
            for (std::size_t i = 0; i < psi.size(); ++i) {
                sn.x[i] = psi.coordinate(i);
                sn.density[i] = std::norm(psi.values[i]);
            }
            ts.snapshots.push_back(std::move(sn));
            snap_steps[j] = -1; // each requested time fires once
        }
    };

    record(0);
    snapshot(0);
    for (long k = 1; k <= steps; ++k) {
        stepper.step(psi.values);
        psi.time += s.dt;
        if (k % s.sample_every == 0 || k == steps) record(k);
        snapshot(k);
    }
    return ts;
}

} // namespace pairtrap::dynamics
