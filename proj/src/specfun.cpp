#include "pairtrap/specfun.hpp"
#include "pairtrap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

namespace pairtrap::specfun {

namespace {

constexpr double kSeriesTol = 1e-15;   // term-to-sum stopping ratio
constexpr int kSeriesCap = 500;        // iteration cap for series
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;

bool is_nonpositive_integer(double x) {
    return x < 0.5 && std::abs(x - std::round(x)) < 1e-12;
}

std::string fmt_args(double a, double b, double z) {
    std::ostringstream os;
    os << "(alpha=" << a << ", beta=" << b << ", z=" << z << ")";
    return os.str();
}

// Compensated (Kahan) accumulator.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// sin(pi x) with argument reduction, exact signs at half-integers.
double sin_pi(double x) {
    double r = x - std::round(x);
    double s = std::sin(kPi * r);
    return (static_cast<long long>(std::llround(x - r)) % 2 != 0) ? -s : s;
}

// Lanczos coefficients, g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_series(double x) {
    double acc = kLanczos[0];
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (x + k - 1.0);
    return acc;
}

} // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma_fn: non-finite argument");
    if (is_nonpositive_integer(x))
        throw DomainError("gamma_fn: pole at x = " + std::to_string(x));
    if (x < 0.5) return kPi / (sin_pi(x) * gamma_fn(1.0 - x));
    double t = x + 6.5;
    return kSqrt2Pi * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_series(x);
}

double log_gamma_abs(double x) {
    if (!std::isfinite(x)) throw DomainError("log_gamma_abs: non-finite argument");
    if (is_nonpositive_integer(x))
        throw DomainError("log_gamma_abs: pole at x = " + std::to_string(x));
    if (x < 0.5)
        return std::log(kPi / std::abs(sin_pi(x))) - log_gamma_abs(1.0 - x);
    double t = x + 6.5;
    return std::log(kSqrt2Pi) + (x - 0.5) * std::log(t) - t + std::log(lanczos_series(x));
}

double inv_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x >= 0.5) {
        double g = gamma_fn(x);
        return 1.0 / g;
    }
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, stays finite near the poles
    return sin_pi(x) * gamma_fn(1.0 - x) / kPi;
}

namespace {

// sign of Gamma(x) away from poles
int gamma_sign(double x) {
    if (x > 0.0) return 1;
    return sin_pi(x) >= 0.0 ? 1 : -1;
}

// Gamma(x)/Gamma(y) with both arguments away from the guard handled by caller.
double gamma_ratio(double x, double y) {
    double lg = log_gamma_abs(x) - log_gamma_abs(y);
    double v = std::exp(lg);
    return gamma_sign(x) * gamma_sign(y) * v;
}

// Power series for M(a,b,z); caller guarantees z >= 0 or accepts the
// cancellation of an alternating sum (only mild for the uses below).
double kummer_series(double a, double b, double z) {
    KahanSum sum;
    sum.add(1.0);
    double term = 1.0;
    int small_streak = 0;
    for (int k = 0; k < kSeriesCap; ++k) {
        term *= (a + k) * z / ((b + k) * (k + 1.0));
        sum.add(term);
        if (std::abs(term) <= kSeriesTol * std::abs(sum.s)) {
            if (++small_streak >= 2) return sum.s;
        } else {
            small_streak = 0;
        }
    }
    throw ConvergenceError("kummer_m: series cap reached at " + fmt_args(a, b, z));
}

// Large-z expansion M ~ Gamma(b)/Gamma(a) e^z z^{a-b} sum_k (b-a)_k (1-a)_k / (k! z^k).
// Returns nullopt when the expansion cannot reach tolerance before its
// terms start to grow.
std::optional<double> kummer_asymptotic(double a, double b, double z) {
    if (is_nonpositive_integer(a)) return std::nullopt; // polynomial case
    KahanSum sum;
    sum.add(1.0);
    double term = 1.0;
    double prev = std::abs(term);
    for (int k = 0; k < 200; ++k) {
        term *= (b - a + k) * (1.0 - a + k) / ((k + 1.0) * z);
        double mag = std::abs(term);
        if (mag > prev) return std::nullopt; // divergence set in before tolerance
        sum.add(term);
        if (mag <= 1e-13 * std::abs(sum.s)) {
            double lead = log_gamma_abs(b) - log_gamma_abs(a) + z + (a - b) * std::log(z);
            if (lead > 700.0) throw OverflowError("kummer_m: overflow at " + fmt_args(a, b, z));
            return gamma_sign(b) * gamma_sign(a) * std::exp(lead) * sum.s;
        }
        prev = mag;
    }
    return std::nullopt;
}

} // namespace

double kummer_m(const HypArgs& args) {
    double a = args.alpha, b = args.beta, z = args.z;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
        throw DomainError("kummer_m: non-finite argument " + fmt_args(a, b, z));
    if (is_nonpositive_integer(b))
        throw DomainError("kummer_m: beta is a non-positive integer " + fmt_args(a, b, z));
    if (z == 0.0) return 1.0;
    if (z < 0.0) {
        // Kummer transformation keeps the series argument positive.
        double m = kummer_m(HypArgs{b - a, b, -z});
        return std::exp(z) * m;
    }
    if (z > 40.0) {
        if (auto v = kummer_asymptotic(a, b, z)) return *v;
    }
    return kummer_series(a, b, z);
}

double kummer_m_dz(const HypArgs& args) {
    return (args.alpha / args.beta) * kummer_m(HypArgs{args.alpha + 1.0, args.beta + 1.0, args.z});
}

namespace {

// ---- Tricomi U ------------------------------------------------------------

// Large-z expansion U ~ z^{-a} sum_k (a)_k (a-b+1)_k / (k! (-z)^k).
std::optional<double> tricomi_asymptotic(double a, double b, double z) {
    KahanSum sum;
    sum.add(1.0);
    double term = 1.0;
    double prev = std::abs(term);
    for (int k = 0; k < 200; ++k) {
        term *= -(a + k) * (a - b + 1.0 + k) / ((k + 1.0) * z);
        double mag = std::abs(term);
        if (mag > prev) return std::nullopt;
        sum.add(term);
        if (mag <= 1e-12 * std::abs(sum.s))
            return std::exp(-a * std::log(z)) * sum.s;
        prev = mag;
    }
    return std::nullopt;
}

// Connection formula U = c1 M(a,b,z) + c2 z^{1-b} M(a-b+1,2-b,z); only
// valid away from integer b.  Returns nullopt when the two terms cancel
// six or more significant digits.
std::optional<double> tricomi_connection(double a, double b, double z) {
    // either coefficient vanishes when its Gamma denominator sits on a pole
    double t1 = is_nonpositive_integer(a - b + 1.0)
                    ? 0.0
                    : gamma_ratio(1.0 - b, a - b + 1.0) * kummer_m(HypArgs{a, b, z});
    double t2 = is_nonpositive_integer(a)
                    ? 0.0
                    : gamma_ratio(b - 1.0, a) * std::pow(z, 1.0 - b) *
                          kummer_m(HypArgs{a - b + 1.0, 2.0 - b, z});
    double s = t1 + t2;
    if (!std::isfinite(s)) return std::nullopt;
    double big = std::max(std::abs(t1), std::abs(t2));
    if (big > 1e6 * std::abs(s)) return std::nullopt;
    return s;
}

struct AdaptiveQuad {
    const std::function<double(double)>* f;
    double eps_abs; // absolute tolerance for the whole interval
    int evals = 0;
    static constexpr int kMaxEvals = 200000;

    double eval(double x) {
        if (++evals > kMaxEvals)
            throw ConvergenceError("tricomi_u: quadrature eval budget exhausted");
        return (*f)(x);
    }

    static double simpson(double x0, double x2, double f0, double f1, double f2) {
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);
    }

    double run(double x0, double x2, double f0, double f1, double f2, double whole,
               double eps, int depth) {
        double x1 = 0.5 * (x0 + x2);
        double xm1 = 0.5 * (x0 + x1);
        double xm2 = 0.5 * (x1 + x2);
        double fm1 = eval(xm1), fm2 = eval(xm2);
        double left = simpson(x0, x1, f0, fm1, f1);
        double right = simpson(x1, x2, f1, fm2, f2);
        double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
            return left + right + delta / 15.0;
        return run(x0, x1, f0, fm1, f1, left, 0.5 * eps, depth - 1) +
               run(x1, x2, f1, fm2, f2, right, 0.5 * eps, depth - 1);
    }

    double integrate(double x0, double x2) {
        double f0 = eval(x0), f2 = eval(x2), f1 = eval(0.5 * (x0 + x2));
        return run(x0, x2, f0, f1, f2, simpson(x0, x2, f0, f1, f2), eps_abs, 48);
    }
};

// Laplace integral U(a,b,z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt
// for a in [1,2), evaluated in the scaled variable u = z t with the peak
// magnitude factored out to dodge overflow.
double tricomi_integral_base(double a, double b, double z) {
    double p = b - a - 1.0;
    auto log_g = [&](double u) {
        if (u <= 0.0) return (a == 1.0) ? 0.0 : -std::numeric_limits<double>::infinity();
        return -u + (a - 1.0) * std::log(u) + p * std::log1p(u / z);
    };
    // locate the integrand peak
    double c1 = z - a + 1.0 - p;
    double disc = c1 * c1 + 4.0 * (a - 1.0) * z;
    double ustar = disc >= 0.0 ? 0.5 * (-c1 + std::sqrt(disc)) : 0.0;
    double lmax = std::max(log_g(std::max(ustar, 1e-8)), log_g(1.0));
    for (double u : {0.01, 0.1, 10.0, 100.0}) lmax = std::max(lmax, log_g(u));
    // upper cutoff where the integrand has dropped ~1e-20 below the peak
    double uhi = std::max({ustar, 1.0, a});
    int guard = 0;
    while (log_g(uhi) > lmax - 46.0) {
        uhi *= 2.0;
        if (++guard > 200)
            throw ConvergenceError("tricomi_u: integrand tail not decaying at " + fmt_args(a, b, z));
    }
    std::function<double(double)> f = [&](double u) {
        double lg = log_g(u);
        return lg < lmax - 700.0 ? 0.0 : std::exp(lg - lmax);
    };
    AdaptiveQuad quad{&f, 1e-13 * uhi};
    double q = quad.integrate(0.0, uhi);
    if (q <= 0.0 || !std::isfinite(q))
        throw ConvergenceError("tricomi_u: quadrature failed at " + fmt_args(a, b, z));
    // U = exp(lmax - lnGamma(a) - a ln z) * q
    double le = lmax - log_gamma_abs(a) - a * std::log(z) + std::log(q);
    if (le > 700.0) throw OverflowError("tricomi_u: overflow at " + fmt_args(a, b, z));
    return std::exp(le);
}

// Integral route for any alpha: shift alpha into [1,2) and recur downward.
// U is minimal in the direction of increasing alpha, so the downward
// recurrence is stable.
double tricomi_integral(double a, double b, double z) {
    int m = 0;
    double a0 = a;
    if (a < 1.0) {
        m = static_cast<int>(std::ceil(1.0 - a));
        a0 = a + m;
    }
    double u0 = tricomi_integral_base(a0, b, z);
    if (m == 0) return u0;
    double u1 = tricomi_integral_base(a0 + 1.0, b, z);
    // recur down: U(s-1) = (2s - b + z) U(s) - s (s - b + 1) U(s+1)
    double s = a0;
    for (int k = 0; k < m; ++k) {
        double unew = (2.0 * s - b + z) * u0 - s * (s - b + 1.0) * u1;
        if (!std::isfinite(unew))
            throw OverflowError("tricomi_u: recurrence overflow at " + fmt_args(a, b, z));
        u1 = u0;
        u0 = unew;
        s -= 1.0;
    }
    return u0;
}

} // namespace

double tricomi_u(const HypArgs& args) {
    double a = args.alpha, b = args.beta, z = args.z;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
        throw DomainError("tricomi_u: non-finite argument " + fmt_args(a, b, z));
    if (z <= 0.0)
        throw DomainError("tricomi_u: requires z > 0, got " + fmt_args(a, b, z));
    if (z >= 30.0) {
        if (auto v = tricomi_asymptotic(a, b, z)) return *v;
    }
    if (std::abs(b - std::round(b)) > 1e-6) {
        if (auto v = tricomi_connection(a, b, z)) return *v;
    }
    return tricomi_integral(a, b, z);
}

double tricomi_u_dz(const HypArgs& args) {
    return -args.alpha * tricomi_u(HypArgs{args.alpha + 1.0, args.beta + 1.0, args.z});
}

namespace {

// ---- Weber D_nu ------------------------------------------------------------

// Even/odd Kummer representation, adequate while exp(z^2/4) stays far from
// the cancellation floor (|z| <= ~6.5).
double weber_kummer_rep(double nu, double z) {
    double w = 0.5 * z * z;
    double even = inv_gamma(0.5 * (1.0 - nu)) * kummer_m(HypArgs{-0.5 * nu, 0.5, w});
    double odd = inv_gamma(-0.5 * nu) * kummer_m(HypArgs{0.5 * (1.0 - nu), 1.5, w});
    double root_pi = std::sqrt(kPi);
    return std::pow(2.0, 0.5 * nu) * root_pi * std::exp(-0.25 * z * z) *
           (even - std::sqrt(2.0) * z * odd);
}

// For z far on the negative axis the Kummer representation cancels
// catastrophically; integrate the Weber equation outward from z = 0,
// where D_nu and its slope are known in closed form.  The target solution
// grows toward -infinity, so the outward sweep is the stable direction.
double weber_ode_negative(double nu, double z) {
    double y = std::pow(2.0, 0.5 * nu) * std::sqrt(kPi) * inv_gamma(0.5 * (1.0 - nu));
    double yp = -std::pow(2.0, 0.5 * (nu + 1.0)) * std::sqrt(kPi) * inv_gamma(-0.5 * nu);
    auto rhs = [&](double x, double u) { return (0.25 * x * x - nu - 0.5) * u; };
    int n = static_cast<int>(std::ceil(std::abs(z) / 2.5e-4));
    double h = z / n; // negative step
    double x = 0.0;
    for (int i = 0; i < n; ++i) {
        // RK4 on (y, y')
        double k1y = yp, k1p = rhs(x, y);
        double k2y = yp + 0.5 * h * k1p, k2p = rhs(x + 0.5 * h, y + 0.5 * h * k1y);
        double k3y = yp + 0.5 * h * k2p, k3p = rhs(x + 0.5 * h, y + 0.5 * h * k2y);
        double k4y = yp + h * k3p, k4p = rhs(x + h, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        x += h;
        if (!std::isfinite(y))
            throw OverflowError("weber_d: ODE sweep overflow at nu=" + std::to_string(nu) +
                                ", z=" + std::to_string(z));
    }
    return y;
}

} // namespace

double weber_d(double nu, double z) {
    if (!std::isfinite(nu) || !std::isfinite(z))
        throw DomainError("weber_d: non-finite argument");
    if (z >= 5.0) {
        double w = 0.5 * z * z;
        return std::pow(2.0, 0.5 * nu) * std::exp(-0.25 * z * z) *
               tricomi_u(HypArgs{-0.5 * nu, 0.5, w});
    }
    if (z >= -6.5) return weber_kummer_rep(nu, z);
    return weber_ode_negative(nu, z);
}

double weber_d_dz(double nu, double z) {
    return -0.5 * z * weber_d(nu, z) + nu * weber_d(nu - 1.0, z);
}

} // namespace pairtrap::specfun
