#pragma once

// Confluent hypergeometric functions (Kummer M, Tricomi U), the Weber
// parabolic-cylinder function D_nu, their z-derivatives, and the gamma
// function they are built on.  Everything is evaluated from scratch in
// double precision; no external special-function library is involved.
//
// Accuracy targets (relative): M 1e-10 on |z| <= 60, |alpha|,|beta| <= 60;
// U 1e-8 over the solver's operating range (z > 0); D_nu 1e-8 for
// |z| <= 30, |nu| <= 40.

#include <cstddef>

namespace pairtrap::specfun {

/// Parameter bundle of the confluent hypergeometric equation.
struct HypArgs {
    double alpha = 0.0;
    double beta = 1.0;
    double z = 0.0;
};

/// Gamma(x) for real x, Lanczos approximation plus reflection.
/// Throws DomainError at the poles (x = 0, -1, -2, ...).
double gamma_fn(double x);

/// log|Gamma(x)| for real non-pole x.
double log_gamma_abs(double x);

/// 1/Gamma(x); returns exactly 0 at the poles.
double inv_gamma(double x);

/// Kummer's function M(alpha, beta, z) = 1F1(alpha; beta; z).
double kummer_m(const HypArgs& args);
inline double kummer_m(double alpha, double beta, double z) {
    return kummer_m(HypArgs{alpha, beta, z});
}

/// dM/dz via the contiguous relation (alpha/beta) M(alpha+1, beta+1, z).
double kummer_m_dz(const HypArgs& args);
inline double kummer_m_dz(double alpha, double beta, double z) {
    return kummer_m_dz(HypArgs{alpha, beta, z});
}

/// Tricomi's function U(alpha, beta, z) for z > 0.
double tricomi_u(const HypArgs& args);
inline double tricomi_u(double alpha, double beta, double z) {
    return tricomi_u(HypArgs{alpha, beta, z});
}

/// dU/dz = -alpha U(alpha+1, beta+1, z).
double tricomi_u_dz(const HypArgs& args);
inline double tricomi_u_dz(double alpha, double beta, double z) {
    return tricomi_u_dz(HypArgs{alpha, beta, z});
}

/// Weber (parabolic-cylinder) function D_nu(z), the solution of
/// u'' + (nu + 1/2 - z^2/4) u = 0 that decays as z -> +infinity.
double weber_d(double nu, double z);

/// dD_nu/dz = -(z/2) D_nu(z) + nu D_{nu-1}(z).
double weber_d_dz(double nu, double z);

} // namespace pairtrap::specfun
