#pragma once

// Interaction potentials, channel bookkeeping and the dimensional-reduction
// rule shared by the analytic and Numerov solvers.  All quantities are in
// trap units: energies in hbar*omega, lengths in sqrt(hbar/(m*omega)).

#include "pairtrap/errors.hpp"

#include <cmath>
#include <string>

namespace pairtrap {

/// Piecewise-constant interaction: v0 for r <= a, 0 for r > a.
struct StepPotential {
    double v0 = 0.0; ///< step height, any sign
    double a = 0.0;  ///< range, a >= 0

    StepPotential() = default;
    StepPotential(double v0_, double a_) : v0(v0_), a(a_) {
        if (!(a >= 0.0) || !std::isfinite(v0))
            throw DomainError("StepPotential: need a >= 0 and finite v0");
    }
};

/// Soft-core interaction g / (1 + (r/Rc)^6).
struct RydbergPotential {
    double g = 0.0;  ///< strength
    double rc = 1.0; ///< range, Rc > 0

    RydbergPotential() = default;
    RydbergPotential(double g_, double rc_) : g(g_), rc(rc_) {
        if (!(rc > 0.0) || !std::isfinite(g))
            throw DomainError("RydbergPotential: need Rc > 0 and finite g");
    }
};

/// One eigenchannel: dimensionality plus quantum numbers.  n counts the
/// nodes of the relative(-radial) function; in 1D it also carries the
/// parity, so l must be zero there.
struct ChannelSpec {
    int dim = 1;
    int n = 0;
    int l = 0;

    ChannelSpec() = default;
    ChannelSpec(int dim_, int n_, int l_ = 0) : dim(dim_), n(n_), l(l_) {
        if (dim < 1 || dim > 3) throw DomainError("ChannelSpec: dim must be 1, 2 or 3");
        if (n < 0 || l < 0) throw DomainError("ChannelSpec: n and l must be non-negative");
        if (dim == 1 && l != 0) throw DomainError("ChannelSpec: l must be 0 in 1D");
    }
};

enum class Symmetry { bosonic, fermionic };

inline const char* to_string(Symmetry s) {
    return s == Symmetry::bosonic ? "bosonic" : "fermionic";
}

inline double step_value(const StepPotential& p, double r) {
    return r <= p.a ? p.v0 : 0.0;
}

inline double rydberg_value(const RydbergPotential& p, double r) {
    double q = r / p.rc;
    double q3 = q * q * q;
    return p.g / (1.0 + q3 * q3);
}

/// Parameter used in place of l in the radial equation: l for 2D,
/// l + 1/2 for 3D (the 2D <-> 3D reduction).  Not defined in 1D.
inline double effective_l(int dim, int l) {
    if (dim == 2) return static_cast<double>(l);
    if (dim == 3) return l + 0.5;
    throw DomainError("effective_l: no radial channel in 1D");
}

/// Exchange symmetry of the total wave function: set by the parity of n
/// in 1D and of l in 2D/3D.
inline Symmetry symmetry_of(const ChannelSpec& c) {
    int parity = (c.dim == 1) ? c.n : c.l;
    return parity % 2 == 0 ? Symmetry::bosonic : Symmetry::fermionic;
}

/// Step height emulating a contact interaction of strength g_hc at range a.
inline double delta_scaling(double g_hc, double a) {
    if (!(a > 0.0))
        throw DomainError("delta_scaling: range must be positive");
    return 2.0 * g_hc * a;
}

/// Harmonic-oscillator energy of a channel at zero interaction.
inline double oscillator_energy(const ChannelSpec& c) {
    switch (c.dim) {
        case 1: return c.n + 0.5;
        case 2: return 2.0 * c.n + c.l + 1.0;
        default: return 2.0 * c.n + c.l + 1.5;
    }
}

} // namespace pairtrap
