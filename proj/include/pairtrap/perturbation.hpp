#pragma once

// First-order energy correction bridging the step-potential solution to
// the Rydberg potential, plus the three-way comparison report
// (step / step+correction / Numerov reference).

#include "pairtrap/analytic.hpp"
#include "pairtrap/model.hpp"

#include <cmath>
#include <vector>

namespace pairtrap::perturbation {

/// Difference potential: rydberg(r) - step(r).
inline double v_pert(const RydbergPotential& q, const StepPotential& p, double r) {
    return rydberg_value(q, r) - step_value(p, r);
}

/// First-order energy shift <f| v_pert |f> in the solution's measure
/// (whole-line dx in 1D, dr radially).  The integrand jumps at r = a, so
/// the Rydberg part is integrated over the full grid and the step part
/// over the edge-aligned subrange.
double first_order_energy(const analytic::PiecewiseSolution& sol, const RydbergPotential& q);

struct PerturbationReport {
    ChannelSpec channel;
    double v0 = 0.0, a = 0.0, g = 0.0, rc = 0.0;
    double e_step = 0.0;
    double e_corrected = 0.0;
    double e_numerov = 0.0;

    double gap_before() const { return std::abs(e_step - e_numerov); }
    double gap_after() const { return std::abs(e_corrected - e_numerov); }
};

/// Solve the channel with both solvers and assemble the comparison row.
PerturbationReport compare(const ChannelSpec& c, const StepPotential& p,
                           const RydbergPotential& q);

/// Experimental first-order eigenvector correction using a truncated sum
/// over `basis_size` unperturbed step-potential states of the same family.
/// Returns the normalized corrected profile on the solution's grid.  Kept
/// out of every acceptance gate: the correction is known to be unreliable
/// at large range/strength.
std::vector<double> first_order_state_correction(const analytic::PiecewiseSolution& sol,
                                                 const RydbergPotential& q,
                                                 int basis_size = 30);

} // namespace pairtrap::perturbation
