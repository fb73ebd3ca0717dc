#pragma once

// Densities and spatial-correlation measures built on the normalized
// relative(-radial) eigenfunctions.

#include "pairtrap/analytic.hpp"
#include "pairtrap/numerov.hpp"

#include <vector>

namespace pairtrap::observables {

struct Density {
    std::vector<double> grid;
    std::vector<double> values; ///< |f|^2 at the grid nodes
};

Density density(const analytic::PiecewiseSolution& sol);
Density density(const numerov::GriddedSolution& sol);

struct MeanSquare {
    double value = 0.0; ///< <r^2> (radial, measure dr) or <x^2> (1D, whole line)
    bool tail_ok = true; ///< boundary density below 1e-10 of the peak
};

MeanSquare mean_square_separation_checked(const analytic::PiecewiseSolution& sol);
MeanSquare mean_square_separation_checked(const numerov::GriddedSolution& sol);

double mean_square_separation(const analytic::PiecewiseSolution& sol);
double mean_square_separation(const numerov::GriddedSolution& sol);

/// One point of the average-separation-vs-range curve (ground channel).
struct CorrelationPoint {
    int dim = 1;
    double v0 = 0.0;
    double a = 0.0;
    double avg_separation = 0.0; ///< sqrt(<r^2>)
    double energy = 0.0;
};

struct CorrelationScan {
    std::vector<CorrelationPoint> points;
    std::vector<analytic::ScanGap> gaps;
};

/// Ground-channel scan over the interaction range; failed points are
/// recorded as gaps.
CorrelationScan correlation_scan(int dim, double v0, double a_lo, double a_hi, int points,
                                 int jobs = 1);

} // namespace pairtrap::observables
