#pragma once

// Reference eigensolver for arbitrary interaction potentials: Numerov
// forward/inward sweeps matched at the outermost classical turning point.
// Three grid flavours: a parity-reduced 1D line, a linear radial grid, and
// a logarithmic radial grid (r = e^s with f = sqrt(r) u(s), which removes
// the first-derivative term and densifies points near the origin).

#include "pairtrap/analytic.hpp" // EnergyWindow
#include "pairtrap/model.hpp"

#include <functional>
#include <vector>

namespace pairtrap::numerov {

using analytic::EnergyWindow;

/// Pure real-valued interaction callback; total on the grid's coordinate
/// range (it is only ever called with non-negative separations).
using Potential = std::function<double(double)>;

struct NumerovGrid {
    enum class Mode { linear_1d, radial_linear, radial_log };

    Mode mode = Mode::linear_1d;
    double x_min = -15.0; ///< s_min = ln r_min in log mode
    double x_max = 15.0;
    int n_points = 6001;

    NumerovGrid() = default;
    NumerovGrid(Mode m, double lo, double hi, int n);

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    /// physical separation at node i (identity except in log mode)
    double coordinate(int i) const;
};

/// Grid defaults sized so the classical turning points of all scanned
/// parameter ranges sit well inside the box.
NumerovGrid default_grid(const ChannelSpec& c);

/// Default-sized grid with the spacing nudged so that the separation `a`
/// falls exactly on a node (keeps the step-potential discontinuity error
/// at the cross-validation level).
NumerovGrid snapped_grid(const ChannelSpec& c, double a);

/// Normalized eigenfunction on a Numerov grid.  `values` holds the
/// physical relative(-radial) function f at `coordinates()`; in 1D the
/// half-line sweep is mirrored onto the full symmetric grid.
struct GriddedSolution {
    NumerovGrid grid;
    double energy = 0.0;
    std::vector<double> values;
    int nodes = 0;

    std::vector<double> coordinates() const;
};

/// Scaled derivative mismatch of the two sweeps at the matching point;
/// zero exactly at the eigenvalues, continuous in E.
double numerov_sweep(const ChannelSpec& c, const Potential& v, const NumerovGrid& g, double E);

/// Lowest `count` eigenpairs in the window, bisected to |dE| <= 1e-9,
/// stitched, normalized and node-labeled.  Returns fewer when the window
/// holds fewer roots.
std::vector<GriddedSolution> numerov_eigen(const ChannelSpec& c, const Potential& v,
                                           const NumerovGrid& g, const EnergyWindow& w,
                                           int count);

/// Convenience wrapper: the energy of the channel's own level (node count
/// c.n) searched in `w`; throws WindowTooNarrow when it is not found.
double numerov_level(const ChannelSpec& c, const Potential& v, const NumerovGrid& g,
                     const EnergyWindow& w);

} // namespace pairtrap::numerov
