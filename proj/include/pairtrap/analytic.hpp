#pragma once

// Quasi-exact eigensolver for the step potential.  Inside the step the
// relative equation is a shifted oscillator solved by the origin-regular
// Kummer branch (even/odd Weber branches in 1D); outside it is solved by
// the Tricomi branch decaying at infinity.  Continuity of value and slope
// at r = a turns into a transcendental matching determinant whose roots
// are the eigenenergies.

#include "pairtrap/model.hpp"

#include <string>
#include <vector>

namespace pairtrap::analytic {

/// Root-bracketing control for eigenvalue searches.
struct EnergyWindow {
    double e_min = 0.0;
    double e_max = 1.0;
    double scan_step = 0.01;

    EnergyWindow() = default;
    EnergyWindow(double lo, double hi, double step = 0.01)
        : e_min(lo), e_max(hi), scan_step(step) {
        if (!(e_min < e_max) || !(scan_step > 0.0))
            throw DomainError("EnergyWindow: need e_min < e_max and scan_step > 0");
    }
};

/// Eigenstate assembled from the inner (Kummer) and outer (Tricomi/Weber)
/// branches, sampled on a uniform grid and L2-normalized.  The grid spans
/// [-x_max, x_max] in 1D and [0, r_max] radially; the step edge falls
/// exactly on a grid node with an even index so Simpson panels never
/// straddle the kink.
struct PiecewiseSolution {
    ChannelSpec channel;
    StepPotential potential;
    double energy = 0.0;
    double inner_coeff = 0.0;
    double outer_coeff = 0.0;
    std::vector<double> grid;
    std::vector<double> values;
    std::size_t edge_index = 0; ///< index of the node at +a

    double spacing() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
};

/// Scaled matching determinant W(E); zero exactly at the eigenvalues of the
/// channel's parity (1D) or l (2D/3D) family.
double matching_determinant(const ChannelSpec& c, const StepPotential& p, double E);

/// Window guaranteed to contain the lowest `count` levels of the channel
/// family (variational bounds plus a one-unit margin on each side).
EnergyWindow default_window(const ChannelSpec& c, const StepPotential& p, int count);

/// Lowest `count` roots of the matching determinant inside the window,
/// bisected to |dE| <= 1e-10 and sorted ascending; the k-th root is the
/// family level with k nodes (n = 2k + parity in 1D).  Returns fewer roots
/// when the window is exhausted.
std::vector<double> find_eigenvalues(const ChannelSpec& c, const StepPotential& p,
                                     const EnergyWindow& w, int count);

/// Same, but throws WindowTooNarrow on a shortfall.
std::vector<double> find_eigenvalues_strict(const ChannelSpec& c, const StepPotential& p,
                                            const EnergyWindow& w, int count);

/// Radial solver entry shared verbatim by the 2D and 3D paths; `lambda` is
/// the effective angular parameter (l in 2D, l + 1/2 in 3D).
std::vector<double> radial_eigenvalues(double lambda, const StepPotential& p,
                                       const EnergyWindow& w, int count);

/// Energy of the channel's own level (c.n) using the default window.
double eigenvalue(const ChannelSpec& c, const StepPotential& p);

/// Assemble the normalized piecewise eigenfunction at eigenvalue E.
/// r_max <= 0 selects the default extent (classical turning point + 8).
PiecewiseSolution build_solution(const ChannelSpec& c, const StepPotential& p, double E,
                                 double r_max = 0.0, int n_grid = 4001);

/// Scan axis for spectrum tables: vary v0 at fixed a, or a at fixed v0.
struct ScanAxis {
    enum class Vary { v0, range };
    Vary vary = Vary::v0;
    double fixed = 1.0;
    double lo = 0.0;
    double hi = 1.0;
    int points = 2;
};

struct ScanRow {
    double scan_value = 0.0;
    ChannelSpec channel;
    double energy = 0.0;
};

struct ScanGap {
    double scan_value = 0.0;
    ChannelSpec channel;
    std::string message;
};

/// Spectrum table for a set of channels along one scan axis.  Failed points
/// are recorded as gaps, never fabricated.
struct ScanResult {
    std::vector<ScanRow> rows;
    std::vector<ScanGap> gaps;
};

ScanResult spectrum_scan(const std::vector<ChannelSpec>& channels, const ScanAxis& axis,
                         int jobs = 1);

} // namespace pairtrap::analytic
