#pragma once

// Crank-Nicolson time evolution of the 1D relative wave function under
// sudden quenches of the step potential: one tridiagonal solve per step,
// Dirichlet walls at the box edges.

#include "pairtrap/analytic.hpp"
#include "pairtrap/model.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace pairtrap::dynamics {

using Potential = std::function<double(double)>; ///< interaction of |x|

/// Complex wave function on a uniform grid with pinned-zero boundaries.
struct ComplexField {
    double x_min = -30.0;
    double x_max = 30.0;
    double dx = 0.04;
    double time = 0.0;
    std::vector<std::complex<double>> values;

    std::size_t size() const { return values.size(); }
    double coordinate(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
};

/// sum |psi|^2 dx
double field_norm(const ComplexField& psi);

/// |<a|b>|, clamped to [0,1]; throws GridMismatch for unequal grids.
double fidelity(const ComplexField& a, const ComplexField& b);

/// sqrt(<x^2>)
double avg_separation(const ComplexField& psi);

/// <psi| -d2/dx2 + x^2/4 + v(|x|) |psi> with the 3-point Laplacian.
double energy_expectation(const ComplexField& psi, const Potential& v);

/// One Crank-Nicolson step: psi(t+dt) = (1 + i dt/2 H)^-1 (1 - i dt/2 H) psi(t).
ComplexField cn_step(const ComplexField& psi, const Potential& v, double dt);

struct QuenchScenario {
    StepPotential initial;
    StepPotential final_pot;
    double t_max = 10.0;
    double dt = 2e-4;
    double dx = 0.04;
    double box = 30.0; ///< space is [-box, box]
    int sample_every = 50;
    std::vector<double> snapshot_times{0.0, 1.0, 2.0, 5.0};
    ChannelSpec channel{1, 0, 0};

    void validate() const {
        if (!(dt > 0.0) || !(dx > 0.0) || !(t_max > 0.0) || !(box > 0.0) || sample_every < 1)
            throw DomainError("QuenchScenario: dt, dx, t_max, box must be positive");
    }
};

struct Snapshot {
    double time = 0.0;
    std::vector<double> x;
    std::vector<double> density;
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> fidelity;
    std::vector<double> avg_separation;
    std::vector<Snapshot> snapshots;
    std::vector<std::string> warnings;
};

/// Build the initial state from the quasi-exact ground solution of
/// s.initial, resample it onto the dynamics grid (cubic spline), then
/// evolve under s.final_pot, recording fidelity, average separation and
/// density snapshots.
TimeSeries run_quench(const QuenchScenario& s);

/// The resampled initial field (exposed for stationary-state checks).
ComplexField initial_field(const QuenchScenario& s, std::vector<std::string>* warnings = nullptr);

} // namespace pairtrap::dynamics
