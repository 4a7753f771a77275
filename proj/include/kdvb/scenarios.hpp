#pragma once

#include "kdvb/discretization.hpp"
#include "kdvb/stepper.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kdvb {

using ExactSolution = std::function<double(double x, double t)>;

struct Scenario {
    std::string name;
    double a = 0.0;
    double b = 1.0;
    ScalarFunction initial;
    ScalarFunction initial_derivative;
    std::optional<ExactSolution> exact;
    /// Time-dependent end slopes; empty for homogeneous Neumann.
    BoundaryFunction boundary;
    PhysicalParams params;
    int grid_cells = 4;
    double stop_time = 0.0;
    std::vector<double> record_times;

    Grid grid() const { return Grid(a, b, grid_cells); }
};

/// Travelling-wave solution of the KdV-Burgers equation with epsilon = 1:
///   u = c [1 - tanh(z) + sech^2(z)/2],  c = 6 theta^2 / (25 mu),
///   z = theta/(10 mu) * (x - c t).
/// Moves right with speed c, from 2c at -inf down to 0 at +inf.
/// Throws std::invalid_argument for mu == 0.
double exact_traveling_wave(double x, double t, double theta, double mu);

/// x-derivative of exact_traveling_wave.
double exact_traveling_wave_dx(double x, double t, double theta, double mu);

/// Second x-derivative of exact_traveling_wave.
double exact_traveling_wave_dxx(double x, double t, double theta, double mu);

/// Broad pulse u(x, 0) = [1 - tanh((|x| - 25)/5)] / 2 that splits into a
/// soliton train under KdV.
double pulse_initial(double x);

/// Derivative of pulse_initial, taken as zero at x = 0.
double pulse_initial_dx(double x);

enum class BoundaryMode { neumann, exact };

/// Travelling wave on [-20, 20] with mu = 0.01, h = 0.5, dt = 0.001. In exact
/// mode the end slopes follow the analytic wave.
Scenario make_example1(double theta = 0.004, double stop_time = 1.0,
                       BoundaryMode boundary = BoundaryMode::exact);

/// KdV (theta = 0) pulse splitting on [-50, 150] with epsilon = 0.2,
/// mu = 0.1, h = 0.4, dt = 0.05, run to t = 800.
Scenario make_example2();

/// Looks up "example1" or "example2"; throws std::invalid_argument otherwise.
Scenario make_scenario(const std::string& name);

}  // namespace kdvb
