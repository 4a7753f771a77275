#pragma once

#include "kdvb/banded.hpp"
#include "kdvb/basis.hpp"
#include "kdvb/discretization.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdvb {

/// Coefficients of u_t + epsilon*u*u_x - theta*u_xx + mu*u_xxx = 0 and the
/// time step.
struct PhysicalParams {
    double epsilon = 1.0;
    double theta = 0.0;
    double mu = 1.0;
    double dt = 1e-3;

    /// Throws std::invalid_argument unless mu != 0, dt > 0, theta >= 0.
    void validate() const;
};

/// Row coefficients at collocation node m. nu1..nu10 build the evolution row,
/// nu11..nu13 the U_x = V constraint row. K and L are U and V at node m at the
/// old time level.
struct StepCoefficients {
    double nu1, nu2, nu3, nu4, nu5, nu6, nu7, nu8, nu9, nu10, nu11, nu12, nu13;
    double K, L;
};

StepCoefficients assemble_row(const PhysicalParams& params, const NodalTable& table,
                              const SolutionState& state, int m);

/// Bandwidth of the reduced system.
inline constexpr std::size_t kStepBandwidth = 5;

/// Reduced Crank-Nicolson system A x^{n+1} = rhs over the interleaved unknowns
/// (delta_0, phi_0, delta_1, phi_1, ..., delta_N, phi_N). The phantom
/// coefficients are eliminated with delta_{-1} = delta_1, phi_{-1} = phi_1,
/// delta_{N+1} = delta_{N-1}, phi_{N+1} = phi_{N-1}.
struct LinearSystem {
    BandedMatrix a;
    std::vector<double> rhs;
};

/// The right-hand side is B x^n evaluated on the state exactly as stored,
/// phantom coefficients included. Nonzero slopes (at the new time level) turn
/// the elimination into delta_{-1} = delta_1 + ux_left/beta1 and so on; the
/// constant parts move to the right-hand side.
LinearSystem build_system(const PhysicalParams& params, const NodalTable& table,
                          const SolutionState& state, const BoundarySlopes& slopes = {});

/// One Crank-Nicolson step. Propagates SingularMatrixError from the solve.
SolutionState step(const PhysicalParams& params, const NodalTable& table, const SolutionState& state,
                   const BoundarySlopes& slopes = {});

/// End slopes as a function of time. An empty function means homogeneous.
using BoundaryFunction = std::function<BoundarySlopes(double t)>;

/// A snapshot of the solution at a requested record time.
struct Snapshot {
    double t;
    SolutionState state;
};

/// Raised when the linear solve fails part-way through a run.
class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, long step_index)
        : std::runtime_error(what), step_index_(step_index) {}

    long step_index() const noexcept { return step_index_; }

private:
    long step_index_;
};

/// Marches from state.t through every record time. Record times must be
/// strictly increasing, not earlier than state.t, and integer multiples of dt
/// to within 1e-9 relative; violations are rejected with std::invalid_argument
/// before any step is taken.
std::vector<Snapshot> advance(const PhysicalParams& params, const NodalTable& table,
                              const SolutionState& state, const std::vector<double>& record_times,
                              const BoundaryFunction& boundary = {});

/// Number of steps of size dt that reach time t, or throws if t is not a
/// multiple of dt.
long steps_to(double t, double dt);

}  // namespace kdvb
