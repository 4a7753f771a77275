#pragma once

#include "kdvb/discretization.hpp"
#include "kdvb/scenarios.hpp"
#include "kdvb/stepper.hpp"

#include <vector>

namespace kdvb {

/// Max over nodes of |exact(x_i, t) - U_i|.
double linf_error(const SolutionState& state, const NodalTable& table, const Grid& grid,
                  const ExactSolution& exact, double t);

/// The four lowest KdV invariants
///   C1 = int u,  C2 = int u^2,  C3 = int (u^3 - 3 (mu/eps) u_x^2),
///   C4 = int (u^4 - 12 (mu/eps) u u_x^2 + 7.2 (mu/eps)^2 u_xx^2).
struct ConservedQuantities {
    double c1, c2, c3, c4;
};

/// Composite trapezoid rule over the nodes; u, u_x and u_xx come from the
/// spline nodal formulas. Throws std::invalid_argument if epsilon == 0.
ConservedQuantities conserved_quantities(const SolutionState& state, const NodalTable& table,
                                         const Grid& grid, const PhysicalParams& params);

struct Peak {
    double position;
    double height;
};

/// Interior nodes that strictly exceed their two neighbours on each side and
/// reach `threshold`, ordered by descending position (leading wave first).
std::vector<Peak> find_peaks(const SolutionState& state, const NodalTable& table, const Grid& grid,
                             double threshold);

}  // namespace kdvb
