#pragma once

#include "kdvb/basis.hpp"

#include <functional>
#include <vector>

namespace kdvb {

/// Uniform grid a = x_0 < x_1 < ... < x_N = b.
class Grid {
public:
    /// Throws std::invalid_argument unless a < b and n_cells >= 4.
    Grid(double a, double b, int n_cells);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int cells() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    double node(int i) const noexcept { return a_ + i * h_; }

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

/// Spline coefficients of U (delta) and V = U_x (phi) at one time level.
/// Both vectors hold indices -1..N+1, so element k is the coefficient of
/// E_{k-1}.
struct SolutionState {
    std::vector<double> delta;
    std::vector<double> phi;
    double t = 0.0;

    int cells() const noexcept { return static_cast<int>(delta.size()) - 3; }
    double delta_at(int i) const { return delta[static_cast<std::size_t>(i + 1)]; }
    double phi_at(int i) const { return phi[static_cast<std::size_t>(i + 1)]; }
};

SolutionState zero_state(const Grid& grid);

/// U, V and their first two x-derivatives at the nodes x_0..x_N.
struct NodalValues {
    std::vector<double> u, ux, uxx;
    std::vector<double> v, vx, vxx;
};

NodalValues nodal_values(const SolutionState& state, const NodalTable& table);

struct PointValue {
    double u;
    double v;
};

/// Evaluates U and V at an arbitrary x in [a, b] by summing the basis
/// functions whose support contains x. Throws std::out_of_range outside.
PointValue eval_at(const SolutionState& state, const BasisConfig& cfg, const Grid& grid, double x);

using ScalarFunction = std::function<double(double)>;

/// Prescribed end slopes U_x and V_x at x = a (left) and x = b (right).
/// All zero is the homogeneous Neumann case.
struct BoundarySlopes {
    double ux_left = 0.0;
    double ux_right = 0.0;
    double vx_left = 0.0;
    double vx_right = 0.0;
};

/// Initial coefficients: U interpolates f at every node with U_xx = 0 at both
/// ends, V interpolates f' at every node with V_x = 0 at both ends.
/// Throws SingularMatrixError if the fit system degenerates.
SolutionState fit_initial(const Grid& grid, const BasisConfig& cfg, const ScalarFunction& f,
                          const ScalarFunction& f_prime);

/// Same interpolation, but the end rows impose the given slopes on U and V.
SolutionState fit_initial(const Grid& grid, const BasisConfig& cfg, const ScalarFunction& f,
                          const ScalarFunction& f_prime, const BoundarySlopes& ends);

/// Sets the four phantom coefficients so that U_x and V_x at the ends take
/// the given values, leaving interior coefficients alone.
void apply_end_slopes(SolutionState& state, const NodalTable& table, const BoundarySlopes& ends);

}  // namespace kdvb
