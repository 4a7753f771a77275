#pragma once

namespace kdvb {

/// Parameters of the extended cubic B-spline family on a uniform grid.
///
/// Each basis function E_i is supported on [x_{i-2}, x_{i+2}] and consists of
/// four quartic pieces. The free parameter `lambda` bends the pieces while
/// keeping C2 continuity; lambda = 0 gives the classical cubic B-spline.
/// No admissibility range is enforced. The basis itself is tested on [-8, 1];
/// at lambda = -2 and -8 the nodal interpolation operator becomes singular.
struct BasisConfig {
    double lambda = 0.0;
    double h = 1.0;
};

/// Nodal values of E_i and its derivatives at x_{i-1}, x_i, x_{i+1}.
///
/// U(x_m) = alpha1*c_{m-1} + alpha2*c_m + alpha1*c_{m+1}
/// U'(x_m) = beta1*(c_{m-1} - c_{m+1})
/// U''(x_m) = gamma1*c_{m-1} + gamma2*c_m + gamma1*c_{m+1}
struct NodalTable {
    double alpha1;
    double alpha2;
    double beta1;
    double gamma1;
    double gamma2;
};

/// Throws std::invalid_argument if h is not a positive finite number.
NodalTable nodal_table(const BasisConfig& cfg);

/// Value of the basis function centred on knot `center` of the uniform grid
/// x_k = origin + k*h. Zero outside the support.
double eval(const BasisConfig& cfg, int center, double origin, double x);

/// First (order 1) or second (order 2) derivative of the basis function.
/// Higher orders do not exist as continuous functions for this family and are
/// rejected with std::invalid_argument.
double eval_deriv(const BasisConfig& cfg, int center, double origin, double x, int order);

namespace detail {

/// Evaluates a single polynomial piece (0..3, left to right over the support)
/// at the local coordinate t = (x - x_ref)/h, scaled so that the result is
/// h^order times the derivative. The reference knot of piece p is
/// x_{i-2}, x_{i-1}, x_{i+1}, x_{i+2} for p = 0, 1, 2, 3.
double piece(double lambda, int p, double t, int order);

/// Piece index for position s = (x - x_{i-2})/h in [0, 4], half-open
/// intervals [k, k+1) with the last piece closed. Returns -1 outside.
int piece_index(double s);

}  // namespace detail

}  // namespace kdvb
