#include "kdvb/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace kdvb {

namespace detail {

double piece(double lambda, int p, double t, int order) {
    const double l = lambda;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double t4 = t3 * t;
    double value = 0.0;
    switch (p) {
        case 0:
            if (order == 0) value = 4.0 * (1.0 - l) * t3 + 3.0 * l * t4;
            else if (order == 1) value = 12.0 * (1.0 - l) * t2 + 12.0 * l * t3;
            else value = 24.0 * (1.0 - l) * t + 36.0 * l * t2;
            break;
        case 1:
            if (order == 0) value = (4.0 - l) + 12.0 * t + 6.0 * (2.0 + l) * t2 - 12.0 * t3 - 3.0 * l * t4;
            else if (order == 1) value = 12.0 + 12.0 * (2.0 + l) * t - 36.0 * t2 - 12.0 * l * t3;
            else value = 12.0 * (2.0 + l) - 72.0 * t - 36.0 * l * t2;
            break;
        case 2:
            if (order == 0) value = (4.0 - l) - 12.0 * t + 6.0 * (2.0 + l) * t2 + 12.0 * t3 - 3.0 * l * t4;
            else if (order == 1) value = -12.0 + 12.0 * (2.0 + l) * t + 36.0 * t2 - 12.0 * l * t3;
            else value = 12.0 * (2.0 + l) + 72.0 * t - 36.0 * l * t2;
            break;
        case 3:
            if (order == 0) value = 4.0 * (l - 1.0) * t3 + 3.0 * l * t4;
            else if (order == 1) value = 12.0 * (l - 1.0) * t2 + 12.0 * l * t3;
            else value = 24.0 * (l - 1.0) * t + 36.0 * l * t2;
            break;
        default:
            return 0.0;
    }
    return value / 24.0;
}

int piece_index(double s) {
    if (!(s >= 0.0) || s > 4.0) return -1;
    if (s == 4.0) return 3;
    return static_cast<int>(std::floor(s));
}

}  // namespace detail

namespace {

double evaluate(const BasisConfig& cfg, int center, double origin, double x, int order) {
    const double s = (x - origin) / cfg.h - static_cast<double>(center - 2);
    const int p = detail::piece_index(s);
    if (p < 0) return 0.0;
    // Offset of the piece's reference knot from x_{i-2}, in cells.
    static constexpr double kRef[4] = {0.0, 1.0, 3.0, 4.0};
    const double t = s - kRef[p];
    return detail::piece(cfg.lambda, p, t, order) / std::pow(cfg.h, order);
}

}  // namespace

NodalTable nodal_table(const BasisConfig& cfg) {
    if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) {
        throw std::invalid_argument("nodal_table: grid spacing h must be positive");
    }
    const double l = cfg.lambda;
    const double h2 = cfg.h * cfg.h;
    return NodalTable{
        .alpha1 = (4.0 - l) / 24.0,
        .alpha2 = (8.0 + l) / 12.0,
        .beta1 = -1.0 / (2.0 * cfg.h),
        .gamma1 = (2.0 + l) / (2.0 * h2),
        .gamma2 = -(4.0 + 2.0 * l) / (2.0 * h2),
    };
}

double eval(const BasisConfig& cfg, int center, double origin, double x) {
    return evaluate(cfg, center, origin, x, 0);
}

double eval_deriv(const BasisConfig& cfg, int center, double origin, double x, int order) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("eval_deriv: only first and second derivatives exist");
    }
    return evaluate(cfg, center, origin, x, order);
}

}  // namespace kdvb
