#include "kdvb/discretization.hpp"

#include "kdvb/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kdvb {

Grid::Grid(double a, double b, int n_cells) : a_(a), b_(b), n_(n_cells), h_(0.0) {
    if (!(a < b)) throw std::invalid_argument("Grid: require a < b");
    if (n_cells < 4) throw std::invalid_argument("Grid: require at least 4 cells");
    h_ = (b - a) / n_cells;
}

SolutionState zero_state(const Grid& grid) {
    const auto size = static_cast<std::size_t>(grid.cells() + 3);
    return SolutionState{std::vector<double>(size, 0.0), std::vector<double>(size, 0.0), 0.0};
}

NodalValues nodal_values(const SolutionState& state, const NodalTable& table) {
    if (state.delta.size() != state.phi.size() || state.delta.size() < 4) {
        throw std::invalid_argument("nodal_values: coefficient vectors have inconsistent lengths");
    }
    const std::size_t nodes = state.delta.size() - 2;
    NodalValues out;
    for (auto* v : {&out.u, &out.ux, &out.uxx, &out.v, &out.vx, &out.vxx}) v->resize(nodes);

    auto apply = [&](const std::vector<double>& c, std::vector<double>& val, std::vector<double>& d1,
                     std::vector<double>& d2) {
        for (std::size_t i = 0; i < nodes; ++i) {
            // c[i], c[i+1], c[i+2] are the coefficients of E_{i-1}, E_i, E_{i+1}.
            const double left = c[i];
            const double mid = c[i + 1];
            const double right = c[i + 2];
            val[i] = table.alpha1 * left + table.alpha2 * mid + table.alpha1 * right;
            d1[i] = table.beta1 * (left - right);
            d2[i] = table.gamma1 * left + table.gamma2 * mid + table.gamma1 * right;
        }
    };
    apply(state.delta, out.u, out.ux, out.uxx);
    apply(state.phi, out.v, out.vx, out.vxx);
    return out;
}

PointValue eval_at(const SolutionState& state, const BasisConfig& cfg, const Grid& grid, double x) {
    if (!(x >= grid.a() && x <= grid.b())) {
        throw std::out_of_range("eval_at: x lies outside the grid interval");
    }
    if (state.cells() != grid.cells()) {
        throw std::invalid_argument("eval_at: state does not match grid");
    }
    const int cell = std::clamp(static_cast<int>(std::floor((x - grid.a()) / grid.h())), 0, grid.cells() - 1);
    PointValue pv{0.0, 0.0};
    for (int i = std::max(-1, cell - 2); i <= std::min(grid.cells() + 1, cell + 3); ++i) {
        const double e = eval(cfg, i, grid.a(), x);
        pv.u += state.delta_at(i) * e;
        pv.v += state.phi_at(i) * e;
    }
    return pv;
}

namespace {

SolutionState fit_impl(const Grid& grid, const BasisConfig& cfg, const ScalarFunction& f,
                       const ScalarFunction& f_prime, const BoundarySlopes* ends) {
    const NodalTable table = nodal_table(cfg);
    const int n = grid.cells();
    const auto size = static_cast<std::size_t>(n + 3);

    // Unknown k is the coefficient of E_{k-1}. Row 0 and row N+2 carry the end
    // conditions; row i+1 interpolates at node i.
    auto interpolation_rows = [&](BandedMatrix& m) {
        for (int i = 0; i <= n; ++i) {
            const auto r = static_cast<std::size_t>(i + 1);
            m.at(r, r - 1) = table.alpha1;
            m.at(r, r) = table.alpha2;
            m.at(r, r + 1) = table.alpha1;
        }
    };
    auto slope_rows = [&](BandedMatrix& m) {
        m.at(0, 0) = table.beta1;
        m.at(0, 2) = -table.beta1;
        m.at(size - 1, size - 3) = table.beta1;
        m.at(size - 1, size - 1) = -table.beta1;
    };

    BandedMatrix mu(size, 2, 2);
    interpolation_rows(mu);
    if (ends) {
        slope_rows(mu);
    } else {
        mu.at(0, 0) = table.gamma1;
        mu.at(0, 1) = table.gamma2;
        mu.at(0, 2) = table.gamma1;
        mu.at(size - 1, size - 3) = table.gamma1;
        mu.at(size - 1, size - 2) = table.gamma2;
        mu.at(size - 1, size - 1) = table.gamma1;
    }

    BandedMatrix mv(size, 2, 2);
    interpolation_rows(mv);
    slope_rows(mv);

    std::vector<double> ru(size, 0.0);
    std::vector<double> rv(size, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double x = grid.node(i);
        ru[static_cast<std::size_t>(i + 1)] = f(x);
        rv[static_cast<std::size_t>(i + 1)] = f_prime(x);
    }
    if (ends) {
        ru.front() = ends->ux_left;
        ru.back() = ends->ux_right;
        rv.front() = ends->vx_left;
        rv.back() = ends->vx_right;
    }
    return SolutionState{band_solve(mu, ru), band_solve(mv, rv), 0.0};
}

}  // namespace

SolutionState fit_initial(const Grid& grid, const BasisConfig& cfg, const ScalarFunction& f,
                          const ScalarFunction& f_prime) {
    return fit_impl(grid, cfg, f, f_prime, nullptr);
}

SolutionState fit_initial(const Grid& grid, const BasisConfig& cfg, const ScalarFunction& f,
                          const ScalarFunction& f_prime, const BoundarySlopes& ends) {
    return fit_impl(grid, cfg, f, f_prime, &ends);
}

void apply_end_slopes(SolutionState& state, const NodalTable& table, const BoundarySlopes& ends) {
    // U_x(x_0) = beta1*(delta_{-1} - delta_1) and U_x(x_N) = beta1*(delta_{N-1} - delta_{N+1}).
    const std::size_t last = state.delta.size() - 1;
    state.delta[0] = state.delta[2] + ends.ux_left / table.beta1;
    state.phi[0] = state.phi[2] + ends.vx_left / table.beta1;
    state.delta[last] = state.delta[last - 2] - ends.ux_right / table.beta1;
    state.phi[last] = state.phi[last - 2] - ends.vx_right / table.beta1;
}

}  // namespace kdvb
