#include "kdvb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kdvb {

double linf_error(const SolutionState& state, const NodalTable& table, const Grid& grid,
                  const ExactSolution& exact, double t) {
    const NodalValues nv = nodal_values(state, table);
    double worst = 0.0;
    for (int i = 0; i <= grid.cells(); ++i) {
        worst = std::max(worst, std::abs(exact(grid.node(i), t) - nv.u[static_cast<std::size_t>(i)]));
    }
    return worst;
}

ConservedQuantities conserved_quantities(const SolutionState& state, const NodalTable& table,
                                         const Grid& grid, const PhysicalParams& params) {
    if (params.epsilon == 0.0) throw std::invalid_argument("conserved_quantities: epsilon must be nonzero");
    const NodalValues nv = nodal_values(state, table);
    const double r = params.mu / params.epsilon;

    ConservedQuantities q{0.0, 0.0, 0.0, 0.0};
    const std::size_t nodes = nv.u.size();
    for (std::size_t i = 0; i < nodes; ++i) {
        const double w = (i == 0 || i + 1 == nodes) ? 0.5 * grid.h() : grid.h();
        const double u = nv.u[i];
        const double ux2 = nv.ux[i] * nv.ux[i];
        const double uxx = nv.uxx[i];
        q.c1 += w * u;
        q.c2 += w * u * u;
        q.c3 += w * (u * u * u - 3.0 * r * ux2);
        q.c4 += w * (u * u * u * u - 12.0 * r * u * ux2 + 7.2 * r * r * uxx * uxx);
    }
    return q;
}

std::vector<Peak> find_peaks(const SolutionState& state, const NodalTable& table, const Grid& grid,
                             double threshold) {
    const NodalValues nv = nodal_values(state, table);
    const auto& u = nv.u;
    std::vector<Peak> peaks;
    for (std::size_t i = 2; i + 2 < u.size(); ++i) {
        const double c = u[i];
        if (c < threshold) continue;
        if (c > u[i - 1] && c > u[i - 2] && c > u[i + 1] && c > u[i + 2]) {
            peaks.push_back(Peak{grid.node(static_cast<int>(i)), c});
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& l, const Peak& r) { return l.position > r.position; });
    return peaks;
}

}  // namespace kdvb
