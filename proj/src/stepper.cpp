#include "kdvb/stepper.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace kdvb {

void PhysicalParams::validate() const {
    if (!(mu != 0.0) || !std::isfinite(mu)) throw std::invalid_argument("PhysicalParams: mu must be nonzero");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("PhysicalParams: dt must be positive");
    if (!(theta >= 0.0)) throw std::invalid_argument("PhysicalParams: theta must be nonnegative");
    if (!std::isfinite(epsilon)) throw std::invalid_argument("PhysicalParams: epsilon must be finite");
}

StepCoefficients assemble_row(const PhysicalParams& params, const NodalTable& table,
                              const SolutionState& state, int m) {
    const double a1 = table.alpha1;
    const double a2 = table.alpha2;
    const double b1 = table.beta1;
    const double g1 = table.gamma1;
    const double g2 = table.gamma2;
    const double eps = params.epsilon;
    const double th = params.theta;
    const double mu = params.mu;
    const double r = 2.0 / params.dt;

    const double K = a1 * state.delta_at(m - 1) + a2 * state.delta_at(m) + a1 * state.delta_at(m + 1);
    const double L = a1 * state.phi_at(m - 1) + a2 * state.phi_at(m) + a1 * state.phi_at(m + 1);

    StepCoefficients c{};
    c.K = K;
    c.L = L;
    c.nu1 = (r + eps * L) * a1;
    c.nu2 = eps * K * a1 - th * b1 + mu * g1;
    c.nu3 = (r + eps * L) * a2;
    c.nu4 = eps * K * a2 + mu * g2;
    c.nu5 = eps * K * a1 + th * b1 + mu * g1;
    c.nu6 = r * a1;
    c.nu7 = th * b1 - mu * g1;
    c.nu8 = r * a2;
    c.nu9 = -mu * g2;
    c.nu10 = -th * b1 - mu * g1;
    c.nu11 = b1;
    c.nu12 = -a1;
    c.nu13 = -a2;
    return c;
}

namespace {

// Coefficients on (delta_{m-1}, phi_{m-1}, delta_m, phi_m, delta_{m+1}, phi_{m+1}).
struct RowPair {
    std::array<double, 6> evolution_new;
    std::array<double, 6> evolution_old;
    std::array<double, 6> constraint_new;
    std::array<double, 6> constraint_old;
};

RowPair row_pair(const StepCoefficients& c) {
    RowPair rp;
    rp.evolution_new = {c.nu1, c.nu2, c.nu3, c.nu4, c.nu1, c.nu5};
    rp.evolution_old = {c.nu6, c.nu7, c.nu8, c.nu9, c.nu6, c.nu10};
    // U_x(x_m) = beta1*(delta_{m-1} - delta_{m+1}), so delta_{m+1} carries -nu11
    // and phi_{m+1} carries +nu12.
    rp.constraint_new = {c.nu11, c.nu12, 0.0, c.nu13, -c.nu11, c.nu12};
    rp.constraint_old = {-c.nu11, -c.nu12, 0.0, -c.nu13, c.nu11, -c.nu12};
    return rp;
}

}  // namespace

LinearSystem build_system(const PhysicalParams& params, const NodalTable& table,
                          const SolutionState& state, const BoundarySlopes& slopes) {
    const int n = state.cells();
    if (n < 2 || state.phi.size() != state.delta.size()) {
        throw std::invalid_argument("build_system: malformed state");
    }
    const auto dim = static_cast<std::size_t>(2 * n + 2);
    LinearSystem sys{BandedMatrix(dim, kStepBandwidth, kStepBandwidth), std::vector<double>(dim, 0.0)};

    auto reduced = [n](int k) {
        if (k == -1) return 1;
        if (k == n + 1) return n - 1;
        return k;
    };
    // Constant offsets of the eliminated phantoms: delta_{-1} = delta_1 + s_d and so on.
    auto shift = [&](int k, bool phi) {
        if (k == -1) return (phi ? slopes.vx_left : slopes.ux_left) / table.beta1;
        if (k == n + 1) return -(phi ? slopes.vx_right : slopes.ux_right) / table.beta1;
        return 0.0;
    };

    for (int m = 0; m <= n; ++m) {
        const RowPair rp = row_pair(assemble_row(params, table, state, m));
        const auto row_e = static_cast<std::size_t>(2 * m);
        const auto row_c = row_e + 1;
        double rhs_e = 0.0;
        double rhs_c = 0.0;
        for (int offset = -1; offset <= 1; ++offset) {
            const int k = m + offset;
            const auto slot = static_cast<std::size_t>(2 * (offset + 1));
            const auto col = static_cast<std::size_t>(2 * reduced(k));
            sys.a.add(row_e, col, rp.evolution_new[slot]);
            sys.a.add(row_e, col + 1, rp.evolution_new[slot + 1]);
            sys.a.add(row_c, col, rp.constraint_new[slot]);
            sys.a.add(row_c, col + 1, rp.constraint_new[slot + 1]);
            const double d = state.delta_at(k);
            const double p = state.phi_at(k);
            rhs_e += rp.evolution_old[slot] * d + rp.evolution_old[slot + 1] * p;
            rhs_c += rp.constraint_old[slot] * d + rp.constraint_old[slot + 1] * p;
            const double sd = shift(k, false);
            const double sp = shift(k, true);
            rhs_e -= rp.evolution_new[slot] * sd + rp.evolution_new[slot + 1] * sp;
            rhs_c -= rp.constraint_new[slot] * sd + rp.constraint_new[slot + 1] * sp;
        }
        sys.rhs[row_e] = rhs_e;
        sys.rhs[row_c] = rhs_c;
    }
    return sys;
}

SolutionState step(const PhysicalParams& params, const NodalTable& table, const SolutionState& state,
                   const BoundarySlopes& slopes) {
    const LinearSystem sys = build_system(params, table, state, slopes);
    const std::vector<double> x = band_solve(sys.a, sys.rhs);
    const int n = state.cells();
    SolutionState next;
    next.delta.resize(state.delta.size());
    next.phi.resize(state.phi.size());
    for (int m = 0; m <= n; ++m) {
        next.delta[static_cast<std::size_t>(m + 1)] = x[static_cast<std::size_t>(2 * m)];
        next.phi[static_cast<std::size_t>(m + 1)] = x[static_cast<std::size_t>(2 * m + 1)];
    }
    apply_end_slopes(next, table, slopes);
    next.t = state.t + params.dt;
    return next;
}

long steps_to(double t, double dt) {
    const double ratio = t / dt;
    const double k = std::round(ratio);
    if (!(std::abs(ratio - k) <= 1e-9 * std::max(1.0, std::abs(ratio)))) {
        std::ostringstream msg;
        msg << "time " << t << " is not an integer multiple of dt = " << dt;
        throw std::invalid_argument(msg.str());
    }
    return static_cast<long>(k);
}

std::vector<Snapshot> advance(const PhysicalParams& params, const NodalTable& table,
                              const SolutionState& state, const std::vector<double>& record_times,
                              const BoundaryFunction& boundary) {
    params.validate();
    const long start = steps_to(state.t, params.dt);
    std::vector<long> targets;
    targets.reserve(record_times.size());
    for (double t : record_times) {
        const long k = steps_to(t, params.dt);
        if (k < start) throw std::invalid_argument("advance: record time precedes the initial state");
        if (!targets.empty() && k <= targets.back()) {
            throw std::invalid_argument("advance: record times must be strictly increasing");
        }
        targets.push_back(k);
    }

    std::vector<Snapshot> out;
    out.reserve(targets.size());
    SolutionState current = state;
    long index = start;
    for (long target : targets) {
        while (index < target) {
            try {
                const double t_next = static_cast<double>(index + 1) * params.dt;
                current = step(params, table, current, boundary ? boundary(t_next) : BoundarySlopes{});
            } catch (const SingularMatrixError& e) {
                std::ostringstream msg;
                msg << "step " << index + 1 << " failed: " << e.what();
                throw StepFailure(msg.str(), index + 1);
            }
            ++index;
            current.t = static_cast<double>(index) * params.dt;
        }
        out.push_back(Snapshot{current.t, current});
    }
    return out;
}

}  // namespace kdvb
