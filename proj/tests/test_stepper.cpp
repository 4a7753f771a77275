#include "kdvb/diagnostics.hpp"
#include "kdvb/scenarios.hpp"
#include "kdvb/stepper.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kdvb;

namespace {

using Row = std::vector<double>;  // over the full unknowns (delta_k, phi_k), k = -1..N+1

SolutionState random_state(const Grid& g, unsigned seed, double scale = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> val(-scale, scale);
    SolutionState s = zero_state(g);
    for (auto& v : s.delta) v = val(rng);
    for (auto& v : s.phi) v = val(rng);
    return s;
}

// Functionals giving U, U_x, U_xx (or V, ...) at node m as rows over the full
// unknown vector. Built from the basis values, not from the coefficient table.
struct NodeFunctionals {
    int n;
    BasisConfig cfg;
    double origin;

    std::size_t col(int k, bool phi) const { return static_cast<std::size_t>(2 * (k + 1) + (phi ? 1 : 0)); }
    Row op(int m, int order, bool phi) const {
        Row r(static_cast<std::size_t>(2 * n + 6), 0.0);
        const double x = origin + m * cfg.h;
        for (int k = m - 1; k <= m + 1; ++k) {
            r[col(k, phi)] = order == 0 ? eval(cfg, k, origin, x) : eval_deriv(cfg, k, origin, x, order);
        }
        return r;
    }
};

double dot(const Row& r, const SolutionState& s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.delta.size(); ++k) acc += r[2 * k] * s.delta[k] + r[2 * k + 1] * s.phi[k];
    return acc;
}

Row combine(std::initializer_list<std::pair<double, const Row*>> terms) {
    Row out(terms.begin()->second->size(), 0.0);
    for (auto [w, r] : terms)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * (*r)[i];
    return out;
}

}  // namespace

TEST_CASE("assemble_row on the zero state") {
    const PhysicalParams p{1.0, 0.004, 0.01, 0.001};
    const NodalTable t = nodal_table({0.0, 0.5});
    const SolutionState s = zero_state(Grid(-20.0, 20.0, 80));
    const StepCoefficients c = assemble_row(p, t, s, 10);
    CHECK(c.K == 0.0);
    CHECK(c.L == 0.0);
    CHECK(c.nu1 == doctest::Approx(2000.0 / 6.0));
    CHECK(c.nu2 == doctest::Approx(0.044));
    CHECK(c.nu6 / c.nu8 == doctest::Approx(t.alpha1 / t.alpha2));
}

TEST_CASE("assemble_row identities on a random state") {
    const Grid g(0.0, 3.0, 12);
    const PhysicalParams p{0.7, 0.02, -0.3, 0.01};
    for (double lambda : {-1.0, 0.0, 0.5}) {
        const NodalTable t = nodal_table({lambda, g.h()});
        const SolutionState s = random_state(g, 17);
        for (int m = 0; m <= g.cells(); ++m) {
            const StepCoefficients c = assemble_row(p, t, s, m);
            CHECK(c.K == doctest::Approx(t.alpha1 * s.delta_at(m - 1) + t.alpha2 * s.delta_at(m) +
                                         t.alpha1 * s.delta_at(m + 1)));
            CHECK(c.nu1 - c.nu6 == doctest::Approx(p.epsilon * c.L * t.alpha1));
            CHECK(c.nu3 - c.nu8 == doctest::Approx(p.epsilon * c.L * t.alpha2));
            CHECK(c.nu6 == doctest::Approx(2.0 / p.dt * t.alpha1));
            CHECK(c.nu11 == t.beta1);
        }
    }
}

struct FullSystem {
    std::vector<Row> rows;       // (2N+2) rows over (2N+6) unknowns
    std::vector<double> old_level;
};

// u_t + eps*u*v - theta*v_x + mu*v_xx = 0 and u_x = v, Crank-Nicolson with
// (uv)^{n+1} ~ u^{n+1} v^n + u^n v^{n+1} - u^n v^n.
FullSystem full_system(const NodeFunctionals& f, const PhysicalParams& p, const SolutionState& s) {
    FullSystem out;
    const double r = 2.0 / p.dt;
    for (int m = 0; m <= f.n; ++m) {
        const Row u = f.op(m, 0, false), ux = f.op(m, 1, false);
        const Row v = f.op(m, 0, true), vx = f.op(m, 1, true), vxx = f.op(m, 2, true);
        const double K = dot(u, s), L = dot(v, s);
        out.rows.push_back(combine({{r + p.epsilon * L, &u}, {p.epsilon * K, &v}, {-p.theta, &vx}, {p.mu, &vxx}}));
        out.old_level.push_back(r * dot(u, s) + p.theta * dot(vx, s) - p.mu * dot(vxx, s));
        out.rows.push_back(combine({{1.0, &ux}, {-1.0, &v}}));
        out.old_level.push_back(-(dot(ux, s) - dot(v, s)));
    }
    return out;
}

TEST_CASE("reduced system equals the full system with phantoms substituted") {
    const int n = 8;
    const Grid g(-1.0, 1.0, n);
    const PhysicalParams p{0.9, 0.05, 0.02, 0.1};
    for (double lambda : {-1.969, 0.0, 1.0}) {
        const BasisConfig cfg{lambda, g.h()};
        const NodalTable t = nodal_table(cfg);
        const SolutionState s = random_state(g, 23);
        const FullSystem full = full_system(NodeFunctionals{n, cfg, g.a()}, p, s);

        const BoundarySlopes slopes{0.2, -0.1, 0.05, 0.3};
        // Phantom k = -1 folds into k = 1 and k = N+1 into k = N-1 with a shift.
        auto reduced_col = [&](std::size_t full_col) -> std::size_t {
            const int k = static_cast<int>(full_col / 2) - 1;
            const std::size_t comp = full_col % 2;
            const int kk = k == -1 ? 1 : (k == n + 1 ? n - 1 : k);
            return static_cast<std::size_t>(2 * kk) + comp;
        };
        auto shift = [&](std::size_t full_col) {
            const int k = static_cast<int>(full_col / 2) - 1;
            const bool phi = full_col % 2 == 1;
            // Only the phantom and its mirror carry slope at an end node.
            if (k == -1) return (phi ? slopes.vx_left : slopes.ux_left) / eval_deriv(cfg, -1, g.a(), g.node(0), 1);
            if (k == n + 1) return (phi ? slopes.vx_right : slopes.ux_right) / eval_deriv(cfg, n + 1, g.a(), g.node(n), 1);
            return 0.0;
        };

        const LinearSystem sys = build_system(p, t, s, slopes);
        const std::size_t dim = static_cast<std::size_t>(2 * n + 2);
        REQUIRE(sys.a.size() == dim);
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<double> expect(dim, 0.0);
            double rhs = full.old_level[i];
            for (std::size_t j = 0; j < full.rows[i].size(); ++j) {
                expect[reduced_col(j)] += full.rows[i][j];
                rhs -= full.rows[i][j] * shift(j);
            }
            for (std::size_t j = 0; j < dim; ++j) CHECK(sys.a.get(i, j) == doctest::Approx(expect[j]).epsilon(1e-12));
            CHECK(sys.rhs[i] == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("step matches the full system with explicit end-slope rows") {
    const int n = 8;
    const Grid g(0.0, 2.0, n);
    const PhysicalParams p{1.0, 0.01, 0.05, 0.05};
    for (const BoundarySlopes slopes : {BoundarySlopes{}, BoundarySlopes{0.1, 0.2, -0.3, 0.4}}) {
        const BasisConfig cfg{-0.5, g.h()};
        const NodalTable t = nodal_table(cfg);
        const SolutionState s = random_state(g, 41, 0.3);
        const NodeFunctionals f{n, cfg, g.a()};
        const FullSystem full = full_system(f, p, s);

        const std::size_t dim = static_cast<std::size_t>(2 * n + 6);
        BandedMatrix dense(dim, dim - 1, dim - 1);
        std::vector<double> rhs(dim, 0.0);
        for (std::size_t i = 0; i < full.rows.size(); ++i) {
            for (std::size_t j = 0; j < dim; ++j) dense.at(i, j) = full.rows[i][j];
            rhs[i] = full.old_level[i];
        }
        const Row ends[4] = {f.op(0, 1, false), f.op(0, 1, true), f.op(n, 1, false), f.op(n, 1, true)};
        const double values[4] = {slopes.ux_left, slopes.vx_left, slopes.ux_right, slopes.vx_right};
        for (std::size_t e = 0; e < 4; ++e) {
            const std::size_t i = full.rows.size() + e;
            for (std::size_t j = 0; j < dim; ++j) dense.at(i, j) = ends[e][j];
            rhs[i] = values[e];
        }
        const std::vector<double> x = band_solve(dense, rhs);

        const SolutionState next = step(p, t, s, slopes);
        for (std::size_t k = 0; k < next.delta.size(); ++k) {
            CHECK(next.delta[k] == doctest::Approx(x[2 * k]).epsilon(1e-10));
            CHECK(next.phi[k] == doctest::Approx(x[2 * k + 1]).epsilon(1e-10));
        }
        CHECK(next.t == doctest::Approx(s.t + p.dt));
    }
}

TEST_CASE("stationary state leaves the spatial operator as the residual") {
    // With x^{n+1} = x^n the linearised product collapses to U^n V^n, so
    // A x^n - rhs must equal twice the spatial operator at each node.
    const Grid g(0.0, 1.0, 10);
    const PhysicalParams p{1.3, 0.02, 0.01, 0.01};
    const NodalTable t = nodal_table({-1.0, g.h()});
    SolutionState s = random_state(g, 5);
    apply_end_slopes(s, t, {});
    const LinearSystem sys = build_system(p, t, s);
    std::vector<double> x;
    for (int m = 0; m <= g.cells(); ++m) {
        x.push_back(s.delta_at(m));
        x.push_back(s.phi_at(m));
    }
    const std::vector<double> ax = band_matvec(sys.a, x);
    const NodalValues nv = nodal_values(s, t);
    for (int m = 0; m <= g.cells(); ++m) {
        const auto k = static_cast<std::size_t>(m);
        const double op = p.epsilon * nv.u[k] * nv.v[k] - p.theta * nv.vx[k] + p.mu * nv.vxx[k];
        CHECK(ax[2 * k] - sys.rhs[2 * k] == doctest::Approx(2.0 * op).epsilon(1e-9));
        CHECK(ax[2 * k + 1] - sys.rhs[2 * k + 1] == doctest::Approx(2.0 * (nv.ux[k] - nv.v[k])).epsilon(1e-9));
    }
}

TEST_CASE("constant states are preserved") {
    const Grid g(-5.0, 5.0, 40);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (double lambda : {-1.969, -1.0, 0.0, 0.5, 1.0}) {
        const double c = val(rng);
        const BasisConfig cfg{lambda, g.h()};
        const NodalTable t = nodal_table(cfg);
        const PhysicalParams p{0.8, 0.01, 0.05, 0.01};
        SolutionState s = fit_initial(g, cfg, [c](double) { return c; }, [](double) { return 0.0; });
        for (int k = 0; k < 100; ++k) s = step(p, t, s);
        const NodalValues nv = nodal_values(s, t);
        double worst = 0.0;
        for (double u : nv.u) worst = std::max(worst, std::abs(u - c));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("first Example 1 step tracks the exact solution") {
    const Scenario s = make_example1(0.004, 0.001);
    const Grid g = s.grid();
    const BasisConfig cfg{0.0, g.h()};
    const NodalTable t = nodal_table(cfg);
    const SolutionState st = fit_initial(g, cfg, s.initial, s.initial_derivative, s.boundary(0.0));
    const SolutionState next = step(s.params, t, st, s.boundary(0.001));
    CHECK(linf_error(next, t, g, *s.exact, 0.001) <= 1e-9);
}

TEST_CASE("advance record-time handling") {
    const Grid g(0.0, 1.0, 8);
    const NodalTable t = nodal_table({0.0, g.h()});
    const PhysicalParams p{1.0, 0.01, 0.01, 0.1};
    SolutionState s = random_state(g, 8, 0.1);
    apply_end_slopes(s, t, {});

    const auto only_initial = advance(p, t, s, {0.0});
    REQUIRE(only_initial.size() == 1);
    CHECK(only_initial[0].state.delta == s.delta);

    const auto one = advance(p, t, s, {0.1});
    const SolutionState direct = step(p, t, s);
    REQUIRE(one.size() == 1);
    CHECK(one[0].state.delta == direct.delta);
    CHECK(one[0].state.phi == direct.phi);

    const auto several = advance(p, t, s, {0.2, 0.5});
    REQUIRE(several.size() == 2);
    CHECK(several[1].t == doctest::Approx(0.5));

    CHECK_THROWS_AS(advance(p, t, s, {0.15}), std::invalid_argument);
    CHECK_THROWS_AS(advance(p, t, s, {0.3, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(advance(p, t, s, {0.2, 0.2}), std::invalid_argument);
    PhysicalParams bad = p;
    bad.mu = 0.0;
    CHECK_THROWS_AS(advance(bad, t, s, {0.1}), std::invalid_argument);
    bad = p;
    bad.dt = -0.1;
    CHECK_THROWS_AS(advance(bad, t, s, {0.1}), std::invalid_argument);
}

TEST_CASE("steps_to") {
    CHECK(steps_to(800.0, 0.05) == 16000);
    CHECK(steps_to(1.0, 0.001) == 1000);
    CHECK(steps_to(0.0, 0.1) == 0);
    CHECK_THROWS_AS(steps_to(0.15, 0.1), std::invalid_argument);
}

TEST_CASE("second order in time on Example 1") {
    auto solve = [](double dt) {
        Scenario s = make_example1(0.004, 10.0);
        s.params.dt = dt;
        const Grid g = s.grid();
        const BasisConfig cfg{-1.0, g.h()};
        const NodalTable t = nodal_table(cfg);
        const SolutionState st = fit_initial(g, cfg, s.initial, s.initial_derivative, s.boundary(0.0));
        return nodal_values(advance(s.params, t, st, {10.0}, s.boundary).back().state, t).u;
    };
    const auto ref = solve(0.005);
    auto err = [&](double dt) {
        const auto u = solve(dt);
        double e = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) e = std::max(e, std::abs(u[i] - ref[i]));
        return e;
    };
    const double e1 = err(1.0), e2 = err(0.5), e3 = err(0.25);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e2 / e3 >= 3.5);
}

TEST_CASE("refining h reduces the Example 1 error") {
    double previous = INFINITY;
    for (int cells : {40, 80, 160}) {
        Scenario s = make_example1(0.004, 1.0);
        s.grid_cells = cells;
        const Grid g = s.grid();
        const BasisConfig cfg{-1.0, g.h()};
        const NodalTable t = nodal_table(cfg);
        const SolutionState st = fit_initial(g, cfg, s.initial, s.initial_derivative, s.boundary(0.0));
        const auto snap = advance(s.params, t, st, {1.0}, s.boundary);
        const double e = linf_error(snap.back().state, t, g, *s.exact, 1.0);
        CHECK(e < previous);
        previous = e;
    }
}
