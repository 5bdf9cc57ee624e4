#include <doctest.h>

#include <random>

#include "arbo/control.hpp"
#include "arbo/econ.hpp"
#include "helpers.hpp"

using namespace arbo;

namespace {

// H is quadratic in each control, so the central difference is exact up to rounding.
double dH_du(const State& x, Controls u, const State& l, const ModelParams& p, const ControlParams& c,
             const ObjectiveWeights& w, int i) {
    const double h = std::max(1e-2, std::abs(u[i]));
    Controls up = u, um = u;
    up[i] += h;
    um[i] -= h;
    return (hamiltonian(x, up, l, p, c, w) - hamiltonian(x, um, l, p, c, w)) / (2 * h);
}

const std::vector<SweepResult>& all_strategies() {
    static const std::vector<SweepResult> r = [] {
        auto pr = default_control_problem();
        std::vector<StrategyMask> m;
        for (const auto& n : strategy_names()) m.push_back(strategy(n));
        return solve_strategies(pr, m);
    }();
    return r;
}

}  // namespace

TEST_CASE("adjoint field equals minus the state gradient of H at 100 points") {
    std::mt19937_64 g(401);
    std::uniform_real_distribution<double> u01(0.0, 1.0), adj(-1e4, 1e4);
    ControlParams c;
    ObjectiveWeights w;
    auto draws = testutil::random_params(100, 402);
    for (const auto& p : draws) {
        State x = testutil::random_state(g), l;
        for (auto& v : l) v = adj(g);
        Controls u = {u01(g), u01(g), u01(g), u01(g), u01(g)};
        State a = adjoint_field(x, u, l, p, c, w);
        for (int i = 0; i < kStates; ++i) {
            const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
            State xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const double fd = -(hamiltonian(xp, u, l, p, c, w) - hamiltonian(xm, u, l, p, c, w)) / (2 * h);
            INFO("component " << i);
            CHECK(std::abs(fd - a[i]) <= 1e-5 * std::max(1.0, std::abs(a[i])));
        }
    }
}

TEST_CASE("unclamped controls are stationary points of H") {
    std::mt19937_64 g(403);
    std::uniform_real_distribution<double> adj(-1e4, 1e4);
    ControlParams c;
    ObjectiveWeights w;
    for (const auto& p : testutil::random_params(50, 404)) {
        State x = testutil::random_state(g), l;
        for (auto& v : l) v = adj(g);
        Controls u = unclamped_controls(x, l, p, c, w);
        for (int i = 0; i < kControls; ++i) {
            INFO("control " << i + 1);
            const double noise = 1e-14 * std::abs(hamiltonian(x, u, l, p, c, w)) / std::max(1e-2, std::abs(u[i]));
            CHECK(std::abs(dH_du(x, u, l, p, c, w, i)) <= 1e-8 * (2 * w.B[i] * std::abs(u[i])) + noise);
        }
    }
}

TEST_CASE("characterized controls are clamped and masked") {
    std::mt19937_64 g(405);
    std::uniform_real_distribution<double> adj(-1e5, 1e5);
    ModelParams p;
    ControlParams c;
    ObjectiveWeights w;
    for (const auto& name : strategy_names()) {
        auto m = strategy(name);
        for (int k = 0; k < 50; ++k) {
            State x = testutil::random_state(g), l;
            for (auto& v : l) v = adj(g);
            Controls raw = unclamped_controls(x, l, p, c, w);
            Controls u = characterize_controls(x, l, p, c, w, m);
            for (int i = 0; i < kControls; ++i) {
                CHECK(u[i] >= 0);
                CHECK(u[i] <= 1);
                if (!m.active[i])
                    CHECK(u[i] == 0);
                else
                    CHECK(u[i] == std::clamp(raw[i], 0.0, 1.0));
            }
        }
    }
    CHECK(strategy("Z1").active == std::array<bool, 5>{true, true, true, true, false});
    CHECK(strategy("Z2").active == std::array<bool, 5>{true, true, true, false, true});
    CHECK(strategy("Z3").active == std::array<bool, 5>{true, false, true, true, true});
    CHECK(strategy("Z4").active == std::array<bool, 5>{true, true, false, true, true});
    CHECK_THROWS_AS(strategy("Z9"), Error);
}

TEST_CASE("every strategy converges, lowers J and respects transversality") {
    auto pr = default_control_problem();
    auto none = forward_backward_sweep(pr, strategy("none"));
    CHECK(none.converged);
    CHECK(none.iterations == 1);
    for (const auto& r : all_strategies()) {
        INFO(r.strategy);
        CHECK(r.converged);
        CHECK_FALSE(r.suspect);
        CHECK(r.iterations <= 200);
        CHECK(r.objective_J < none.objective_J);
        for (double v : r.adjoints.values.back()) CHECK(v == 0.0);
        auto m = strategy(r.strategy);
        for (const auto& u : r.controls.values)
            for (int i = 0; i < kControls; ++i)
                if (!m.active[i]) CHECK(u[i] == 0.0);
        CHECK(r.objective_J == doctest::Approx(objective(r.states, r.controls, pr.weights)));
    }
}

TEST_CASE("zero controls reproduce the uncontrolled model bitwise") {
    auto pr = default_control_problem();
    auto a = simulate_basic(pr.params, pr.x0, pr.grid);
    auto b = simulate_controlled(pr.params, pr.controls, pr.x0, zero_controls(pr.grid));
    for (std::size_t i = 0; i < a.values.size(); ++i)
        for (int k = 0; k < kStates; ++k) CHECK(a.values[i][k] == b.values[i][k]);
}

TEST_CASE("H is stationary at converged interior controls") {
    auto pr = default_control_problem();
    pr.options.tol = 1e-7;
    pr.options.max_iters = 1000;
    auto r = forward_backward_sweep(pr, strategy("Z"));
    REQUIRE(r.converged);
    int interior = 0;
    for (std::size_t n = 0; n < r.controls.values.size(); n += 10) {
        const auto& u = r.controls.values[n];
        for (int i = 0; i < kControls; ++i) {
            if (!(u[i] > 0.01 && u[i] < 0.99)) continue;
            double gap = dH_du(r.states.values[n], u, r.adjoints.values[n], pr.params, pr.controls, pr.weights, i) /
                         (2 * pr.weights.B[i]);
            CHECK(std::abs(gap) < 1e-4);
            ++interior;
        }
    }
    CHECK(interior > 10);
}

TEST_CASE("parallel and serial strategy solves are identical") {
    auto pr = default_control_problem();
    std::vector<StrategyMask> m;
    for (const auto& n : strategy_names()) m.push_back(strategy(n));
    auto ser = serial::solve_strategies(pr, m);
    const auto& par = all_strategies();
    REQUIRE(ser.size() == par.size());
    for (std::size_t s = 0; s < ser.size(); ++s) {
        CHECK(ser[s].objective_J == par[s].objective_J);
        CHECK(ser[s].iterations == par[s].iterations);
        CHECK(ser[s].controls.values == par[s].controls.values);
        CHECK(ser[s].states.values == par[s].states.values);
    }
}

TEST_CASE("sweep options are validated") {
    auto pr = default_control_problem();
    pr.options.mix = 0;
    CHECK_THROWS_AS(forward_backward_sweep(pr, strategy("Z")), Error);
    pr = default_control_problem();
    pr.weights.B[2] = 0;
    CHECK_THROWS_AS(forward_backward_sweep(pr, strategy("Z")), Error);
}

TEST_CASE("non-convergence is reported, not hidden") {
    auto pr = default_control_problem();
    pr.options.max_iters = 2;
    auto r = forward_backward_sweep(pr, strategy("Z"));
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 2);
    CHECK(r.log.size() == 2);
}
