#include <doctest.h>

#include <random>

#include "arbo/control.hpp"
#include "arbo/model.hpp"
#include "helpers.hpp"

using namespace arbo;

TEST_CASE("derived constants from their definitions") {
    auto p = testutil::backward_example();
    auto k = derive_constants(p);
    CHECK(k.k3 == doctest::Approx(p.mu_h + p.gamma_h));
    CHECK(k.k4 == doctest::Approx(p.mu_h + p.delta + p.sigma));
    CHECK(k.k5 == doctest::Approx(p.s + p.mu_E));
    CHECK(k.k6 == doctest::Approx(p.l + p.mu_L));
    CHECK(k.k7 == doctest::Approx(p.theta + p.mu_P));
    CHECK(k.k8 == doctest::Approx(p.mu_v));
    CHECK(k.k9 == doctest::Approx(p.mu_v + p.gamma_v));
    CHECK(k.k10 == doctest::Approx(p.eta_h * k.k4 + p.gamma_h));
    CHECK(k.k11 == doctest::Approx(p.eta_v * k.k8 + p.gamma_v));
    CHECK(k.k2 == doctest::Approx(k.k3 * k.k4 - p.delta * p.gamma_h).epsilon(1e-12));
    CHECK(k.k2 == doctest::Approx(k2_alternate(p)).epsilon(1e-12));
}

TEST_CASE("forces of infection by hand") {
    ModelParams p;
    State x = {100, 20, 10, 70, 500, 40, 30, 1, 1, 1};
    CHECK(foi_h(x, p) == doctest::Approx(p.a * p.beta_hv * (p.eta_v * 40 + 30) / 200));
    CHECK(foi_v(x, p) == doctest::Approx(p.a * p.beta_vh * (p.eta_h * 20 + 10) / 200));
    State z{};
    CHECK_THROWS_AS(foi_h(z, p), Error);
    try {
        basic_field(z, p);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::zero_population);
    }
}

TEST_CASE("controlled field with zero controls equals the basic field bitwise") {
    std::mt19937_64 g(3);
    ControlParams c;
    for (const auto& p : testutil::random_params(50, 11)) {
        State x = testutil::random_state(g);
        auto a = basic_field(x, p);
        auto b = controlled_field(x, Controls{}, p, c);
        for (int i = 0; i < kStates; ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("controlled field terms") {
    ModelParams p;
    ControlParams c;
    State x = {100, 20, 10, 70, 500, 40, 30, 800, 600, 300};
    Controls u = {0.3, 0.4, 0.5, 0.6, 0.7};
    auto f = controlled_field(x, u, p, c);
    const double prot = 1 - c.alpha1 * u[1];
    const double lh = prot * foi_h(x, p), lv = prot * foi_v(x, p);
    CHECK(f[Sh] == doctest::Approx(p.Lambda_h - (lh + p.mu_h + u[0]) * x[Sh] + c.omega * u[0] * x[Rh]));
    CHECK(f[Ih] == doctest::Approx(p.gamma_h * x[Eh] - (p.mu_h + (1 - c.alpha2 * u[2]) * p.delta + p.sigma + c.alpha2 * u[2]) * x[Ih]));
    CHECK(f[Rh] == doctest::Approx((p.sigma + c.alpha2 * u[2]) * x[Ih] + u[0] * x[Sh] - (p.mu_h + c.omega * u[0]) * x[Rh]));
    CHECK(f[Sv] == doctest::Approx(p.theta * x[Pup] - lv * x[Sv] - (p.mu_v + c.c_m * u[3]) * x[Sv]));
    CHECK(f[Egg] == doctest::Approx(p.mu_b * (1 - x[Egg] / p.Gamma_E) * vector_total(x) - (p.s + p.mu_E + c.eta1 * u[4]) * x[Egg]));
    CHECK(f[Lar] == doctest::Approx(p.s * x[Egg] * (1 - x[Lar] / p.Gamma_L) - (p.l + p.mu_L + c.eta2 * u[4]) * x[Lar]));
}

TEST_CASE("human total obeys its balance law") {
    std::mt19937_64 g(5);
    for (const auto& p : testutil::random_params(20, 12)) {
        State x = testutil::random_state(g);
        auto f = basic_field(x, p);
        double dn = f[Sh] + f[Eh] + f[Ih] + f[Rh];
        CHECK(dn == doctest::Approx(p.Lambda_h - p.mu_h * human_total(x) - p.delta * x[Ih]).epsilon(1e-10));
        double dv = f[Sv] + f[Ev] + f[Iv];
        CHECK(dv == doctest::Approx(p.theta * x[Pup] - p.mu_v * vector_total(x)).epsilon(1e-10));
    }
}

TEST_CASE("parameter validation") {
    ModelParams p;
    CHECK(violations(p).empty());
    p.eta_h = 1.0;
    CHECK_FALSE(violations(p).empty());
    p = ModelParams{};
    p.mu_v = 0;
    try {
        validate(p);
        FAIL("expected invalid_params");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_params);
    }
    p = ModelParams{};
    p.delta = -1;
    CHECK_THROWS_AS(validate(p), Error);
    ControlParams c;
    c.alpha1 = 1.5;
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("named parameter access round-trips") {
    ModelParams p;
    CHECK(param_names().size() == 21);
    for (const auto& n : param_names()) {
        param_ref(p, n) = 0.123;
        CHECK(param_value(p, n) == 0.123);
    }
    CHECK_FALSE(is_param_name("nope"));
    CHECK_THROWS_AS(param_ref(p, "nope"), Error);
}

TEST_CASE("controlled trajectories stay positive and inside the invariant region") {
    std::mt19937_64 g(21);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    ControlParams c;
    auto draws = testutil::random_params(20, 13);
    for (const auto& p : draws) {
        State x0 = testutil::random_state(g);
        x0[Egg] = std::min(x0[Egg], p.Gamma_E);
        x0[Lar] = std::min(x0[Lar], p.Gamma_L);
        TimeGrid grid{0.0, 60.0, 3000};
        ControlTrajectory u{grid, {}};
        for (int i = 0; i <= grid.n_steps; ++i) u.values.push_back({u01(g), u01(g), u01(g), u01(g), u01(g)});
        auto tr = simulate_controlled(p, c, x0, u);
        const double nh_bound = std::max(human_total(x0), p.Lambda_h / p.mu_h);
        for (const auto& x : tr.values) {
            for (double v : x) REQUIRE(v >= 0);
            CHECK(human_total(x) <= nh_bound * (1 + 1e-12));
            CHECK(x[Egg] <= p.Gamma_E * (1 + 1e-12));
            CHECK(x[Lar] <= p.Gamma_L * (1 + 1e-12));
        }
    }
}
