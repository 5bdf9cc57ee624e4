#include <doctest.h>

#include <random>

#include "arbo/control.hpp"
#include "arbo/equilibria.hpp"
#include "arbo/stability.hpp"
#include "arbo/thresholds.hpp"
#include "helpers.hpp"

using namespace arbo;
using testutil::rel;

TEST_CASE("exact Jacobian matches central differences") {
    std::mt19937_64 g(301);
    for (const auto& p : testutil::random_params(30, 302)) {
        State x = testutil::random_state(g);
        Matrix10 a = jacobian_exact(x, p), b = jacobian(x, p);
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, a.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("Jacobian at the trivial equilibrium in closed form") {
    ModelParams p;
    auto k = derive_constants(p);
    Matrix10 J = jacobian_exact(trivial_equilibrium(p), p);
    Matrix10 E = Matrix10::Zero();
    E(Sh, Sh) = -p.mu_h;
    E(Sh, Ev) = -p.a * p.beta_hv * p.eta_v;
    E(Sh, Iv) = -p.a * p.beta_hv;
    E(Eh, Eh) = -k.k3;
    E(Eh, Ev) = p.a * p.beta_hv * p.eta_v;
    E(Eh, Iv) = p.a * p.beta_hv;
    E(Ih, Eh) = p.gamma_h;
    E(Ih, Ih) = -k.k4;
    E(Rh, Ih) = p.sigma;
    E(Rh, Rh) = -p.mu_h;
    E(Sv, Sv) = -k.k8;
    E(Sv, Pup) = p.theta;
    E(Ev, Ev) = -k.k9;
    E(Iv, Ev) = p.gamma_v;
    E(Iv, Iv) = -k.k8;
    E(Egg, Sv) = E(Egg, Ev) = E(Egg, Iv) = p.mu_b;
    E(Egg, Egg) = -k.k5;
    E(Lar, Egg) = p.s;
    E(Lar, Lar) = -k.k6;
    E(Pup, Lar) = p.l;
    E(Pup, Pup) = -k.k7;
    CHECK((J - E).cwiseAbs().maxCoeff() < 1e-14);

    Eigen::Matrix4d B = trivial_vector_block(p);
    const int idx[4] = {Sv, Egg, Lar, Pup};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(B(i, j) == E(idx[i], idx[j]));
}

TEST_CASE("Routh-Hurwitz verdict agrees with eigenvalues of the vector block") {
    int stable = 0, unstable = 0;
    auto d = default_distribution();
    d.ranges.push_back({"mu_b", 0.05, 8.0});
    for (const auto& p : lhs_sample(d, 2000, 303)) {
        const double n = net_reproductive_number(p);
        if (std::abs(n - 1) < 1e-6) continue;
        auto rh = routh_hurwitz_trivial(p);
        double m = trivial_vector_block(p).eigenvalues().real().maxCoeff();
        CHECK(rh.verdict.stable == (m < 0));
        CHECK(rh.verdict.stable == (n < 1));
        CHECK(std::isnan(rh.verdict.eigen_max_real));
        (rh.verdict.stable ? stable : unstable)++;
        auto full = equilibrium_verdict(trivial_equilibrium(p), p);
        CHECK(full.stable == (n < 1));
    }
    CHECK(stable > 0);
    CHECK(unstable > 0);
}

TEST_CASE("bifurcation coefficients at beta*") {
    auto p = testutil::backward_example();
    auto b = bifurcation_coefficients(p);
    CHECK(b.bif_a1 > 0);
    CHECK(b.bif_a2 > 0);
    CHECK(b.direction == Direction::Backward);
    CHECK(rel(b.bif_a1, b.bif_a1_hessian) < 1e-6);
    CHECK(rel(b.bif_a2, b.bif_a2_generic) < 1e-6);
    CHECK(b.w[Iv] == doctest::Approx(1.0));
    CHECK(b.v.dot(b.w) == doctest::Approx(1.0));
    ModelParams ps = p;
    ps.beta_hv = b.beta_star;
    Matrix10 J = jacobian_exact(dfe_components(ps), ps);
    const double s = J.cwiseAbs().maxCoeff();
    CHECK((J * b.w).cwiseAbs().maxCoeff() < 1e-9 * s * b.w.cwiseAbs().maxCoeff());
    CHECK((b.v.transpose() * J).cwiseAbs().maxCoeff() < 1e-9 * s * b.v.cwiseAbs().maxCoeff());
    CHECK(b.min_abs_eigen_real < 1e-10);
}

TEST_CASE("without disease-induced death the bifurcation is never backward") {
    int n = 0;
    for (auto p : testutil::random_params(400, 304)) {
        p.delta = 0;
        if (!(net_reproductive_number(p) > 1)) continue;
        auto b = bifurcation_coefficients(p);
        CHECK(b.direction == Direction::Forward);
        CHECK(rel(b.bif_a1, b.bif_a1_hessian) < 1e-5);
        if (++n == 200) break;
    }
    CHECK(n == 200);
}

TEST_CASE("bifurcation coefficients need N > 1") {
    ModelParams p;
    p.mu_b = 0.01;
    CHECK_THROWS_AS(bifurcation_coefficients(p), Error);
}

TEST_CASE("Lyapunov function decreases along trajectories when N <= 1") {
    std::mt19937_64 g(305);
    auto d = default_distribution();
    d.ranges.push_back({"mu_b", 0.05, 0.4});
    int n = 0;
    for (const auto& p : lhs_sample(d, 200, 306)) {
        if (net_reproductive_number(p) > 1) continue;
        State x0 = testutil::random_state(g);
        auto tr = simulate_basic(p, x0, TimeGrid{0.0, 50.0, 5000});
        auto r = lyapunov_trivial_check(p, tr);
        CHECK(r.max_increment_vector <= 1e-9 * std::max(1.0, std::abs(r.L0)));
        ++n;
    }
    CHECK(n > 50);
}

TEST_CASE("human part of the Lyapunov sum is not monotone below the human equilibrium") {
    ModelParams p;
    p.mu_b = 0.1;
    REQUIRE(net_reproductive_number(p) <= 1);
    // No vectors: the sum reduces to N_h - N_h0, which grows while N_h < Lambda_h / mu_h.
    State x0 = {700, 0, 0, 60, 0, 0, 0, 0, 0, 0};
    auto tr = simulate_basic(p, x0, TimeGrid{0.0, 50.0, 5000});
    auto r = lyapunov_trivial_check(p, tr);
    CHECK(r.max_increment > 0);
    CHECK(r.max_increment_vector <= 0);
    ModelParams q;
    CHECK_THROWS_AS(lyapunov_trivial_check(q, tr), Error);
}
