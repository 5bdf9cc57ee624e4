#pragma once

#include <cmath>
#include <random>

#include "arbo/model.hpp"
#include "arbo/sensitivity.hpp"

namespace testutil {

// Parameters of the backward-bifurcation example.
inline arbo::ModelParams backward_example() {
    arbo::ModelParams p;
    p.Lambda_h = 2.5;
    p.beta_hv = 0.008;
    p.eta_h = 0.78;
    p.eta_v = 0.99;
    p.delta = 1.0;
    p.sigma = 0.01428;
    p.beta_vh = 0.5;
    p.gamma_v = 1.0 / 14;
    p.Gamma_E = 1e4;
    p.Gamma_L = 5e3;
    p.gamma_h = 1.0 / 14;
    p.mu_v = 1.0 / 30;
    p.mu_E = 0.2;
    p.mu_L = 0.2;
    return p;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Draws around the default ranges with n independent streams.
inline std::vector<arbo::ModelParams> random_params(int n, std::uint64_t seed) {
    return arbo::lhs_sample(arbo::default_distribution(), n, seed);
}

inline arbo::State random_state(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(1.0, 5000.0);
    arbo::State x;
    for (auto& v : x) v = u(g);
    return x;
}

}  // namespace testutil
