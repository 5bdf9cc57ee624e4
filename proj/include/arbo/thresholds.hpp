#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arbo/model.hpp"

namespace arbo {

struct R0Parts {
    double R0 = 0;
    double K_vh = 0;
    double K_hv = 0;
    bool defined = false;  // false when N <= 1; R0 is then reported as 0
};

struct ThresholdReport {
    double N = 0;
    R0Parts r0;
    double psi = 0;
    double Rc = 0;
    std::optional<double> R1b, R2b;  // real iff psi <= 0
    std::optional<double> beta_star, beta_bar;  // need N > 1
    std::optional<double> beta_minus, beta_plus;  // need N > 1 and psi < 0
    // d-discriminant as a quadratic in beta_hv: sn_c2 b^2 + sn_c1 b + sn_c0.
    double sn_c2 = 0, sn_c1 = 0, sn_c0 = 0;
};

// d1^2 - 4 d2 d0 as a quadratic in R0^2.
struct RhoQuadratic {
    double rho2, rho1, rho0;
};

double net_reproductive_number(const ModelParams& p);
double human_dfe_total(const ModelParams& p);
// Adult vectors at the biological DFE; requires N > 1.
double vector_dfe_total(const ModelParams& p);

State trivial_equilibrium(const ModelParams& p);
// Biological DFE E1; threshold error when N <= 1.
State dfe_components(const ModelParams& p);

R0Parts r0_parts(const ModelParams& p);
double basic_reproduction_number(const ModelParams& p);
double critical_r0_squared(const ModelParams& p);  // Rc^2

ThresholdReport bifurcation_thresholds(const ModelParams& p);
RhoQuadratic rho_quadratic(const ModelParams& p);

// beta_hv intervals with two endemic equilibria (saddle-node theorem).
std::vector<std::pair<double, double>> two_endemic_beta_intervals(const ThresholdReport& r);

// Roots of c2 x^2 + c1 x + c0 in ascending order, cancellation-free form.
std::vector<double> real_quadratic_roots(double c2, double c1, double c0);

}  // namespace arbo
