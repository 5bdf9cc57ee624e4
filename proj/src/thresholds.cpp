#include "arbo/thresholds.hpp"

#include <algorithm>
#include <cmath>

namespace arbo {

double net_reproductive_number(const ModelParams& p) {
    auto k = derive_constants(p);
    return p.mu_b * p.theta * p.l * p.s / (k.k5 * k.k6 * k.k7 * k.k8);
}

double human_dfe_total(const ModelParams& p) { return p.Lambda_h / p.mu_h; }

double vector_dfe_total(const ModelParams& p) {
    double n = net_reproductive_number(p);
    if (!(n > 1)) throw Error(ErrorKind::threshold, "biological DFE requires N > 1");
    auto k = derive_constants(p);
    return p.Gamma_E * p.Gamma_L * k.k5 * k.k6 * (n - 1) /
           (p.mu_b * (p.Gamma_E * p.s + k.k6 * p.Gamma_L));
}

State trivial_equilibrium(const ModelParams& p) {
    State x{};
    x[Sh] = human_dfe_total(p);
    return x;
}

State dfe_components(const ModelParams& p) {
    double n = net_reproductive_number(p);
    if (!(n > 1)) throw Error(ErrorKind::threshold, "biological DFE requires N > 1");
    auto k = derive_constants(p);
    const double ge = p.Gamma_E, gl = p.Gamma_L;
    const double denom = p.Gamma_E * p.s + k.k6 * p.Gamma_L;
    State x{};
    x[Sh] = human_dfe_total(p);
    x[Sv] = vector_dfe_total(p);
    x[Pup] = ge * gl * k.k5 * k.k6 * k.k8 * (n - 1) / (p.mu_b * p.theta * denom);
    x[Lar] = ge * gl * k.k5 * k.k6 * k.k7 * k.k8 * (n - 1) / (p.mu_b * p.theta * p.l * denom);
    x[Egg] = ge * gl * k.k5 * k.k6 * k.k7 * k.k8 * (n - 1) /
             (p.s * (p.mu_b * p.l * gl * p.theta + k.k5 * k.k7 * k.k8 * ge));
    return x;
}

R0Parts r0_parts(const ModelParams& p) {
    R0Parts r;
    if (!(net_reproductive_number(p) > 1)) return r;
    auto k = derive_constants(p);
    double nv = vector_dfe_total(p), nh = human_dfe_total(p);
    r.K_vh = p.a * p.beta_vh * k.k10 * nv / (k.k3 * k.k4 * nh);
    r.K_hv = p.a * p.beta_hv * k.k11 / (k.k8 * k.k9);
    r.R0 = std::sqrt(p.a * p.a * p.beta_hv * p.beta_vh * k.k10 * k.k11 * nv /
                     (k.k3 * k.k4 * k.k8 * k.k9 * nh));
    r.defined = true;
    return r;
}

double basic_reproduction_number(const ModelParams& p) { return r0_parts(p).R0; }

double critical_r0_squared(const ModelParams& p) {
    auto k = derive_constants(p);
    return (2 * k.k8 * k.k2 + k.k10 * p.a * p.mu_h * p.beta_vh) / (k.k3 * k.k4 * k.k8);
}

std::vector<double> real_quadratic_roots(double c2, double c1, double c0) {
    std::vector<double> r;
    if (c2 == 0) {
        if (c1 != 0) r.push_back(-c0 / c1);
        return r;
    }
    double disc = c1 * c1 - 4 * c2 * c0;
    if (disc < 0) return r;
    double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    if (q == 0) {
        r.push_back(0.0);
        r.push_back(0.0);
        return r;
    }
    r.push_back(q / c2);
    r.push_back(c0 / q);
    std::sort(r.begin(), r.end());
    return r;
}

ThresholdReport bifurcation_thresholds(const ModelParams& p) {
    ThresholdReport t;
    auto k = derive_constants(p);
    t.N = net_reproductive_number(p);
    t.r0 = r0_parts(p);
    const double x = k.k10 * p.a * p.mu_h * p.beta_vh;
    t.psi = x - p.delta * p.gamma_h * k.k8;
    const double rc2 = critical_r0_squared(p);
    t.Rc = std::sqrt(rc2);

    const double A = std::sqrt(p.delta * p.gamma_h * (x + k.k2 * k.k8));
    const double B = t.psi <= 0 ? std::sqrt(-k.k2 * t.psi) : 0.0;
    const double scale = k.k3 * k.k4 * std::sqrt(k.k8);
    if (t.psi <= 0) {
        t.R1b = std::abs(A - B) / scale;
        t.R2b = (A + B) / scale;
    }

    if (t.N > 1) {
        // R0^2 = c * beta_hv
        double nv = vector_dfe_total(p), nh = human_dfe_total(p);
        double c = p.a * p.a * p.beta_vh * k.k10 * k.k11 * nv / (k.k3 * k.k4 * k.k8 * k.k9 * nh);
        if (c > 0) {
            t.beta_star = 1.0 / c;
            t.beta_bar = rc2 / c;
            if (t.psi < 0) {
                t.beta_minus = (A - B) * (A - B) / (scale * scale * c);
                t.beta_plus = (A + B) * (A + B) / (scale * scale * c);
            }
        }
        const double K = k.k3 * k.k3 * k.k4 * k.k4 * k.k8;
        const double d2 = -k.k2 * (x + k.k2 * k.k8);
        const double mh2 = p.mu_h * p.mu_h;
        t.sn_c2 = K * K * mh2 * c * c;
        t.sn_c1 = -2 * K * K * mh2 * c * rc2 - 4 * d2 * K * mh2 * c;
        t.sn_c0 = K * K * mh2 * rc2 * rc2 + 4 * d2 * K * mh2;
    }
    return t;
}

RhoQuadratic rho_quadratic(const ModelParams& p) {
    auto k = derive_constants(p);
    const double x = k.k10 * p.a * p.mu_h * p.beta_vh;
    const double dg = p.delta * p.gamma_h;
    const double k34 = k.k3 * k.k4;
    const double mh2 = p.mu_h * p.mu_h;
    RhoQuadratic r;
    r.rho2 = k34 * k34 * k34 * k34 * k.k8 * k.k8 * mh2;
    r.rho1 = 2 * k34 * k34 * k.k8 * mh2 * (k.k2 * (x - k.k8 * dg) - (x + k.k8 * k.k2) * dg);
    r.rho0 = k34 * k34 * x * x * mh2;
    return r;
}

std::vector<std::pair<double, double>> two_endemic_beta_intervals(const ThresholdReport& r) {
    std::vector<std::pair<double, double>> out;
    if (!r.beta_star || !r.beta_bar || !r.beta_minus || !r.beta_plus) return out;
    double lo1 = *r.beta_bar, hi1 = std::min(*r.beta_minus, *r.beta_star);
    if (lo1 < hi1) out.emplace_back(lo1, hi1);
    double lo2 = std::max(*r.beta_bar, *r.beta_plus), hi2 = *r.beta_star;
    if (lo2 < hi2) out.emplace_back(lo2, hi2);
    return out;
}

}  // namespace arbo
