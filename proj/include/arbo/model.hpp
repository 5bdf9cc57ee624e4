#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "arbo/errors.hpp"
#include "arbo/jet.hpp"

namespace arbo {

constexpr int kStates = 10;
constexpr int kControls = 5;

// Compartment order used everywhere (states, adjoints, CSV columns).
enum Idx { Sh = 0, Eh, Ih, Rh, Sv, Ev, Iv, Egg, Lar, Pup };

template <class T>
using StateT = std::array<T, kStates>;
using State = StateT<double>;
using Controls = std::array<double, kControls>;

const std::array<std::string_view, kStates>& state_names();

struct ModelParams {
    double Lambda_h = 2.5;
    double mu_h = 1.0 / (67.0 * 365.0);
    double a = 1.0;
    double beta_hv = 0.75;
    double beta_vh = 0.75;
    double gamma_h = 1.0 / 14.0;
    double delta = 1e-3;
    double sigma = 0.1428;
    double eta_h = 0.35;
    double eta_v = 0.35;
    double mu_v = 1.0 / 30.0;
    double gamma_v = 1.0 / 21.0;
    double theta = 0.08;
    double mu_b = 6.0;
    double Gamma_E = 1e4;
    double Gamma_L = 5e3;
    double mu_E = 0.2;
    double mu_L = 0.4;
    double mu_P = 0.4;
    double s = 0.7;
    double l = 0.5;
};

struct ControlParams {
    double omega = 0.05;
    double alpha1 = 0.5;
    double alpha2 = 0.5;
    double c_m = 0.2;
    double eta1 = 0.001;
    double eta2 = 0.3;
};

struct DerivedConstants {
    double k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11;
};

// Named access for config files, distributions and parameter scans.
const std::vector<std::string>& param_names();
double& param_ref(ModelParams& p, std::string_view name);
double param_value(const ModelParams& p, std::string_view name);
bool is_param_name(std::string_view name);

const std::vector<std::string>& control_param_names();
double& control_param_ref(ControlParams& c, std::string_view name);

std::vector<std::string> violations(const ModelParams& p);
std::vector<std::string> violations(const ControlParams& c);
void validate(const ModelParams& p);
void validate(const ControlParams& c);

DerivedConstants derive_constants(const ModelParams& p);
// k2 through its second closed form, mu_h k4 + gamma_h (mu_h + sigma).
double k2_alternate(const ModelParams& p);

template <class T>
T human_total(const StateT<T>& x) {
    return x[Sh] + x[Eh] + x[Ih] + x[Rh];
}

template <class T>
T vector_total(const StateT<T>& x) {
    return x[Sv] + x[Ev] + x[Iv];
}

template <class T>
T checked_human_total(const StateT<T>& x) {
    T nh = human_total(x);
    if (value_of(nh) == 0.0) throw Error(ErrorKind::zero_population, "total human population is zero");
    return nh;
}

template <class T>
T foi_h(const StateT<T>& x, const ModelParams& p) {
    return p.a * p.beta_hv * (p.eta_v * x[Ev] + x[Iv]) / checked_human_total(x);
}

template <class T>
T foi_v(const StateT<T>& x, const ModelParams& p) {
    return p.a * p.beta_vh * (p.eta_h * x[Eh] + x[Ih]) / checked_human_total(x);
}

template <class T>
StateT<T> basic_field(const StateT<T>& x, const ModelParams& p) {
    T lh = foi_h(x, p);
    T lv = foi_v(x, p);
    T nv = vector_total(x);
    StateT<T> f;
    f[Sh] = p.Lambda_h - (lh + p.mu_h) * x[Sh];
    f[Eh] = lh * x[Sh] - (p.mu_h + p.gamma_h) * x[Eh];
    f[Ih] = p.gamma_h * x[Eh] - (p.mu_h + p.delta + p.sigma) * x[Ih];
    f[Rh] = p.sigma * x[Ih] - p.mu_h * x[Rh];
    f[Sv] = p.theta * x[Pup] - lv * x[Sv] - p.mu_v * x[Sv];
    f[Ev] = lv * x[Sv] - (p.mu_v + p.gamma_v) * x[Ev];
    f[Iv] = p.gamma_v * x[Ev] - p.mu_v * x[Iv];
    f[Egg] = p.mu_b * (1.0 - x[Egg] / p.Gamma_E) * nv - (p.s + p.mu_E) * x[Egg];
    f[Lar] = p.s * x[Egg] * (1.0 - x[Lar] / p.Gamma_L) - (p.l + p.mu_L) * x[Lar];
    f[Pup] = p.l * x[Lar] - (p.theta + p.mu_P) * x[Pup];
    return f;
}

template <class T>
StateT<T> controlled_field(const StateT<T>& x, const Controls& u, const ModelParams& p,
                           const ControlParams& c) {
    const double prot = 1.0 - c.alpha1 * u[1];
    T lh = prot * foi_h(x, p);
    T lv = prot * foi_v(x, p);
    T nv = vector_total(x);
    const double muv = p.mu_v + c.c_m * u[3];
    StateT<T> f;
    f[Sh] = p.Lambda_h - (lh + p.mu_h + u[0]) * x[Sh] + c.omega * u[0] * x[Rh];
    f[Eh] = lh * x[Sh] - (p.mu_h + p.gamma_h) * x[Eh];
    f[Ih] = p.gamma_h * x[Eh] -
            (p.mu_h + (1.0 - c.alpha2 * u[2]) * p.delta + p.sigma + c.alpha2 * u[2]) * x[Ih];
    f[Rh] = (p.sigma + c.alpha2 * u[2]) * x[Ih] + u[0] * x[Sh] - (p.mu_h + c.omega * u[0]) * x[Rh];
    f[Sv] = p.theta * x[Pup] - lv * x[Sv] - muv * x[Sv];
    f[Ev] = lv * x[Sv] - (muv + p.gamma_v) * x[Ev];
    f[Iv] = p.gamma_v * x[Ev] - muv * x[Iv];
    f[Egg] = p.mu_b * (1.0 - x[Egg] / p.Gamma_E) * nv - (p.s + p.mu_E + c.eta1 * u[4]) * x[Egg];
    f[Lar] = p.s * x[Egg] * (1.0 - x[Lar] / p.Gamma_L) - (p.l + p.mu_L + c.eta2 * u[4]) * x[Lar];
    f[Pup] = p.l * x[Lar] - (p.theta + p.mu_P) * x[Pup];
    return f;
}

}  // namespace arbo
