#include "arbo/model.hpp"

#include <cmath>
#include <utility>

namespace arbo {

namespace {

using Member = double ModelParams::*;

const std::vector<std::pair<std::string, Member>>& param_table() {
    static const std::vector<std::pair<std::string, Member>> t = {
        {"Lambda_h", &ModelParams::Lambda_h}, {"mu_h", &ModelParams::mu_h},
        {"a", &ModelParams::a},               {"beta_hv", &ModelParams::beta_hv},
        {"beta_vh", &ModelParams::beta_vh},   {"gamma_h", &ModelParams::gamma_h},
        {"delta", &ModelParams::delta},       {"sigma", &ModelParams::sigma},
        {"eta_h", &ModelParams::eta_h},       {"eta_v", &ModelParams::eta_v},
        {"mu_v", &ModelParams::mu_v},         {"gamma_v", &ModelParams::gamma_v},
        {"theta", &ModelParams::theta},       {"mu_b", &ModelParams::mu_b},
        {"Gamma_E", &ModelParams::Gamma_E},   {"Gamma_L", &ModelParams::Gamma_L},
        {"mu_E", &ModelParams::mu_E},         {"mu_L", &ModelParams::mu_L},
        {"mu_P", &ModelParams::mu_P},         {"s", &ModelParams::s},
        {"l", &ModelParams::l},
    };
    return t;
}

using CMember = double ControlParams::*;

const std::vector<std::pair<std::string, CMember>>& control_table() {
    static const std::vector<std::pair<std::string, CMember>> t = {
        {"omega", &ControlParams::omega}, {"alpha1", &ControlParams::alpha1},
        {"alpha2", &ControlParams::alpha2}, {"c_m", &ControlParams::c_m},
        {"eta1", &ControlParams::eta1},   {"eta2", &ControlParams::eta2},
    };
    return t;
}

// Rates that appear as divisors somewhere must be strictly positive.
bool must_be_positive(std::string_view n) {
    return n == "Lambda_h" || n == "mu_h" || n == "mu_v" || n == "Gamma_E" || n == "Gamma_L" ||
           n == "s" || n == "l";
}

}  // namespace

const std::array<std::string_view, kStates>& state_names() {
    static const std::array<std::string_view, kStates> n = {"S_h", "E_h", "I_h", "R_h", "S_v",
                                                             "E_v", "I_v", "E",   "L",   "P"};
    return n;
}

const std::vector<std::string>& param_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, m] : param_table()) v.push_back(n);
        return v;
    }();
    return names;
}

bool is_param_name(std::string_view name) {
    for (const auto& [n, m] : param_table())
        if (n == name) return true;
    return false;
}

double& param_ref(ModelParams& p, std::string_view name) {
    for (const auto& [n, m] : param_table())
        if (n == name) return p.*m;
    throw Error(ErrorKind::parse, "unknown model parameter '" + std::string(name) + "'");
}

double param_value(const ModelParams& p, std::string_view name) {
    ModelParams copy = p;
    return param_ref(copy, name);
}

const std::vector<std::string>& control_param_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, m] : control_table()) v.push_back(n);
        return v;
    }();
    return names;
}

double& control_param_ref(ControlParams& c, std::string_view name) {
    for (const auto& [n, m] : control_table())
        if (n == name) return c.*m;
    throw Error(ErrorKind::parse, "unknown control parameter '" + std::string(name) + "'");
}

std::vector<std::string> violations(const ModelParams& p) {
    std::vector<std::string> out;
    for (const auto& [n, m] : param_table()) {
        double v = p.*m;
        if (!std::isfinite(v))
            out.push_back(n + " is not finite");
        else if (must_be_positive(n) && !(v > 0))
            out.push_back(n + " must be > 0");
        else if (v < 0)
            out.push_back(n + " must be >= 0");
    }
    if (p.eta_h >= 1) out.push_back("eta_h must be < 1");
    if (p.eta_v >= 1) out.push_back("eta_v must be < 1");
    return out;
}

std::vector<std::string> violations(const ControlParams& c) {
    std::vector<std::string> out;
    for (const auto& [n, m] : control_table()) {
        double v = c.*m;
        if (!std::isfinite(v) || v < 0) out.push_back(n + " must be finite and >= 0");
    }
    if (c.alpha1 > 1) out.push_back("alpha1 must be <= 1");
    if (c.alpha2 > 1) out.push_back("alpha2 must be <= 1");
    return out;
}

namespace {

void throw_if_any(const std::vector<std::string>& v, const char* what) {
    if (v.empty()) return;
    std::string msg = std::string("invalid ") + what + ":";
    for (const auto& s : v) msg += " " + s + ";";
    throw Error(ErrorKind::invalid_params, msg);
}

}  // namespace

void validate(const ModelParams& p) { throw_if_any(violations(p), "model parameters"); }
void validate(const ControlParams& c) { throw_if_any(violations(c), "control parameters"); }

DerivedConstants derive_constants(const ModelParams& p) {
    DerivedConstants k{};
    k.k1 = p.mu_h;
    k.k3 = p.mu_h + p.gamma_h;
    k.k4 = p.mu_h + p.delta + p.sigma;
    k.k5 = p.s + p.mu_E;
    k.k6 = p.l + p.mu_L;
    k.k7 = p.theta + p.mu_P;
    k.k8 = p.mu_v;
    k.k9 = p.mu_v + p.gamma_v;
    k.k10 = p.eta_h * k.k4 + p.gamma_h;
    k.k11 = p.eta_v * k.k8 + p.gamma_v;
    k.k2 = k.k3 * k.k4 - p.delta * p.gamma_h;
    return k;
}

double k2_alternate(const ModelParams& p) {
    double k4 = p.mu_h + p.delta + p.sigma;
    return p.mu_h * k4 + p.gamma_h * (p.mu_h + p.sigma);
}

}  // namespace arbo
