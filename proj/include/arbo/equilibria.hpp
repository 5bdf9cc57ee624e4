#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arbo/model.hpp"
#include "arbo/stability.hpp"

namespace arbo {

struct EndemicQuadratic {
    double d2 = 0, d1 = 0, d0 = 0;
    double discriminant = 0;
};

enum class EndemicCount { NoEndemic, Unique, Two };

struct EndemicPoint {
    State x{};
    double lambda_h = 0;
    double residual = 0;  // ||f(x)||_inf / max(1, ||x||_inf)
    StabilityVerdict stability;
};

struct EquilibriumSet {
    State dfe_trivial{};
    std::optional<State> dfe_biological;
    EndemicQuadratic quadratic;
    std::vector<EndemicPoint> endemic;  // ascending lambda_h
    EndemicCount count = EndemicCount::NoEndemic;
    std::string case_label;             // theorem case, e.g. "iii-a"
    std::vector<std::string> rejected;  // roots dropped with the reason
};

constexpr double kResidualTol = 1e-8;
constexpr double kDoubleRootBand = 1e-3;

EndemicQuadratic endemic_quadratic(const ModelParams& p);
bool in_double_root_band(const EndemicQuadratic& q);

// Endemic state for a given lambda_h (back-substitution); requires N > 1.
State endemic_state(const ModelParams& p, double lambda_h);
double field_residual(const State& x, const ModelParams& p);

// Count and case label from R0, Rc, R1b, R2b alone.
std::pair<EndemicCount, std::string> theorem_classification(const ModelParams& p);

EquilibriumSet solve_endemic(const ModelParams& p);

struct DeltaZeroResult {
    bool no_endemic = true;
    std::optional<double> lambda_root;
    double p1 = 0, p0 = 0;
};

DeltaZeroResult delta_zero_check(const ModelParams& p);

struct ScanRow {
    double param_value = 0;
    double R0 = 0;
    int branch_id = 0;  // 0 DFE, 1 lower endemic, 2 upper endemic, -1 failed point
    double I_h = 0, I_v = 0;
    int stable = 0;
    double residual = 0;
};

struct ScanSpec {
    std::string param = "beta_hv";
    double lo = 0, hi = 0;
    int steps = 500;  // grid points, endpoints included
};

std::vector<ScanRow> bifurcation_scan(const ModelParams& p, const ScanSpec& spec);

namespace serial {
std::vector<ScanRow> bifurcation_scan(const ModelParams& p, const ScanSpec& spec);
}

// Grid values at which the scan found two endemic branches.
std::vector<double> two_branch_values(const std::vector<ScanRow>& rows);

}  // namespace arbo
