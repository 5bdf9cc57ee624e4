#include "arbo/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arbo/thresholds.hpp"

namespace arbo {

EndemicQuadratic endemic_quadratic(const ModelParams& p) {
    if (!(net_reproductive_number(p) > 1))
        throw Error(ErrorKind::threshold, "endemic quadratic requires N > 1");
    auto k = derive_constants(p);
    const double r02 = std::pow(basic_reproduction_number(p), 2);
    const double K = k.k3 * k.k3 * k.k4 * k.k4 * k.k8;
    EndemicQuadratic q;
    q.d2 = -k.k2 * (k.k10 * p.a * p.mu_h * p.beta_vh + k.k2 * k.k8);
    q.d1 = K * p.mu_h * (r02 - critical_r0_squared(p));
    q.d0 = K * p.mu_h * p.mu_h * (r02 - 1);
    q.discriminant = q.d1 * q.d1 - 4 * q.d2 * q.d0;
    return q;
}

bool in_double_root_band(const EndemicQuadratic& q) {
    double scale = std::max(q.d1 * q.d1, std::abs(4 * q.d2 * q.d0));
    return scale > 0 && std::abs(q.discriminant) <= kDoubleRootBand * scale;
}

State endemic_state(const ModelParams& p, double lh) {
    auto k = derive_constants(p);
    const double n = net_reproductive_number(p);
    State x{};
    x[Sh] = p.Lambda_h / (p.mu_h + lh);
    x[Eh] = lh * x[Sh] / k.k3;
    x[Ih] = p.gamma_h * x[Eh] / k.k4;
    x[Rh] = p.sigma * x[Ih] / p.mu_h;
    const double P = k.k5 * k.k6 * k.k8 * p.Gamma_E * p.Gamma_L * (n - 1) /
                     (p.mu_b * p.theta * (p.s * p.Gamma_E + k.k6 * p.Gamma_L));
    const double lv = foi_v(x, p);
    x[Sv] = p.theta * P / (lv + k.k8);
    x[Ev] = p.theta * P * lv / (k.k9 * (lv + k.k8));
    x[Iv] = p.gamma_v * x[Ev] / k.k8;
    const double m = k.k5 * k.k8 * p.Gamma_E + p.mu_b * p.theta * P;
    x[Egg] = p.mu_b * p.theta * p.Gamma_E * P / m;
    x[Lar] = p.mu_b * p.theta * p.s * p.Gamma_E * p.Gamma_L * P /
             (k.k6 * p.Gamma_L * m + p.s * p.mu_b * p.theta * p.Gamma_E * P);
    x[Pup] = P;
    return x;
}

double field_residual(const State& x, const ModelParams& p) {
    State f = basic_field(x, p);
    double fn = 0, xn = 0;
    for (int i = 0; i < kStates; ++i) {
        fn = std::max(fn, std::abs(f[i]));
        xn = std::max(xn, std::abs(x[i]));
    }
    return fn / std::max(1.0, xn);
}

std::pair<EndemicCount, std::string> theorem_classification(const ModelParams& p) {
    auto t = bifurcation_thresholds(p);
    if (!(t.N > 1)) return {EndemicCount::NoEndemic, "N<=1"};
    const double r0 = t.r0.R0;
    if (r0 > 1) return {EndemicCount::Unique, "i"};
    if (r0 == 1) {
        if (t.Rc < 1) return {EndemicCount::Unique, "ii-a"};
        return {EndemicCount::NoEndemic, "ii-b"};
    }
    if (t.R1b && t.R2b) {
        bool a = (t.Rc < r0 && r0 < std::min(1.0, *t.R1b)) || (std::max(t.Rc, *t.R2b) < r0 && r0 < 1);
        if (a) return {EndemicCount::Two, "iii-a"};
        if (t.Rc < r0 && (r0 == *t.R1b || r0 == *t.R2b)) return {EndemicCount::Unique, "iii-b"};
    }
    return {EndemicCount::NoEndemic, "iii-c"};
}

EquilibriumSet solve_endemic(const ModelParams& p) {
    EquilibriumSet es;
    es.dfe_trivial = trivial_equilibrium(p);
    es.quadratic = endemic_quadratic(p);
    es.dfe_biological = dfe_components(p);
    es.case_label = theorem_classification(p).second;

    const auto& q = es.quadratic;
    std::vector<double> roots;
    if (q.d1 > 0 && q.d0 < 0 && in_double_root_band(q))
        roots.push_back(-q.d1 / (2 * q.d2));
    else
        roots = real_quadratic_roots(q.d2, q.d1, q.d0);

    for (double lh : roots) {
        if (!(lh > 1e-14)) {
            es.rejected.push_back("lambda_h = " + std::to_string(lh) + " not positive");
            continue;
        }
        EndemicPoint ep;
        ep.lambda_h = lh;
        ep.x = endemic_state(p, lh);
        if (!std::all_of(ep.x.begin(), ep.x.end(), [](double v) { return v > 0; })) {
            es.rejected.push_back("lambda_h = " + std::to_string(lh) + " gives a nonpositive component");
            continue;
        }
        ep.residual = field_residual(ep.x, p);
        if (!(ep.residual < kResidualTol))
            throw Error(ErrorKind::residual,
                        "endemic point fails the field residual: " + std::to_string(ep.residual));
        ep.stability = equilibrium_verdict(ep.x, p);
        es.endemic.push_back(ep);
    }
    std::sort(es.endemic.begin(), es.endemic.end(),
              [](const EndemicPoint& a, const EndemicPoint& b) { return a.lambda_h < b.lambda_h; });
    es.count = es.endemic.empty() ? EndemicCount::NoEndemic
               : es.endemic.size() == 1 ? EndemicCount::Unique
                                        : EndemicCount::Two;
    return es;
}

DeltaZeroResult delta_zero_check(const ModelParams& p) {
    if (p.delta != 0) throw Error(ErrorKind::precondition, "delta_zero_check needs delta = 0");
    auto k = derive_constants(p);
    const double r02 = std::pow(basic_reproduction_number(p), 2);
    DeltaZeroResult r;
    r.p1 = p.mu_b * p.Lambda_h * k.k9 * (k.k10 * p.a * p.mu_h * p.beta_vh + k.k3 * k.k8 * (p.mu_h + p.sigma));
    r.p0 = -p.mu_h * k.k3 * k.k4 * k.k8 * k.k9 * p.mu_b * p.Lambda_h * (r02 - 1);
    const double root = -r.p0 / r.p1;
    r.no_endemic = !(root > 0);
    if (r02 >= 1) r.lambda_root = root;
    return r;
}

namespace {

std::vector<ScanRow> scan_point(const ModelParams& base, const ScanSpec& spec, double value) {
    std::vector<ScanRow> rows;
    ModelParams p = base;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        param_ref(p, spec.param) = value;
        validate(p);
        const double r0 = basic_reproduction_number(p);
        const bool vectors = net_reproductive_number(p) > 1;
        State dfe = vectors ? dfe_components(p) : trivial_equilibrium(p);
        ScanRow d{value, r0, 0, 0.0, 0.0, equilibrium_verdict(dfe, p).stable ? 1 : 0, field_residual(dfe, p)};
        rows.push_back(d);
        if (!vectors) return rows;
        auto es = solve_endemic(p);
        int id = es.endemic.size() == 2 ? 1 : 2;
        for (const auto& e : es.endemic)
            rows.push_back({value, r0, id++, e.x[Ih], e.x[Iv], e.stability.stable ? 1 : 0, e.residual});
    } catch (const Error&) {
        rows.clear();
        rows.push_back({value, nan, -1, nan, nan, 0, nan});
    }
    return rows;
}

double grid_value(const ScanSpec& s, int i) {
    if (s.steps == 1) return s.lo;
    return s.lo + (s.hi - s.lo) * i / (s.steps - 1);
}

void check_spec(const ScanSpec& s) {
    if (s.steps < 1 || !(s.hi >= s.lo)) throw Error(ErrorKind::invalid_params, "scan needs steps >= 1 and hi >= lo");
    if (!is_param_name(s.param)) throw Error(ErrorKind::parse, "unknown scan parameter '" + s.param + "'");
}

std::vector<ScanRow> flatten(std::vector<std::vector<ScanRow>>& per) {
    std::vector<ScanRow> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace

std::vector<ScanRow> bifurcation_scan(const ModelParams& p, const ScanSpec& spec) {
    check_spec(spec);
    std::vector<std::vector<ScanRow>> per(spec.steps);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < spec.steps; ++i) per[i] = scan_point(p, spec, grid_value(spec, i));
    return flatten(per);
}

namespace serial {

std::vector<ScanRow> bifurcation_scan(const ModelParams& p, const ScanSpec& spec) {
    check_spec(spec);
    std::vector<std::vector<ScanRow>> per;
    for (int i = 0; i < spec.steps; ++i) per.push_back(scan_point(p, spec, grid_value(spec, i)));
    return flatten(per);
}

}  // namespace serial

std::vector<double> two_branch_values(const std::vector<ScanRow>& rows) {
    std::vector<double> out;
    for (const auto& r : rows)
        if (r.branch_id == 1) out.push_back(r.param_value);
    return out;
}

}  // namespace arbo
