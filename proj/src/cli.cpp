#include "arbo/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arbo/config.hpp"
#include "arbo/econ.hpp"
#include "arbo/equilibria.hpp"
#include "arbo/io.hpp"
#include "arbo/sensitivity.hpp"
#include "arbo/stability.hpp"
#include "arbo/thresholds.hpp"

namespace arbo {

namespace {

using nlohmann::json;

struct Flags {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<int> bins;
    std::optional<std::string> strategy;
    std::optional<std::string> param;
    std::optional<double> lo, hi, tf, dt;
    std::optional<int> steps;
};

json header(const std::string& command) { return {{"spec_version", kSpecVersion}, {"command", command}}; }

json opt(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

json state_json(const State& x) {
    json j = json::object();
    for (int i = 0; i < kStates; ++i) j[std::string(state_names()[i])] = number(x[i]);
    return j;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Marginal: return "marginal";
        case Verdict::Unstable: return "unstable";
    }
    return "unstable";
}

json verdict_json(const StabilityVerdict& v) {
    return {{"verdict", verdict_name(v.verdict)}, {"stable", v.stable}, {"max_real_eigenvalue", number(v.eigen_max_real)}};
}

std::string path_in(const Flags& f, const std::string& name) {
    std::filesystem::create_directories(f.out);
    return (std::filesystem::path(f.out) / name).string();
}

void emit_json(const Flags& f, const std::string& name, const json& j) {
    write_file(path_in(f, name), j.dump(2) + "\n");
}

json thresholds_json(const ModelParams& p) {
    auto t = bifurcation_thresholds(p);
    auto k = derive_constants(p);
    json j = header("thresholds");
    j["N"] = number(t.N);
    j["R0"] = number(t.r0.R0);
    j["R0_defined"] = t.r0.defined;
    if (!t.r0.defined) j["R0_note"] = "N <= 1: no biological DFE, R0 reported as 0";
    j["K_vh"] = number(t.r0.K_vh);
    j["K_hv"] = number(t.r0.K_hv);
    j["psi"] = number(t.psi);
    j["Rc"] = number(t.Rc);
    j["Rc_squared"] = number(t.Rc * t.Rc);
    j["R1b"] = opt(t.R1b);
    j["R2b"] = opt(t.R2b);
    j["beta_star"] = opt(t.beta_star);
    j["beta_bar"] = opt(t.beta_bar);
    j["beta_minus"] = opt(t.beta_minus);
    j["beta_plus"] = opt(t.beta_plus);
    j["saddle_node_quadratic"] = {{"c2", number(t.sn_c2)}, {"c1", number(t.sn_c1)}, {"c0", number(t.sn_c0)}};
    json iv = json::array();
    for (auto [a, b] : two_endemic_beta_intervals(t)) iv.push_back({number(a), number(b)});
    j["two_endemic_beta_hv_intervals"] = iv;
    j["derived_constants"] = {{"k1", k.k1}, {"k2", k.k2}, {"k3", k.k3}, {"k4", k.k4},   {"k5", k.k5}, {"k6", k.k6},
                              {"k7", k.k7}, {"k8", k.k8}, {"k9", k.k9}, {"k10", k.k10}, {"k11", k.k11}};
    return j;
}

int cmd_thresholds(const RunConfig& cfg, const Flags& f) {
    emit_json(f, "thresholds.json", thresholds_json(cfg.params));
    return 0;
}

int cmd_equilibria(const RunConfig& cfg, const Flags& f) {
    const auto& p = cfg.params;
    json j = header("equilibria");
    j["trivial_equilibrium"] = state_json(trivial_equilibrium(p));
    auto rh = routh_hurwitz_trivial(p);
    j["trivial_stability"] = {{"routh_hurwitz", {{"c1", rh.c1}, {"c2", rh.c2}, {"c3", rh.c3}, {"c4", rh.c4},
                                                 {"H1", rh.H1}, {"H2", rh.H2}, {"H3", rh.H3}, {"H4", rh.H4}}},
                              {"stable", rh.verdict.stable},
                              {"eigen", verdict_json(equilibrium_verdict(trivial_equilibrium(p), p))}};
    if (p.delta == 0) {
        auto dz = delta_zero_check(p);
        j["delta_zero_check"] = {{"no_endemic", dz.no_endemic},
                                 {"lambda_root", dz.lambda_root ? number(*dz.lambda_root) : json(nullptr)},
                                 {"p1", dz.p1},
                                 {"p0", dz.p0}};
    }
    if (net_reproductive_number(p) > 1) {
        auto es = solve_endemic(p);
        j["biological_dfe"] = state_json(*es.dfe_biological);
        j["biological_dfe_stability"] = verdict_json(equilibrium_verdict(*es.dfe_biological, p));
        const auto& q = es.quadratic;
        j["quadratic"] = {{"d2", q.d2}, {"d1", q.d1}, {"d0", q.d0}, {"discriminant", q.discriminant},
                          {"double_root_band", in_double_root_band(q)}};
        j["case"] = es.case_label;
        j["count"] = es.endemic.size();
        json eps = json::array();
        for (const auto& e : es.endemic)
            eps.push_back({{"lambda_h", e.lambda_h},
                           {"state", state_json(e.x)},
                           {"residual", number(e.residual)},
                           {"stability", verdict_json(e.stability)}});
        j["endemic"] = eps;
        j["rejected_roots"] = es.rejected;
        try {
            auto b = bifurcation_coefficients(p);
            j["bifurcation"] = {{"beta_star", b.beta_star},
                                {"zeta1", b.zeta1},
                                {"zeta2", b.zeta2},
                                {"bif_a1", b.bif_a1},
                                {"bif_a1_hessian", b.bif_a1_hessian},
                                {"bif_a2", b.bif_a2},
                                {"bif_a2_generic", b.bif_a2_generic},
                                {"direction", b.direction == Direction::Backward ? "backward" : "forward"}};
        } catch (const Error& e) {
            j["bifurcation"] = {{"error", e.what()}};
        }
    } else {
        j["biological_dfe"] = nullptr;
        j["endemic"] = json::array();
        j["case"] = "N<=1";
        j["count"] = 0;
    }
    emit_json(f, "equilibria.json", j);
    return 0;
}

int cmd_bifurcation(const RunConfig& cfg, const Flags& f) {
    ScanSpec spec = cfg.scan;
    if (!cfg.scan_given) {
        auto t = bifurcation_thresholds(cfg.params);
        if (!t.beta_star) throw Error(ErrorKind::threshold, "no beta_star (N <= 1); give a 'scan' section");
        spec.param = "beta_hv";
        spec.lo = 0;
        spec.hi = 2 * *t.beta_star;
    }
    if (f.param) spec.param = *f.param;
    if (f.lo) spec.lo = *f.lo;
    if (f.hi) spec.hi = *f.hi;
    if (f.steps) spec.steps = *f.steps;

    auto rows = bifurcation_scan(cfg.params, spec);
    CsvWriter w({"param_value", "R0", "branch_id", "I_h", "I_v", "stable", "residual"});
    for (const auto& r : rows)
        w.row({format_double(r.param_value), format_double(r.R0), std::to_string(r.branch_id), format_double(r.I_h),
               format_double(r.I_v), std::to_string(r.stable), format_double(r.residual)});
    write_file(path_in(f, "bifurcation.csv"), w.str());

    auto two = two_branch_values(rows);
    json j = header("bifurcation");
    j["param"] = spec.param;
    j["lo"] = spec.lo;
    j["hi"] = spec.hi;
    j["steps"] = spec.steps;
    j["two_branch_points"] = two.size();
    j["two_branch_min"] = two.empty() ? json(nullptr) : json(two.front());
    j["two_branch_max"] = two.empty() ? json(nullptr) : json(two.back());
    if (spec.param == "beta_hv") {
        auto t = bifurcation_thresholds(cfg.params);
        j["beta_minus"] = opt(t.beta_minus);
        j["beta_plus"] = opt(t.beta_plus);
        j["beta_bar"] = opt(t.beta_bar);
        j["beta_star"] = opt(t.beta_star);
    }
    emit_json(f, "bifurcation.json", j);
    return 0;
}

int cmd_simulate(const RunConfig& cfg, const Flags& f) {
    TimeGrid g = cfg.grid;
    if (f.tf || f.dt) g = TimeGrid::with_step(g.t0, f.tf.value_or(g.tf), f.dt.value_or(g.dt()));
    auto x = simulate_basic(cfg.params, cfg.x0, g);
    write_file(path_in(f, "trajectory.csv"), trajectory_csv(x));
    json j = header("simulate");
    j["t0"] = g.t0;
    j["tf"] = g.tf;
    j["n_steps"] = g.n_steps;
    j["final_state"] = state_json(x.values.back());
    j["cumulated_Ih"] = cumulated_infectious(x);
    emit_json(f, "simulate.json", j);
    return 0;
}

int cmd_sensitivity(const RunConfig& cfg, const Flags& f) {
    const std::uint64_t seed = resolve_seed(f.seed, cfg);
    const int n = f.samples.value_or(cfg.samples);
    const int bins = f.bins.value_or(cfg.bins);
    ParamDistribution dist = cfg.distribution.value_or(default_distribution());

    auto samples = lhs_sample(dist, n, seed);
    auto r0 = r0_values(samples);
    auto stats = r0_distribution(r0, samples, bins);
    auto probs = condition_probabilities(samples);
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    sample_columns(dist, samples, names, cols);
    auto pr = prcc(names, cols, r0);
    pr.seed = seed;

    CsvWriter pc({"parameter", "prcc"});
    for (const auto& e : pr.entries) pc.row({e.parameter, format_double(e.prcc)});
    write_file(path_in(f, "prcc.csv"), pc.str());
    CsvWriter hc({"bin_lo", "bin_hi", "count"});
    for (const auto& b : stats.histogram) hc.row({format_double(b.lo), format_double(b.hi), std::to_string(b.count)});
    write_file(path_in(f, "histogram.csv"), hc.str());

    json j = header("sensitivity");
    j["samples"] = n;
    j["seed"] = seed;
    j["r0"] = {{"mean", stats.mean}, {"std", stats.std}, {"p_ge_1", stats.p_ge_1}, {"n_N_le_1", stats.n_undefined}};
    j["probabilities"] = {{"N_le_1", probs.p_n_le_1},
                          {"N_gt_1", probs.p_n_gt_1},
                          {"two_endemic", probs.p_two_endemic},
                          {"unique_boundary", probs.p_unique_boundary},
                          {"no_endemic", probs.p_no_endemic},
                          {"N_gt_1_R0_lt_1", probs.p_r0_lt_1},
                          {"N_gt_1_R0_ge_1", probs.p_r0_ge_1}};
    json pj = json::object();
    for (const auto& e : pr.entries) pj[e.parameter] = e.prcc;
    j["prcc"] = pj;
    emit_json(f, "sensitivity.json", j);
    return 0;
}

std::vector<StrategyMask> selected_masks(const std::string& s) {
    std::vector<StrategyMask> m;
    if (s == "all")
        for (const auto& n : strategy_names()) m.push_back(strategy(n));
    else
        m.push_back(strategy(s));
    return m;
}

json sweep_json(const SweepResult& r, const StrategyReport& rep) {
    return {{"strategy", r.strategy},
            {"J", r.objective_J},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"suspect", r.suspect},
            {"cumulated_Ih", rep.cumulated_Ih},
            {"efficiency_percent", rep.efficiency_percent},
            {"total_cost", rep.total_cost},
            {"infections_averted", rep.infections_averted}};
}

int cmd_control(const RunConfig& cfg, const Flags& f) {
    auto pr = control_problem(cfg);
    auto masks = selected_masks(f.strategy.value_or(cfg.strategy));
    auto baseline = forward_backward_sweep(pr, strategy("none"));
    const double base_area = cumulated_infectious(baseline.states);
    auto results = solve_strategies(pr, masks);

    json j = header("control");
    j["baseline"] = {{"J", baseline.objective_J}, {"cumulated_Ih", base_area}};
    json list = json::array();
    bool all_converged = true;
    for (const auto& r : results) {
        auto rep = strategy_report(r, base_area, cfg.weights, cfg.cost_mode);
        write_file(path_in(f, "controls_" + r.strategy + ".csv"), controls_csv(r.controls));
        write_file(path_in(f, "trajectory_" + r.strategy + ".csv"), trajectory_csv(r.states));
        list.push_back(sweep_json(r, rep));
        all_converged = all_converged && r.converged;
    }
    j["strategies"] = list;
    emit_json(f, "control.json", j);
    if (!all_converged) throw Error(ErrorKind::nonconvergence, "forward-backward sweep did not converge");
    return 0;
}

int cmd_icer(const RunConfig& cfg, const Flags& f) {
    std::vector<StrategyReport> reports = cfg.icer_rows;
    json j = header("icer");
    if (reports.empty()) {
        auto pr = control_problem(cfg);
        auto baseline = forward_backward_sweep(pr, strategy("none"));
        const double base_area = cumulated_infectious(baseline.states);
        std::vector<StrategyMask> masks;
        for (const auto& n : strategy_names()) masks.push_back(strategy(n));
        for (const auto& r : solve_strategies(pr, masks)) {
            if (!r.converged) throw Error(ErrorKind::nonconvergence, "sweep for " + r.strategy + " did not converge");
            reports.push_back(strategy_report(r, base_area, cfg.weights, cfg.cost_mode));
        }
        j["source"] = "solver";
    } else {
        j["source"] = "config";
    }
    auto t = icer_analysis(reports);
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = {{"strategy", r.strategy},
                    {"averted", r.averted},
                    {"cost", r.cost},
                    {"icer", number(r.icer)},
                    {"status", to_string(r.status)}};
        if (!r.equivalent_to.empty()) row["equivalent_to"] = r.equivalent_to;
        rows.push_back(row);
    }
    j["rows"] = rows;
    json log = json::array();
    for (const auto& c : t.comparisons)
        log.push_back({{"pass", c.pass},
                       {"strategy", c.strategy},
                       {"against", c.against.empty() ? json(nullptr) : json(c.against)},
                       {"icer", number(c.icer)}});
    j["comparisons"] = log;
    j["elimination_order"] = t.eliminated;
    emit_json(f, "icer.json", j);
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"arbo: arboviral transmission model analyses"};
    app.require_subcommand(1);
    Flags f;
    std::uint64_t seed_value = 0;

    auto common = [&](CLI::App* s) {
        s->add_option("--config", f.config, "JSON run configuration")->required();
        s->add_option("--out", f.out, "output directory")->capture_default_str();
        s->add_option("--seed", seed_value, "RNG seed (overrides ARBO_SEED and the config)");
    };
    auto* th = app.add_subcommand("thresholds", "threshold quantities");
    auto* eq = app.add_subcommand("equilibria", "equilibria, stability, bifurcation coefficients");
    auto* bi = app.add_subcommand("bifurcation", "equilibrium scan over one parameter");
    auto* si = app.add_subcommand("simulate", "integrate the uncontrolled model");
    auto* se = app.add_subcommand("sensitivity", "Latin hypercube R0 statistics and PRCC");
    auto* co = app.add_subcommand("control", "optimal control by forward-backward sweep");
    auto* ic = app.add_subcommand("icer", "cost-effectiveness ranking");
    for (auto* s : {th, eq, bi, si, se, co, ic}) common(s);

    int samples = 0, bins = 0, steps = 0;
    double lo = 0, hi = 0, tf = 0, dt = 0;
    std::string strat, param;
    se->add_option("--samples", samples, "number of LHS draws");
    se->add_option("--bins", bins, "histogram bins");
    bi->add_option("--param", param, "parameter to scan");
    bi->add_option("--lo", lo, "scan start");
    bi->add_option("--hi", hi, "scan end");
    bi->add_option("--steps", steps, "grid points");
    si->add_option("--tf", tf, "final time (days)");
    si->add_option("--dt", dt, "step (days)");
    co->add_option("--strategy", strat, "Z1, Z2, Z3, Z4, Z or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto given = [](CLI::App* s, const char* name) { return s->count(name) > 0; };
    CLI::App* cmd = app.get_subcommands().front();
    if (given(cmd, "--seed")) f.seed = seed_value;
    if (given(se, "--samples")) f.samples = samples;
    if (given(se, "--bins")) f.bins = bins;
    if (given(bi, "--param")) f.param = param;
    if (given(bi, "--lo")) f.lo = lo;
    if (given(bi, "--hi")) f.hi = hi;
    if (given(bi, "--steps")) f.steps = steps;
    if (given(si, "--tf")) f.tf = tf;
    if (given(si, "--dt")) f.dt = dt;
    if (given(co, "--strategy")) f.strategy = strat;

    try {
        RunConfig cfg = load_config(f.config);
        const std::string name = cmd->get_name();
        if (name == "thresholds") return cmd_thresholds(cfg, f);
        if (name == "equilibria") return cmd_equilibria(cfg, f);
        if (name == "bifurcation") return cmd_bifurcation(cfg, f);
        if (name == "simulate") return cmd_simulate(cfg, f);
        if (name == "sensitivity") return cmd_sensitivity(cfg, f);
        if (name == "control") return cmd_control(cfg, f);
        return cmd_icer(cfg, f);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace arbo
