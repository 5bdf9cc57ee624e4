#include "arbo/config.hpp"

#include <cstdlib>
#include <set>

#include <json.hpp>

#include "arbo/io.hpp"

namespace arbo {

namespace {

using nlohmann::json;

double num(const json& j, const std::string& field) {
    if (!j.is_number()) throw Error(ErrorKind::parse, "field '" + field + "' must be a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw Error(ErrorKind::parse, "field '" + field + "' must be an integer");
    return j.get<int>();
}

std::string str(const json& j, const std::string& field) {
    if (!j.is_string()) throw Error(ErrorKind::parse, "field '" + field + "' must be a string");
    return j.get<std::string>();
}

void only_keys(const json& obj, const std::string& section, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw Error(ErrorKind::parse, "section '" + section + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw Error(ErrorKind::parse, "unknown field '" + section + "." + it.key() + "'");
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

std::string join_path(const std::string& dir, const std::string& p) {
    if (p.empty() || p.front() == '/' || dir.empty()) return p;
    return dir + "/" + p;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::parse, std::string("config: ") + e.what());
    }
    only_keys(j, "config",
              {"params", "controls", "weights", "initial_state", "time", "solver", "strategy", "seed",
               "sensitivity", "scan", "econ", "icer", "description"});
    RunConfig c;

    if (!j.contains("params")) throw Error(ErrorKind::parse, "missing required section 'params'");
    const auto& p = j["params"];
    only_keys(p, "params", as_set(param_names()));
    for (const auto& n : param_names()) {
        if (!p.contains(n)) throw Error(ErrorKind::parse, "missing required field 'params." + n + "'");
        param_ref(c.params, n) = num(p[n], "params." + n);
    }
    validate(c.params);

    if (j.contains("controls")) {
        const auto& s = j["controls"];
        only_keys(s, "controls", as_set(control_param_names()));
        for (auto it = s.begin(); it != s.end(); ++it)
            control_param_ref(c.controls, it.key()) = num(it.value(), "controls." + it.key());
        validate(c.controls);
    }

    if (j.contains("weights")) {
        const auto& s = j["weights"];
        only_keys(s, "weights", {"D1", "D2", "D3", "D4", "B"});
        if (s.contains("D1")) c.weights.D1 = num(s["D1"], "weights.D1");
        if (s.contains("D2")) c.weights.D2 = num(s["D2"], "weights.D2");
        if (s.contains("D3")) c.weights.D3 = num(s["D3"], "weights.D3");
        if (s.contains("D4")) c.weights.D4 = num(s["D4"], "weights.D4");
        if (s.contains("B")) {
            if (!s["B"].is_array() || s["B"].size() != kControls)
                throw Error(ErrorKind::parse, "field 'weights.B' must be an array of 5 numbers");
            for (int i = 0; i < kControls; ++i) c.weights.B[i] = num(s["B"][i], "weights.B");
        }
        validate(c.weights);
    }

    if (j.contains("initial_state")) {
        const auto& s = j["initial_state"];
        std::set<std::string> names;
        for (auto n : state_names()) names.emplace(n);
        only_keys(s, "initial_state", names);
        for (int i = 0; i < kStates; ++i) {
            std::string n(state_names()[i]);
            if (!s.contains(n)) throw Error(ErrorKind::parse, "missing required field 'initial_state." + n + "'");
            c.x0[i] = num(s[n], "initial_state." + n);
            if (!(c.x0[i] >= 0)) throw Error(ErrorKind::invalid_params, "initial_state." + n + " must be >= 0");
        }
    }

    if (j.contains("time")) {
        const auto& s = j["time"];
        only_keys(s, "time", {"t0", "tf", "dt", "n_steps"});
        double t0 = s.contains("t0") ? num(s["t0"], "time.t0") : 0.0;
        double tf = s.contains("tf") ? num(s["tf"], "time.tf") : 20.0;
        if (s.contains("dt") && s.contains("n_steps"))
            throw Error(ErrorKind::parse, "give either 'time.dt' or 'time.n_steps', not both");
        if (s.contains("n_steps")) {
            c.grid = TimeGrid{t0, tf, integer(s["n_steps"], "time.n_steps")};
            c.grid.validate();
        } else {
            double dt = s.contains("dt") ? num(s["dt"], "time.dt") : 0.01;
            if (!(dt > 0)) throw Error(ErrorKind::invalid_params, "time.dt must be > 0");
            c.grid = TimeGrid::with_step(t0, tf, dt);
        }
    }

    if (j.contains("solver")) {
        const auto& s = j["solver"];
        only_keys(s, "solver", {"mix", "tol", "max_iters", "initial_guess"});
        if (s.contains("mix")) c.solver.mix = num(s["mix"], "solver.mix");
        if (s.contains("tol")) c.solver.tol = num(s["tol"], "solver.tol");
        if (s.contains("max_iters")) c.solver.max_iters = integer(s["max_iters"], "solver.max_iters");
        if (s.contains("initial_guess")) c.solver.initial_guess = num(s["initial_guess"], "solver.initial_guess");
    }

    if (j.contains("strategy")) {
        c.strategy = str(j["strategy"], "strategy");
        if (c.strategy != "all") strategy(c.strategy);
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw Error(ErrorKind::parse, "field 'seed' must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }

    if (j.contains("sensitivity")) {
        const auto& s = j["sensitivity"];
        only_keys(s, "sensitivity", {"samples", "bins", "distribution"});
        if (s.contains("samples")) c.samples = integer(s["samples"], "sensitivity.samples");
        if (s.contains("bins")) c.bins = integer(s["bins"], "sensitivity.bins");
        if (s.contains("distribution")) {
            const auto& d = s["distribution"];
            if (d.is_string())
                c.distribution = distribution_from_json(read_file(join_path(base_dir, d.get<std::string>())), c.params);
            else
                c.distribution = distribution_from_json(d.dump(), c.params);
        }
    }

    if (j.contains("scan")) {
        const auto& s = j["scan"];
        only_keys(s, "scan", {"param", "lo", "hi", "steps"});
        if (s.contains("param")) c.scan.param = str(s["param"], "scan.param");
        if (!s.contains("lo") || !s.contains("hi")) throw Error(ErrorKind::parse, "section 'scan' needs 'lo' and 'hi'");
        c.scan.lo = num(s["lo"], "scan.lo");
        c.scan.hi = num(s["hi"], "scan.hi");
        if (s.contains("steps")) c.scan.steps = integer(s["steps"], "scan.steps");
        c.scan_given = true;
    }

    if (j.contains("econ")) {
        const auto& s = j["econ"];
        only_keys(s, "econ", {"cost"});
        if (s.contains("cost")) {
            auto m = str(s["cost"], "econ.cost");
            if (m == "objective")
                c.cost_mode = CostMode::objective;
            else if (m == "control_only")
                c.cost_mode = CostMode::control_only;
            else
                throw Error(ErrorKind::parse, "field 'econ.cost' must be 'objective' or 'control_only'");
        }
    }

    if (j.contains("icer")) {
        const auto& s = j["icer"];
        only_keys(s, "icer", {"rows"});
        if (!s.contains("rows") || !s["rows"].is_array()) throw Error(ErrorKind::parse, "field 'icer.rows' must be an array");
        for (const auto& r : s["rows"]) {
            only_keys(r, "icer.rows[]", {"strategy", "averted", "cost", "total_infected"});
            StrategyReport sr;
            if (!r.contains("strategy") || !r.contains("averted") || !r.contains("cost"))
                throw Error(ErrorKind::parse, "each 'icer.rows' entry needs strategy, averted and cost");
            sr.strategy = str(r["strategy"], "icer.rows[].strategy");
            sr.infections_averted = num(r["averted"], "icer.rows[].averted");
            sr.total_cost = num(r["cost"], "icer.rows[].cost");
            if (r.contains("total_infected")) sr.cumulated_Ih = num(r["total_infected"], "icer.rows[].total_infected");
            c.icer_rows.push_back(sr);
        }
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return parse_config(read_file(path), dir);
}

ControlProblem control_problem(const RunConfig& cfg) {
    ControlProblem pr;
    pr.params = cfg.params;
    pr.controls = cfg.controls;
    pr.weights = cfg.weights;
    pr.x0 = cfg.x0;
    pr.grid = cfg.grid;
    pr.options = cfg.solver;
    return pr;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig& cfg) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ARBO_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw Error(ErrorKind::parse, "ARBO_SEED must be a non-negative integer");
        return v;
    }
    return cfg.seed.value_or(kDefaultSeed);
}

}  // namespace arbo
