#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbo/control.hpp"
#include "arbo/econ.hpp"
#include "arbo/equilibria.hpp"
#include "arbo/sensitivity.hpp"

namespace arbo {

struct RunConfig {
    ModelParams params;
    ControlParams controls;
    ObjectiveWeights weights;
    State x0 = {700, 220, 100, 60, 3000, 400, 120, 10000, 5000, 3000};
    TimeGrid grid;
    SweepOptions solver;
    std::string strategy = "Z";
    std::optional<std::uint64_t> seed;

    int samples = 5000;
    int bins = kHistogramBins;
    std::optional<ParamDistribution> distribution;

    ScanSpec scan;
    bool scan_given = false;

    CostMode cost_mode = CostMode::objective;
    std::vector<StrategyReport> icer_rows;  // fixture rows; empty means run the solver
};

// "params" must list every model parameter; other sections are optional.
// Relative paths inside the file resolve against `base_dir`.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

ControlProblem control_problem(const RunConfig& cfg);

constexpr std::uint64_t kDefaultSeed = 42;
// --seed flag, then ARBO_SEED, then the config, then the default.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig& cfg);

}  // namespace arbo
