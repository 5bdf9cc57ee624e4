#include <benchmark/benchmark.h>

#include "arbo/config.hpp"
#include "arbo/control.hpp"
#include "arbo/equilibria.hpp"
#include "arbo/sensitivity.hpp"

using namespace arbo;

namespace {

ModelParams backward_params() {
    ModelParams p;
    p.beta_hv = 0.008;
    p.eta_h = 0.78;
    p.eta_v = 0.99;
    p.delta = 1.0;
    p.sigma = 0.01428;
    p.beta_vh = 0.5;
    p.gamma_v = 1.0 / 14;
    p.gamma_h = 1.0 / 14;
    p.mu_v = 1.0 / 30;
    p.mu_E = 0.2;
    p.mu_L = 0.2;
    return p;
}

const std::vector<ModelParams>& samples() {
    static const auto s = lhs_sample(default_distribution(), 5000, 42);
    return s;
}

template <class F>
void scan(benchmark::State& st, F f) {
    const auto p = backward_params();
    const ScanSpec spec{"beta_hv", 0.0, 0.0877, static_cast<int>(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(f(p, spec));
}

template <class F>
void r0_batch(benchmark::State& st, F f) {
    for (auto _ : st) benchmark::DoNotOptimize(f(samples()));
}

template <class F>
void prcc_batch(benchmark::State& st, F f) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    sample_columns(default_distribution(), samples(), names, cols);
    const auto out = serial::r0_values(samples());
    for (auto _ : st) benchmark::DoNotOptimize(f(names, cols, out));
}

template <class F>
void strategies(benchmark::State& st, F f) {
    const auto pr = default_control_problem();
    std::vector<StrategyMask> m;
    for (const auto& n : strategy_names()) m.push_back(strategy(n));
    for (auto _ : st) benchmark::DoNotOptimize(f(pr, m));
}

void scan_serial(benchmark::State& st) { scan(st, serial::bifurcation_scan); }
void scan_parallel(benchmark::State& st) { scan(st, bifurcation_scan); }
void r0_serial(benchmark::State& st) { r0_batch(st, serial::r0_values); }
void r0_parallel(benchmark::State& st) { r0_batch(st, r0_values); }
void prcc_serial(benchmark::State& st) { prcc_batch(st, serial::prcc); }
void prcc_parallel(benchmark::State& st) { prcc_batch(st, prcc); }
void strategies_serial(benchmark::State& st) { strategies(st, serial::solve_strategies); }
void strategies_parallel(benchmark::State& st) { strategies(st, solve_strategies); }

}  // namespace

BENCHMARK(scan_serial)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(scan_parallel)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(r0_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(r0_parallel)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(prcc_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(prcc_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(strategies_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(strategies_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
