#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arbo/model.hpp"

namespace arbo {

struct ParamRange {
    std::string name;
    double lo = 0, hi = 0;
};

// Parameters without a range keep their value from `base`.
struct ParamDistribution {
    ModelParams base;
    std::vector<ParamRange> ranges;
};

void validate(const ParamDistribution& d);

// Listed pairs and ranges as [min, max], single values +-20%, eta in [0, 1).
ParamDistribution default_distribution();
// Every parameter fixed at p.
ParamDistribution degenerate_distribution(const ModelParams& p);
// JSON object {"name": [lo, hi], ...}; unlisted parameters stay at base.
ParamDistribution distribution_from_json(const std::string& text, const ModelParams& base = {});

// Uniform draws built directly on mt19937_64 bits, so streams are identical
// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();
    std::uint64_t below(std::uint64_t n);  // uniform integer in [0, n)

private:
    std::mt19937_64 eng_;
};

// One draw per stratum, strata permuted independently per parameter.
std::vector<ModelParams> lhs_sample(const ParamDistribution& d, int n, std::uint64_t seed);

// R0 per draw (0 when N <= 1).
std::vector<double> r0_values(const std::vector<ModelParams>& samples);

namespace serial {
std::vector<double> r0_values(const std::vector<ModelParams>& samples);
}

struct HistogramBin {
    double lo, hi;
    long count;
};

struct R0Distribution {
    int n = 0;
    double mean = 0, std = 0;  // std with n - 1
    double p_ge_1 = 0;
    int n_undefined = 0;  // draws with N <= 1
    std::vector<HistogramBin> histogram;
};

constexpr int kHistogramBins = 50;

R0Distribution r0_distribution(const std::vector<double>& r0, const std::vector<ModelParams>& samples,
                               int bins = kHistogramBins);

struct ConditionProbabilities {
    int n = 0;
    double p_n_le_1 = 0;      // trivial equilibrium only
    double p_n_gt_1 = 0;
    double p_two_endemic = 0;  // N > 1, R0 < 1, first two-root condition
    double p_unique_boundary = 0;  // N > 1, R0 < 1, double-root condition
    double p_no_endemic = 0;   // N > 1, R0 < 1, neither
    double p_r0_lt_1 = 0;      // N > 1 and R0 < 1
    double p_r0_ge_1 = 0;      // N > 1 and R0 >= 1
};

ConditionProbabilities condition_probabilities(const std::vector<ModelParams>& samples);

// Average ranks (1-based), ties share the mean rank.
std::vector<double> average_ranks(const std::vector<double>& x);

struct PrccEntry {
    std::string parameter;
    double prcc;
};

struct PrccReport {
    std::vector<PrccEntry> entries;
    int n = 0;
    std::uint64_t seed = 0;
};

// columns[j] holds parameter j over all samples; throws numeric when a
// column is constant (leave degenerate parameters out).
PrccReport prcc(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns,
                const std::vector<double>& output);

namespace serial {
PrccReport prcc(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns,
                const std::vector<double>& output);
}

// Columns of the non-degenerate ranged parameters.
void sample_columns(const ParamDistribution& d, const std::vector<ModelParams>& samples,
                    std::vector<std::string>& names, std::vector<std::vector<double>>& columns);

}  // namespace arbo
