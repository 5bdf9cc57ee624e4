#include "arbo/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <json.hpp>

#include "arbo/equilibria.hpp"
#include "arbo/thresholds.hpp"

namespace arbo {

namespace {

ParamRange plus_minus_20(const std::string& name, double v) { return {name, 0.8 * v, 1.2 * v}; }

double below_hi(double v, double lo, double hi) {
    if (hi > lo && v >= hi) return std::nextafter(hi, lo);
    return v;
}

}  // namespace

void validate(const ParamDistribution& d) {
    validate(d.base);
    for (const auto& r : d.ranges) {
        if (!is_param_name(r.name)) throw Error(ErrorKind::parse, "unknown parameter '" + r.name + "' in distribution");
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
            throw Error(ErrorKind::invalid_params, "invalid range for '" + r.name + "'");
        for (double v : {r.lo, below_hi(r.hi, r.lo, r.hi)}) {
            ModelParams p = d.base;
            param_ref(p, r.name) = v;
            auto bad = violations(p);
            if (!bad.empty())
                throw Error(ErrorKind::invalid_params, "range of '" + r.name + "' leaves the valid set: " + bad.front());
        }
    }
}

ParamDistribution default_distribution() {
    ParamDistribution d;
    d.base.mu_h = 1.0 / (67 * 365);
    d.ranges = {
        plus_minus_20("Lambda_h", 2.5),
        plus_minus_20("mu_h", 1.0 / (67 * 365)),
        plus_minus_20("a", 1.0),
        {"beta_hv", 0.1, 0.75},
        {"beta_vh", 0.1, 0.75},
        {"gamma_h", 1.0 / 15, 1.0 / 3},
        plus_minus_20("delta", 1e-3),
        plus_minus_20("sigma", 0.1428),
        {"eta_h", 0.0, 1.0},
        {"eta_v", 0.0, 1.0},
        {"mu_v", 1.0 / 30, 1.0 / 14},
        {"gamma_v", 1.0 / 21, 1.0 / 2},
        plus_minus_20("theta", 0.08),
        plus_minus_20("mu_b", 6.0),
        {"Gamma_E", 1e3, 1e6},
        {"Gamma_L", 5e2, 5e5},
        {"mu_E", 0.2, 0.4},
        {"mu_L", 0.2, 0.4},
        plus_minus_20("mu_P", 0.4),
        plus_minus_20("s", 0.7),
        plus_minus_20("l", 0.5),
    };
    return d;
}

ParamDistribution degenerate_distribution(const ModelParams& p) {
    ParamDistribution d;
    d.base = p;
    for (const auto& n : param_names()) {
        double v = param_value(p, n);
        d.ranges.push_back({n, v, v});
    }
    return d;
}

ParamDistribution distribution_from_json(const std::string& text, const ModelParams& base) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("distribution file: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::parse, "distribution file must be an object of name: [lo, hi]");
    ParamDistribution d;
    d.base = base;
    for (const auto& name : param_names()) {
        if (!j.contains(name)) continue;
        const auto& r = j.at(name);
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
            throw Error(ErrorKind::parse, "distribution entry '" + name + "' must be [lo, hi]");
        d.ranges.push_back({name, r[0].get<double>(), r[1].get<double>()});
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!is_param_name(it.key())) throw Error(ErrorKind::parse, "unknown parameter '" + it.key() + "' in distribution");
    validate(d);
    return d;
}

Rng::Rng(std::uint64_t seed) : eng_(seed) {}

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
}

std::vector<ModelParams> lhs_sample(const ParamDistribution& d, int n, std::uint64_t seed) {
    if (n < 2) throw Error(ErrorKind::invalid_params, "lhs_sample needs n >= 2");
    validate(d);
    Rng rng(seed);
    std::vector<ModelParams> out(n, d.base);
    std::vector<int> perm(n);
    for (const auto& r : d.ranges) {
        if (r.lo == r.hi) {
            for (auto& p : out) param_ref(p, r.name) = r.lo;
            continue;
        }
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        for (int i = 0; i < n; ++i) {
            double v = r.lo + (perm[i] + rng.uniform()) / n * (r.hi - r.lo);
            param_ref(out[i], r.name) = below_hi(v, r.lo, r.hi);
        }
    }
    return out;
}

std::vector<double> r0_values(const std::vector<ModelParams>& samples) {
    const int n = static_cast<int>(samples.size());
    std::vector<double> r(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) r[i] = basic_reproduction_number(samples[i]);
    return r;
}

namespace serial {

std::vector<double> r0_values(const std::vector<ModelParams>& samples) {
    std::vector<double> r;
    r.reserve(samples.size());
    for (const auto& p : samples) r.push_back(basic_reproduction_number(p));
    return r;
}

}  // namespace serial

R0Distribution r0_distribution(const std::vector<double>& r0, const std::vector<ModelParams>& samples, int bins) {
    if (r0.size() != samples.size() || r0.empty())
        throw Error(ErrorKind::invalid_params, "r0_distribution needs one R0 per sample");
    if (bins < 1) throw Error(ErrorKind::invalid_params, "histogram needs at least one bin");
    R0Distribution d;
    d.n = static_cast<int>(r0.size());
    // Shifted by the first value so a constant sample has exactly zero spread.
    const double k = r0.front();
    double sum = 0, top = 0;
    for (std::size_t i = 0; i < r0.size(); ++i) {
        sum += r0[i] - k;
        top = std::max(top, r0[i]);
        if (r0[i] >= 1) d.p_ge_1 += 1;
        if (!(net_reproductive_number(samples[i]) > 1)) ++d.n_undefined;
    }
    const double shifted_mean = sum / d.n;
    d.mean = k + shifted_mean;
    double ss = 0;
    for (double v : r0) ss += (v - k - shifted_mean) * (v - k - shifted_mean);
    d.std = d.n > 1 ? std::sqrt(ss / (d.n - 1)) : 0.0;
    d.p_ge_1 /= d.n;

    const double w = top / bins;
    for (int b = 0; b < bins; ++b) d.histogram.push_back({b * w, (b + 1) * w, 0});
    for (double v : r0) {
        int b = w > 0 ? static_cast<int>(v / w) : 0;
        d.histogram[std::clamp(b, 0, bins - 1)].count++;
    }
    return d;
}

ConditionProbabilities condition_probabilities(const std::vector<ModelParams>& samples) {
    ConditionProbabilities c;
    c.n = static_cast<int>(samples.size());
    if (c.n == 0) return c;
    for (const auto& p : samples) {
        auto label = theorem_classification(p).second;
        if (label == "N<=1") {
            c.p_n_le_1 += 1;
            continue;
        }
        c.p_n_gt_1 += 1;
        if (basic_reproduction_number(p) >= 1) {
            c.p_r0_ge_1 += 1;
            continue;
        }
        c.p_r0_lt_1 += 1;
        if (label == "iii-a")
            c.p_two_endemic += 1;
        else if (label == "iii-b")
            c.p_unique_boundary += 1;
        else
            c.p_no_endemic += 1;
    }
    for (double* v : {&c.p_n_le_1, &c.p_n_gt_1, &c.p_two_endemic, &c.p_unique_boundary, &c.p_no_endemic,
                      &c.p_r0_lt_1, &c.p_r0_ge_1})
        *v /= c.n;
    return c;
}

std::vector<double> average_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double avg = 0.5 * (i + j) + 1;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

namespace {

struct RankData {
    Eigen::MatrixXd X;  // standardized parameter ranks
    Eigen::VectorXd y;  // standardized output ranks
};

Eigen::VectorXd standardized_ranks(const std::vector<double>& v, const std::string& name) {
    auto r = average_ranks(v);
    Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(r.data(), r.size());
    e.array() -= e.mean();
    const double norm = e.norm();
    if (!(norm > 0)) throw Error(ErrorKind::numeric, "PRCC column '" + name + "' is constant; singular regression");
    return e / norm;
}

RankData prepare(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns,
                 const std::vector<double>& output) {
    const std::size_t n = output.size();
    if (names.size() != columns.size()) throw Error(ErrorKind::invalid_params, "PRCC names and columns differ in count");
    if (n <= columns.size() + 2)
        throw Error(ErrorKind::invalid_params, "PRCC needs more samples than parameters + 2");
    RankData d;
    d.X.resize(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != n) throw Error(ErrorKind::invalid_params, "PRCC column length mismatch");
        d.X.col(j) = standardized_ranks(columns[j], names[j]);
    }
    d.y = standardized_ranks(output, "output");
    return d;
}

double prcc_column(const RankData& d, int j) {
    const Eigen::Index n = d.X.rows(), m = d.X.cols();
    Eigen::MatrixXd Z(n, m);
    Z.col(0).setOnes();
    for (Eigen::Index k = 0, c = 1; k < m; ++k)
        if (k != j) Z.col(c++) = d.X.col(k);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
    if (qr.rank() < m) throw Error(ErrorKind::numeric, "PRCC regression is singular");
    Eigen::VectorXd rx = d.X.col(j) - Z * qr.solve(Eigen::VectorXd(d.X.col(j)));
    Eigen::VectorXd ry = d.y - Z * qr.solve(d.y);
    const double den = rx.norm() * ry.norm();
    if (!(den > 0)) throw Error(ErrorKind::numeric, "PRCC residual vanishes");
    return std::clamp(rx.dot(ry) / den, -1.0, 1.0);
}

}  // namespace

PrccReport prcc(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns,
                const std::vector<double>& output) {
    RankData d = prepare(names, columns, output);
    const int m = static_cast<int>(names.size());
    std::vector<double> v(m);
    bool failed = false;
    std::string msg;
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < m; ++j) {
        try {
            v[j] = prcc_column(d, j);
        } catch (const Error& e) {
#pragma omp critical
            {
                failed = true;
                msg = e.what();
            }
        }
    }
    if (failed) throw Error(ErrorKind::numeric, msg);
    PrccReport r;
    r.n = static_cast<int>(output.size());
    for (int j = 0; j < m; ++j) r.entries.push_back({names[j], v[j]});
    return r;
}

namespace serial {

PrccReport prcc(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns,
                const std::vector<double>& output) {
    RankData d = prepare(names, columns, output);
    PrccReport r;
    r.n = static_cast<int>(output.size());
    for (int j = 0; j < static_cast<int>(names.size()); ++j) r.entries.push_back({names[j], prcc_column(d, j)});
    return r;
}

}  // namespace serial

void sample_columns(const ParamDistribution& d, const std::vector<ModelParams>& samples,
                    std::vector<std::string>& names, std::vector<std::vector<double>>& columns) {
    names.clear();
    columns.clear();
    for (const auto& r : d.ranges) {
        if (r.lo == r.hi) continue;
        names.push_back(r.name);
        std::vector<double> c;
        c.reserve(samples.size());
        for (const auto& p : samples) c.push_back(param_value(p, r.name));
        columns.push_back(std::move(c));
    }
}

}  // namespace arbo
