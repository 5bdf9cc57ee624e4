#include "arbo/econ.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace arbo {

double cumulated_infectious(const StateTrajectory& traj) { return trapezoid(traj.component(Ih), traj.grid.dt()); }

double efficiency_index(double controlled, double baseline) {
    if (!(baseline > 0)) throw Error(ErrorKind::numeric, "efficiency index needs a positive baseline area");
    return (1 - controlled / baseline) * 100;
}

double control_cost(const ControlTrajectory& u, const ObjectiveWeights& w) {
    std::vector<double> g(u.values.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = 0;
        for (int k = 0; k < kControls; ++k) g[i] += w.B[k] * u.values[i][k] * u.values[i][k];
    }
    return trapezoid(g, u.grid.dt());
}

StrategyReport strategy_report(const SweepResult& r, double baseline_area, const ObjectiveWeights& w,
                               CostMode mode) {
    StrategyReport s;
    s.strategy = r.strategy;
    s.cumulated_Ih = cumulated_infectious(r.states);
    s.efficiency_percent = efficiency_index(s.cumulated_Ih, baseline_area);
    s.total_cost = mode == CostMode::objective ? r.objective_J : control_cost(r.controls, w);
    s.infections_averted = baseline_area - s.cumulated_Ih;
    return s;
}

const char* to_string(IcerStatus s) {
    switch (s) {
        case IcerStatus::kept: return "kept";
        case IcerStatus::dominated: return "dominated";
        case IcerStatus::equivalent: return "equivalent";
    }
    return "kept";
}

IcerTable icer_analysis(const std::vector<StrategyReport>& reports) {
    if (reports.size() < 2) throw Error(ErrorKind::invalid_params, "ICER analysis needs at least two strategies");
    for (const auto& r : reports)
        if (!(r.infections_averted > 0) || !std::isfinite(r.total_cost))
            throw Error(ErrorKind::invalid_params, "strategy '" + r.strategy + "' needs averted > 0 and a finite cost");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    IcerTable t;
    for (const auto& r : reports) t.rows.push_back({r.strategy, r.infections_averted, r.total_cost, nan, IcerStatus::kept, {}});
    std::stable_sort(t.rows.begin(), t.rows.end(),
                     [](const IcerRow& a, const IcerRow& b) { return a.averted < b.averted; });

    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].status != IcerStatus::kept) continue;
        for (std::size_t j = i + 1; j < t.rows.size(); ++j)
            if (t.rows[j].status == IcerStatus::kept && t.rows[j].averted == t.rows[i].averted &&
                t.rows[j].cost == t.rows[i].cost) {
                t.rows[j].status = IcerStatus::equivalent;
                t.rows[j].equivalent_to = t.rows[i].strategy;
            }
    }

    for (int pass = 1;; ++pass) {
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            if (t.rows[i].status == IcerStatus::kept) live.push_back(i);
        if (live.empty()) break;

        auto& first = t.rows[live[0]];
        first.icer = first.cost / first.averted;
        t.comparisons.push_back({pass, first.strategy, "", first.icer});
        std::ptrdiff_t remove = -1;
        for (std::size_t k = 1; k < live.size(); ++k) {
            auto& prev = t.rows[live[k - 1]];
            auto& cur = t.rows[live[k]];
            const double dc = cur.cost - prev.cost, de = cur.averted - prev.averted;
            if (de == 0) {
                // Same effect: the costlier one is dominated.
                cur.icer = nan;
                t.comparisons.push_back({pass, cur.strategy, prev.strategy, nan});
                if (remove < 0) remove = static_cast<std::ptrdiff_t>(cur.cost > prev.cost ? live[k] : live[k - 1]);
                continue;
            }
            cur.icer = dc / de;
            t.comparisons.push_back({pass, cur.strategy, prev.strategy, cur.icer});
            if (remove < 0 && cur.icer < 0) remove = static_cast<std::ptrdiff_t>(live[k - 1]);
        }
        if (remove < 0) break;
        t.rows[remove].status = IcerStatus::dominated;
        t.rows[remove].icer = nan;
        t.eliminated.push_back(t.rows[remove].strategy);
    }

    for (auto& r : t.rows)
        if (r.status == IcerStatus::equivalent)
            for (const auto& o : t.rows)
                if (o.strategy == r.equivalent_to) r.icer = o.icer;
    return t;
}

}  // namespace arbo
