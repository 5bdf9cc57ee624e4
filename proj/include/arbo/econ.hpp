#pragma once

#include <string>
#include <vector>

#include "arbo/control.hpp"

namespace arbo {

// Trapezoid integral of I_h over the trajectory grid (person-days).
double cumulated_infectious(const StateTrajectory& traj);

// (1 - controlled / baseline) * 100; numeric error when baseline <= 0.
double efficiency_index(double controlled, double baseline);

struct StrategyReport {
    std::string strategy;
    double cumulated_Ih = 0;
    double efficiency_percent = 0;
    double total_cost = 0;
    double infections_averted = 0;
};

enum class CostMode { objective, control_only };

// Integral of sum B_i u_i^2 only.
double control_cost(const ControlTrajectory& u, const ObjectiveWeights& w);

StrategyReport strategy_report(const SweepResult& r, double baseline_area, const ObjectiveWeights& w,
                               CostMode mode = CostMode::objective);

enum class IcerStatus { kept, dominated, equivalent };
const char* to_string(IcerStatus s);

struct IcerRow {
    std::string strategy;
    double averted = 0;
    double cost = 0;
    double icer = 0;  // against the previous kept row (or against nothing for the first); NaN once removed
    IcerStatus status = IcerStatus::kept;
    std::string equivalent_to;
};

struct IcerComparison {
    int pass = 0;
    std::string strategy;
    std::string against;  // empty for the first row of a pass
    double icer = 0;
};

struct IcerTable {
    std::vector<IcerRow> rows;  // ascending averted
    std::vector<IcerComparison> comparisons;
    std::vector<std::string> eliminated;  // in elimination order
};

IcerTable icer_analysis(const std::vector<StrategyReport>& reports);

}  // namespace arbo
