#pragma once

#include <array>
#include <string>
#include <vector>

#include "arbo/model.hpp"
#include "arbo/ode.hpp"

namespace arbo {

struct ObjectiveWeights {
    double D1 = 10000, D2 = 10000, D3 = 5000, D4 = 1;
    std::array<double, kControls> B = {10, 10, 10, 10, 10};
};

void validate(const ObjectiveWeights& w);

struct StrategyMask {
    std::string name = "Z";
    std::array<bool, kControls> active = {true, true, true, true, true};
};

// Z1, Z2, Z3, Z4, Z, or "none" (all controls off).
StrategyMask strategy(const std::string& name);
const std::vector<std::string>& strategy_names();

using StateTrajectory = Trajectory<kStates>;
using ControlTrajectory = Trajectory<kControls>;

double running_cost(const State& x, const Controls& u, const ObjectiveWeights& w);
double objective(const StateTrajectory& states, const ControlTrajectory& controls, const ObjectiveWeights& w);

double hamiltonian(const State& x, const Controls& u, const State& adj, const ModelParams& p,
                   const ControlParams& c, const ObjectiveWeights& w);
// d(adj)/dt; in the formulas lambda_h, lambda_v are the forces of infection.
State adjoint_field(const State& x, const Controls& u, const State& adj, const ModelParams& p,
                    const ControlParams& c, const ObjectiveWeights& w);
Controls characterize_controls(const State& x, const State& adj, const ModelParams& p, const ControlParams& c,
                               const ObjectiveWeights& w, const StrategyMask& mask);
// Unclamped stationary point of H in each control (the argument of the clamp).
Controls unclamped_controls(const State& x, const State& adj, const ModelParams& p, const ControlParams& c,
                            const ObjectiveWeights& w);

StateTrajectory simulate_controlled(const ModelParams& p, const ControlParams& c, const State& x0,
                                    const ControlTrajectory& u);
StateTrajectory simulate_basic(const ModelParams& p, const State& x0, const TimeGrid& grid);
ControlTrajectory zero_controls(const TimeGrid& grid);

struct SweepOptions {
    double mix = 0.5;  // weight of the new characterization
    double tol = 1e-3;
    int max_iters = 200;
    double initial_guess = 0.0;
};

struct SweepIteration {
    double J;
    double control_change;  // relative sup norm
    double state_change;
};

struct SweepResult {
    std::string strategy;
    StateTrajectory states;
    StateTrajectory adjoints;
    ControlTrajectory controls;
    double objective_J = 0;
    int iterations = 0;
    bool converged = false;
    bool suspect = false;  // controls settled but states still moving
    std::vector<SweepIteration> log;
};

struct ControlProblem {
    ModelParams params;
    ControlParams controls;
    ObjectiveWeights weights;
    State x0{};
    TimeGrid grid;
    SweepOptions options;
};

// Reference control setting, dt = 0.01 over 20 days.
ControlProblem default_control_problem();

SweepResult forward_backward_sweep(const ControlProblem& prob, const StrategyMask& mask);

std::vector<SweepResult> solve_strategies(const ControlProblem& prob, const std::vector<StrategyMask>& masks);

namespace serial {
std::vector<SweepResult> solve_strategies(const ControlProblem& prob, const std::vector<StrategyMask>& masks);
}

}  // namespace arbo
