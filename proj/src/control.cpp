#include "arbo/control.hpp"

#include <algorithm>
#include <cmath>

namespace arbo {

void validate(const ObjectiveWeights& w) {
    bool ok = w.D1 > 0 && w.D2 > 0 && w.D3 > 0 && w.D4 > 0;
    for (double b : w.B) ok = ok && b > 0;
    if (!ok) throw Error(ErrorKind::invalid_params, "objective weights D1..D4, B1..B5 must be > 0");
}

const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> n = {"Z1", "Z2", "Z3", "Z4", "Z"};
    return n;
}

StrategyMask strategy(const std::string& name) {
    StrategyMask m;
    m.name = name;
    if (name == "Z1")
        m.active = {true, true, true, true, false};
    else if (name == "Z2")
        m.active = {true, true, true, false, true};
    else if (name == "Z3")
        m.active = {true, false, true, true, true};
    else if (name == "Z4")
        m.active = {true, true, false, true, true};
    else if (name == "Z")
        m.active = {true, true, true, true, true};
    else if (name == "none")
        m.active = {false, false, false, false, false};
    else
        throw Error(ErrorKind::parse, "unknown strategy '" + name + "'");
    return m;
}

double running_cost(const State& x, const Controls& u, const ObjectiveWeights& w) {
    double r = w.D1 * x[Ih] + w.D2 * vector_total(x) + w.D3 * x[Egg] + w.D4 * x[Lar];
    for (int i = 0; i < kControls; ++i) r += w.B[i] * u[i] * u[i];
    return r;
}

double objective(const StateTrajectory& states, const ControlTrajectory& controls, const ObjectiveWeights& w) {
    if (states.values.size() != controls.values.size() || states.grid.n_steps != controls.grid.n_steps)
        throw Error(ErrorKind::invalid_params, "state and control trajectories are on different grids");
    std::vector<double> g(states.values.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = running_cost(states.values[i], controls.values[i], w);
    return trapezoid(g, states.grid.dt());
}

double hamiltonian(const State& x, const Controls& u, const State& adj, const ModelParams& p,
                   const ControlParams& c, const ObjectiveWeights& w) {
    State f = controlled_field(x, u, p, c);
    double h = running_cost(x, u, w);
    for (int i = 0; i < kStates; ++i) h += adj[i] * f[i];
    return h;
}

State adjoint_field(const State& x, const Controls& u, const State& l, const ModelParams& p,
                    const ControlParams& c, const ObjectiveWeights& w) {
    const double nh = checked_human_total(x);
    const double lh = foi_h(x, p), lv = foi_v(x, p);
    const double prot = 1 - c.alpha1 * u[1];
    const double muv = p.mu_v + c.c_m * u[3];
    const double egg_sat = p.mu_b * (1 - x[Egg] / p.Gamma_E);
    const double sh_n = x[Sh] / nh, sv_n = x[Sv] / nh;
    const double human_inf = prot * sh_n * lh * (l[Eh] - l[Sh]);
    const double vec_inf = prot * sv_n * lv * (l[Ev] - l[Sv]);
    State d;
    d[Sh] = p.mu_h * l[Sh] + u[0] * (l[Sh] - l[Rh]) + prot * lh * (1 - sh_n) * (l[Sh] - l[Eh]) + vec_inf;
    d[Eh] = p.mu_h * l[Eh] + p.gamma_h * (l[Eh] - l[Ih]) + human_inf +
            prot * sv_n * (p.a * p.beta_vh * p.eta_h - lv) * (l[Sv] - l[Ev]);
    d[Ih] = -w.D1 + (p.mu_h + (1 - c.alpha2 * u[2]) * p.delta) * l[Ih] +
            (p.sigma + c.alpha2 * u[2]) * (l[Ih] - l[Rh]) + human_inf +
            prot * sv_n * (p.a * p.beta_vh - lv) * (l[Sv] - l[Ev]);
    d[Rh] = p.mu_h * l[Rh] + c.omega * u[0] * (l[Rh] - l[Sh]) + human_inf + vec_inf;
    d[Sv] = -w.D2 + muv * l[Sv] + prot * lv * (l[Sv] - l[Ev]) - egg_sat * l[Egg];
    d[Ev] = -w.D2 + muv * l[Ev] + p.gamma_v * (l[Ev] - l[Iv]) +
            p.a * p.eta_v * p.beta_hv * prot * (l[Sh] - l[Eh]) * sh_n - egg_sat * l[Egg];
    d[Iv] = -w.D2 + muv * l[Iv] + p.a * p.beta_hv * prot * sh_n * (l[Sh] - l[Eh]) - egg_sat * l[Egg];
    d[Egg] = -w.D3 + (p.mu_b / p.Gamma_E * vector_total(x) + p.s + p.mu_E + c.eta1 * u[4]) * l[Egg] -
             p.s * (1 - x[Lar] / p.Gamma_L) * l[Lar];
    d[Lar] = -w.D4 - p.l * l[Pup] + (p.s / p.Gamma_L * x[Egg] + p.mu_L + p.l + c.eta2 * u[4]) * l[Lar];
    d[Pup] = (p.mu_P + p.theta) * l[Pup] - p.theta * l[Sv];
    return d;
}

Controls unclamped_controls(const State& x, const State& l, const ModelParams& p, const ControlParams& c,
                            const ObjectiveWeights& w) {
    const double lh = foi_h(x, p), lv = foi_v(x, p);
    Controls u;
    u[0] = (x[Sh] - c.omega * x[Rh]) * (l[Sh] - l[Rh]) / (2 * w.B[0]);
    u[1] = c.alpha1 * (lh * x[Sh] * (l[Eh] - l[Sh]) + lv * x[Sv] * (l[Ev] - l[Sv])) / (2 * w.B[1]);
    u[2] = c.alpha2 * ((1 - p.delta) * l[Ih] - l[Rh]) * x[Ih] / (2 * w.B[2]);
    u[3] = c.c_m * (x[Sv] * l[Sv] + x[Ev] * l[Ev] + x[Iv] * l[Iv]) / (2 * w.B[3]);
    u[4] = (c.eta1 * x[Egg] * l[Egg] + c.eta2 * x[Lar] * l[Lar]) / (2 * w.B[4]);
    return u;
}

namespace {

Controls clamp_mask(Controls u, const StrategyMask& mask) {
    for (int i = 0; i < kControls; ++i) u[i] = mask.active[i] ? std::clamp(u[i], 0.0, 1.0) : 0.0;
    return u;
}

template <std::size_t N>
double relative_change(const Trajectory<N>& now, const Trajectory<N>& before) {
    double diff = 0, mag = 0;
    for (std::size_t i = 0; i < now.values.size(); ++i)
        for (std::size_t k = 0; k < N; ++k) {
            diff = std::max(diff, std::abs(now.values[i][k] - before.values[i][k]));
            mag = std::max(mag, std::abs(now.values[i][k]));
        }
    return mag > 0 ? diff / mag : diff;
}

StateTrajectory adjoint_sweep(const ControlProblem& pr, const StateTrajectory& x, const ControlTrajectory& u) {
    State terminal{};
    return rk4_backward(
        [&](double t, const State& l) {
            return adjoint_field(x.at(t), u.at(t), l, pr.params, pr.controls, pr.weights);
        },
        terminal, pr.grid);
}

}  // namespace

Controls characterize_controls(const State& x, const State& adj, const ModelParams& p, const ControlParams& c,
                               const ObjectiveWeights& w, const StrategyMask& mask) {
    return clamp_mask(unclamped_controls(x, adj, p, c, w), mask);
}

StateTrajectory simulate_controlled(const ModelParams& p, const ControlParams& c, const State& x0,
                                    const ControlTrajectory& u) {
    return rk4_forward([&](double t, const State& x) { return controlled_field(x, u.at(t), p, c); }, x0, u.grid);
}

StateTrajectory simulate_basic(const ModelParams& p, const State& x0, const TimeGrid& grid) {
    return rk4_forward([&](double, const State& x) { return basic_field(x, p); }, x0, grid);
}

ControlTrajectory zero_controls(const TimeGrid& grid) {
    ControlTrajectory u{grid, {}};
    u.values.assign(grid.n_steps + 1, Controls{});
    return u;
}

ControlProblem default_control_problem() {
    ControlProblem pr;
    pr.x0 = {700, 220, 100, 60, 3000, 400, 120, 10000, 5000, 3000};
    pr.grid = TimeGrid::with_step(0.0, 20.0, 0.01);
    return pr;
}

SweepResult forward_backward_sweep(const ControlProblem& pr, const StrategyMask& mask) {
    validate(pr.params);
    validate(pr.controls);
    validate(pr.weights);
    const auto& opt = pr.options;
    if (!(opt.mix > 0 && opt.mix <= 1) || opt.max_iters < 1 || !(opt.tol > 0))
        throw Error(ErrorKind::invalid_params, "sweep needs 0 < mix <= 1, tol > 0, max_iters >= 1");

    SweepResult r;
    r.strategy = mask.name;
    ControlTrajectory u = zero_controls(pr.grid);
    Controls guess;
    guess.fill(opt.initial_guess);
    guess = clamp_mask(guess, mask);
    for (auto& v : u.values) v = guess;

    StateTrajectory prev;
    double last_dc = 1;
    for (int it = 1; it <= opt.max_iters; ++it) {
        StateTrajectory x = simulate_controlled(pr.params, pr.controls, pr.x0, u);
        StateTrajectory adj = adjoint_sweep(pr, x, u);
        ControlTrajectory next = u;
        for (std::size_t i = 0; i < next.values.size(); ++i) {
            Controls uc = characterize_controls(x.values[i], adj.values[i], pr.params, pr.controls, pr.weights, mask);
            for (int k = 0; k < kControls; ++k) next.values[i][k] = opt.mix * uc[k] + (1 - opt.mix) * u.values[i][k];
            next.values[i] = clamp_mask(next.values[i], mask);
        }
        const double dc = relative_change(next, u);
        const double ds = it == 1 ? 0.0 : relative_change(x, prev);
        r.log.push_back({objective(x, u, pr.weights), dc, ds});
        r.iterations = it;
        last_dc = dc;
        u = std::move(next);
        prev = std::move(x);
        if (dc <= opt.tol && ds <= opt.tol) {
            r.converged = true;
            break;
        }
    }
    r.suspect = !r.converged && last_dc <= opt.tol;
    r.controls = std::move(u);
    r.states = simulate_controlled(pr.params, pr.controls, pr.x0, r.controls);
    r.adjoints = adjoint_sweep(pr, r.states, r.controls);
    r.objective_J = objective(r.states, r.controls, pr.weights);
    return r;
}

std::vector<SweepResult> solve_strategies(const ControlProblem& pr, const std::vector<StrategyMask>& masks) {
    std::vector<SweepResult> out(masks.size());
    const int n = static_cast<int>(masks.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) out[i] = forward_backward_sweep(pr, masks[i]);
    return out;
}

namespace serial {

std::vector<SweepResult> solve_strategies(const ControlProblem& pr, const std::vector<StrategyMask>& masks) {
    std::vector<SweepResult> out;
    for (const auto& m : masks) out.push_back(forward_backward_sweep(pr, m));
    return out;
}

}  // namespace serial

}  // namespace arbo
