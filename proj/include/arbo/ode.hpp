#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "arbo/errors.hpp"

namespace arbo {

struct TimeGrid {
    double t0 = 0.0;
    double tf = 20.0;
    int n_steps = 2000;

    double dt() const { return (tf - t0) / n_steps; }
    double t(int i) const { return t0 + i * dt(); }

    static TimeGrid with_step(double t0, double tf, double dt);
    void validate() const;
};

template <std::size_t N>
struct Trajectory {
    TimeGrid grid;
    std::vector<std::array<double, N>> values;

    // Linear interpolation between grid nodes, clamped to [t0, tf].
    std::array<double, N> at(double t) const {
        const int n = grid.n_steps;
        double pos = (t - grid.t0) / grid.dt();
        if (pos <= 0) return values.front();
        if (pos >= n) return values.back();
        int i = static_cast<int>(pos);
        if (i >= n) i = n - 1;
        double w = pos - i;
        std::array<double, N> out;
        for (std::size_t k = 0; k < N; ++k) out[k] = (1 - w) * values[i][k] + w * values[i + 1][k];
        return out;
    }

    std::vector<double> component(std::size_t k) const {
        std::vector<double> out(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i][k];
        return out;
    }
};

namespace detail {

template <std::size_t N>
std::array<double, N> axpy(const std::array<double, N>& x, double h, const std::array<double, N>& k) {
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + h * k[i];
    return r;
}

template <std::size_t N>
void check_finite(const std::array<double, N>& x, int step) {
    for (double v : x)
        if (!std::isfinite(v))
            throw Error(ErrorKind::numeric, "non-finite value at step " + std::to_string(step));
}

template <std::size_t N, class F>
std::array<double, N> rk4_step(F& f, double t, const std::array<double, N>& x, double h) {
    auto k1 = f(t, x);
    auto k2 = f(t + h / 2, axpy(x, h / 2, k1));
    auto k3 = f(t + h / 2, axpy(x, h / 2, k2));
    auto k4 = f(t + h, axpy(x, h, k3));
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return r;
}

}  // namespace detail

// Classic RK4 from t0 to tf. f(t, x) returns dx/dt; time-dependent inputs
// (controls) are looked up by the field itself, normally through
// Trajectory::at, which gives the linear interpolant at half steps.
template <std::size_t N, class F>
Trajectory<N> rk4_forward(F&& f, const std::array<double, N>& x0, const TimeGrid& grid) {
    grid.validate();
    Trajectory<N> tr{grid, {}};
    tr.values.resize(grid.n_steps + 1);
    tr.values[0] = x0;
    detail::check_finite(x0, 0);
    const double h = grid.dt();
    for (int i = 0; i < grid.n_steps; ++i) {
        tr.values[i + 1] = detail::rk4_step<N>(f, grid.t(i), tr.values[i], h);
        detail::check_finite(tr.values[i + 1], i + 1);
    }
    return tr;
}

// RK4 from tf back to t0 starting at the terminal value.
template <std::size_t N, class F>
Trajectory<N> rk4_backward(F&& f, const std::array<double, N>& terminal, const TimeGrid& grid) {
    grid.validate();
    Trajectory<N> tr{grid, {}};
    const int n = grid.n_steps;
    tr.values.resize(n + 1);
    tr.values[n] = terminal;
    detail::check_finite(terminal, n);
    const double h = -grid.dt();
    for (int i = n; i > 0; --i) {
        tr.values[i - 1] = detail::rk4_step<N>(f, grid.t(i), tr.values[i], h);
        detail::check_finite(tr.values[i - 1], i - 1);
    }
    return tr;
}

inline TimeGrid TimeGrid::with_step(double t0, double tf, double dt) {
    TimeGrid g;
    g.t0 = t0;
    g.tf = tf;
    g.n_steps = static_cast<int>(std::lround((tf - t0) / dt));
    g.validate();
    return g;
}

inline void TimeGrid::validate() const {
    if (n_steps < 1 || !(tf > t0) || !std::isfinite(t0) || !std::isfinite(tf))
        throw Error(ErrorKind::invalid_params, "time grid needs tf > t0 and at least one step");
}

// Trapezoid rule over a uniform grid.
inline double trapezoid(const std::vector<double>& y, double dt) {
    if (y.size() < 2) return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return s * dt;
}

}  // namespace arbo
