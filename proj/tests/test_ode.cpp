#include <doctest.h>

#include <cmath>

#include "arbo/ode.hpp"

using namespace arbo;

namespace {

double rk4_error(int n) {
    // x' = -2 t x, x(0) = 1, exact exp(-t^2)
    TimeGrid g{0.0, 2.0, n};
    auto tr = rk4_forward([](double t, const std::array<double, 1>& x) { return std::array<double, 1>{-2 * t * x[0]}; },
                          std::array<double, 1>{1.0}, g);
    return std::abs(tr.values.back()[0] - std::exp(-4.0));
}

}  // namespace

TEST_CASE("rk4 is fourth order on an analytic solution") {
    double prev = rk4_error(20);
    for (int n : {40, 80, 160}) {
        double e = rk4_error(n);
        double order = std::log2(prev / e);
        CHECK(order > 3.8);
        CHECK(order < 4.3);
        prev = e;
    }
}

TEST_CASE("rk4 forward integrates a time-dependent field") {
    TimeGrid g{0.0, 3.0, 300};
    auto tr = rk4_forward([](double t, const std::array<double, 2>& x) {
        return std::array<double, 2>{std::cos(t), -x[1]};
    }, std::array<double, 2>{0.0, 1.0}, g);
    CHECK(tr.values.back()[0] == doctest::Approx(std::sin(3.0)).epsilon(1e-9));
    CHECK(tr.values.back()[1] == doctest::Approx(std::exp(-3.0)).epsilon(1e-9));
}

TEST_CASE("rk4 backward runs from the terminal value") {
    TimeGrid g{0.0, 1.0, 100};
    auto tr = rk4_backward([](double, const std::array<double, 1>& x) { return x; }, std::array<double, 1>{std::exp(1.0)}, g);
    CHECK(tr.values.back()[0] == std::exp(1.0));
    CHECK(tr.values.front()[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("non-finite state raises a numeric error") {
    TimeGrid g{0.0, 1.0, 10};
    auto f = [](double, const std::array<double, 1>& x) { return std::array<double, 1>{x[0] * x[0] * 1e300}; };
    try {
        rk4_forward(f, std::array<double, 1>{1e10}, g);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::numeric);
    }
}

TEST_CASE("trajectory interpolation is linear between nodes and clamped outside") {
    Trajectory<1> tr{TimeGrid{0.0, 1.0, 2}, {{0.0}, {1.0}, {4.0}}};
    CHECK(tr.at(0.25)[0] == doctest::Approx(0.5));
    CHECK(tr.at(0.75)[0] == doctest::Approx(2.5));
    CHECK(tr.at(-1)[0] == 0.0);
    CHECK(tr.at(2)[0] == 4.0);
    CHECK(tr.at(1.0)[0] == 4.0);
}

TEST_CASE("trapezoid rule") {
    std::vector<double> c(11, 3.0);
    CHECK(trapezoid(c, 0.2) == doctest::Approx(6.0));
    std::vector<double> lin;
    for (int i = 0; i <= 10; ++i) lin.push_back(i * 0.1);
    CHECK(trapezoid(lin, 0.1) == doctest::Approx(0.5));
    CHECK(trapezoid(std::vector<double>(5, 0.0), 1.0) == 0.0);
}

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(TimeGrid::with_step(0, -1, 0.1), Error);
    CHECK_THROWS_AS((TimeGrid{0, 1, 0}.validate()), Error);
    auto g = TimeGrid::with_step(0, 20, 0.01);
    CHECK(g.n_steps == 2000);
}
