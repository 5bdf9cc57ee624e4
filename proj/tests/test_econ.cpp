#include <doctest.h>

#include "arbo/control.hpp"
#include "arbo/econ.hpp"

using namespace arbo;

namespace {

StrategyReport row(const std::string& n, double averted, double cost) {
    StrategyReport r;
    r.strategy = n;
    r.infections_averted = averted;
    r.total_cost = cost;
    return r;
}

std::vector<StrategyReport> printed_table() {
    return {row("Z4", 87538, 7.6218e8), row("Z3", 88796, 7.6093e8), row("Z2", 88848, 1.6452e9),
            row("Z1", 88886, 7.6081e8), row("Z", 88886, 7.6081e8)};
}

double icer_of(const IcerTable& t, int pass, const std::string& s, const std::string& against) {
    for (const auto& c : t.comparisons)
        if (c.pass == pass && c.strategy == s && c.against == against) return c.icer;
    FAIL("missing comparison " << s << " vs " << against);
    return 0;
}

}  // namespace

TEST_CASE("ICER on the printed strategy table") {
    auto t = icer_analysis(printed_table());
    CHECK(icer_of(t, 1, "Z4", "") == doctest::Approx(8706.8473).epsilon(1e-4));
    CHECK(icer_of(t, 1, "Z3", "Z4") == doctest::Approx(-993.6407).epsilon(1e-4));
    CHECK(icer_of(t, 2, "Z3", "") == doctest::Approx(8569.4175).epsilon(1e-4));
    CHECK(icer_of(t, 2, "Z2", "Z3") == doctest::Approx(17005192).epsilon(1e-4));
    CHECK(icer_of(t, 3, "Z1", "Z3") == doctest::Approx(-1333.3333).epsilon(1e-4));
    CHECK(t.eliminated == std::vector<std::string>{"Z4", "Z2", "Z3"});
    for (const auto& r : t.rows) {
        if (r.strategy == "Z") {
            CHECK(r.status == IcerStatus::equivalent);
            CHECK(r.equivalent_to == "Z1");
        }
        if (r.strategy == "Z1") CHECK(r.status == IcerStatus::kept);
    }
}

TEST_CASE("identical strategies are equivalent and nothing is eliminated") {
    auto t = icer_analysis({row("A", 10, 100), row("B", 10, 100)});
    CHECK(t.eliminated.empty());
    CHECK(t.rows[1].status == IcerStatus::equivalent);
    CHECK(t.rows[1].icer == t.rows[0].icer);
}

TEST_CASE("cheaper and more effective rival eliminates in one step") {
    auto t = icer_analysis({row("A", 10, 200), row("B", 20, 100)});
    CHECK(t.eliminated == std::vector<std::string>{"A"});
    CHECK(t.rows[0].status == IcerStatus::dominated);
}

TEST_CASE("equal effect with a higher cost is dominated") {
    auto t = icer_analysis({row("A", 10, 200), row("B", 10, 100)});
    CHECK(t.eliminated == std::vector<std::string>{"A"});
}

TEST_CASE("elimination terminates within n - 1 steps") {
    std::vector<StrategyReport> rs;
    for (int i = 0; i < 8; ++i) rs.push_back(row("S" + std::to_string(i), 10 + i, 1000 - 100 * i));
    auto t = icer_analysis(rs);
    CHECK(t.eliminated.size() == 7);
    CHECK_THROWS_AS(icer_analysis({row("A", 1, 1)}), Error);
    CHECK_THROWS_AS(icer_analysis({row("A", 0, 1), row("B", 1, 1)}), Error);
}

TEST_CASE("efficiency index") {
    CHECK(efficiency_index(50, 50) == 0.0);
    CHECK(efficiency_index(0, 50) == 100.0);
    CHECK(efficiency_index(10, 50) > efficiency_index(20, 50));
    CHECK_THROWS_AS(efficiency_index(1, 0), Error);
}

TEST_CASE("cumulated infectious") {
    TimeGrid g{0.0, 20.0, 200};
    StateTrajectory tr{g, std::vector<State>(201, State{})};
    CHECK(cumulated_infectious(tr) == 0.0);
    for (auto& x : tr.values) x[Ih] = 3.0;
    CHECK(cumulated_infectious(tr) == doctest::Approx(60.0));
}

TEST_CASE("no-control area and strategy efficiencies") {
    auto pr = default_control_problem();
    auto base = simulate_basic(pr.params, pr.x0, pr.grid);
    const double area = cumulated_infectious(base);
    CHECK(area == doctest::Approx(4105.2).epsilon(0.05));
    auto none = forward_backward_sweep(pr, strategy("none"));
    auto rep = strategy_report(none, area, pr.weights);
    CHECK(rep.efficiency_percent == doctest::Approx(0.0));
    CHECK(control_cost(none.controls, pr.weights) == 0.0);
}
