#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphcheck/tester.hpp"

using namespace graphcheck;
using namespace graphcheck::tester;

TEST_CASE("deterministic verdicts on the flagship pair") {
    const TestReport complete = test_completeness(complete_graph(16), 0, Mode::deterministic);
    CHECK(complete.verdict);
    CHECK(complete.stage_reached == Stage::qpe_completed);
    CHECK(complete.m_star == 10);
    CHECK(complete.t_star == 3);
    CHECK(complete.marked_set.m() == 10);
    REQUIRE(complete.p_bits);
    CHECK(*complete.p_bits == 10);
    REQUIRE(complete.theta2_reference);
    CHECK(*complete.theta2_reference == doctest::Approx(std::acos(14.0 / 15.0)));

    const Graph minus = remove_edges(complete_graph(16), {Edge(1, 2)});
    const TestReport incomplete = test_completeness(minus, 0, Mode::deterministic);
    CHECK_FALSE(incomplete.verdict);
}

TEST_CASE("walk rejected reports carry no qpe fields") {
    // star graph: far from complete, rejected at the walk stage
    const Graph star = parse_edge_list("1 2\n1 3\n1 4\n1 5\n1 6\n1 7\n1 8");
    const TestReport r = test_completeness(star, 0, Mode::deterministic);
    CHECK_FALSE(r.verdict);
    CHECK(r.stage_reached == Stage::walk_rejected);
    CHECK_FALSE(r.p_bits.has_value());
    CHECK_FALSE(r.qpe_outcome.has_value());
    CHECK_FALSE(r.theta2_reference.has_value());
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(test_completeness(complete_graph(3), 0, Mode::deterministic),
                    std::invalid_argument);
    const Graph disconnected = parse_edge_list("n 6\n1 2\n2 3\n1 3\n4 5\n5 6\n4 6");
    CHECK_THROWS_WITH_AS(test_completeness(disconnected, 0, Mode::deterministic),
                         doctest::Contains("isolated components"), std::invalid_argument);
}

TEST_CASE("seed determinism") {
    const Graph g = remove_edges(complete_graph(12), {Edge(3, 7)});
    for (auto mode : {Mode::sampled, Mode::deterministic}) {
        const TestReport a = test_completeness(g, 42, mode);
        const TestReport b = test_completeness(g, 42, mode);
        CHECK(a.verdict == b.verdict);
        CHECK(a.stage_reached == b.stage_reached);
        CHECK(a.marked_set.members == b.marked_set.members);
        CHECK(a.measured_node == b.measured_node);
        CHECK(a.qpe_outcome == b.qpe_outcome);
    }
    // different seeds pick different marked sets at least sometimes
    bool differs = false;
    const TestReport base = test_completeness(g, 0, Mode::deterministic);
    for (std::uint64_t s = 1; s <= 8 && !differs; ++s)
        differs = test_completeness(g, s, Mode::deterministic).marked_set.members !=
                  base.marked_set.members;
    CHECK(differs);
}

TEST_CASE("deterministic mode equals the classical oracle") {
    for (int n = 6; n <= 20; ++n) {
        CHECK(test_completeness(complete_graph(n), 1, Mode::deterministic).verdict);
        const Graph minus = remove_edges(complete_graph(n), {Edge(1, n)});
        CHECK_FALSE(test_completeness(minus, 1, Mode::deterministic).verdict);
    }
}

TEST_CASE("sampled mode statistics at desk scale") {
    const Graph minus = remove_edges(complete_graph(16), {Edge(1, 2)});
    int rejected = 0;
    for (std::uint64_t s = 0; s < 30; ++s)
        if (!test_completeness(minus, s, Mode::sampled, 14).verdict) ++rejected;
    CHECK(rejected >= 24);

    int accepted = 0;
    for (std::uint64_t s = 0; s < 30; ++s)
        if (test_completeness(complete_graph(16), s, Mode::sampled, 14).verdict) ++accepted;
    CHECK(accepted >= 24);
}

TEST_CASE("sampled walk rejection is one-way sound") {
    // a walk-stage rejection on a complete graph can only be a probabilistic
    // miss; its rate must stay near 1 - P_M(3)
    int miss = 0;
    const int trials = 400;
    const Graph g = complete_graph(10);
    for (std::uint64_t s = 0; s < trials; ++s) {
        const TestReport r = test_completeness(g, s, Mode::sampled);
        if (r.stage_reached == Stage::walk_rejected) ++miss;
    }
    CHECK(static_cast<double>(miss) / trials <= 0.2);
}

TEST_CASE("analyze diagnostics") {
    const Diagnostics ok = analyze(complete_graph(8));
    CHECK(ok.classical_complete);
    CHECK(ok.report.verdict);
    CHECK(std::abs(ok.gap) < 1e-9);
    REQUIRE(ok.marked_probability_trace.size() == 7);
    CHECK(ok.marked_probability_trace[0] ==
          doctest::Approx(ok.report.m_star / 8.0).epsilon(1e-12));
    CHECK(ok.marked_probability_trace[3] > 0.85);
    CHECK_FALSE(ok.qpe_mass.empty());

    // removed edge away from the re-marked node 1: perturbed phase sits above theta2
    const Diagnostics bad = analyze(remove_edges(complete_graph(8), {Edge(3, 4)}));
    CHECK_FALSE(bad.classical_complete);
    CHECK_FALSE(bad.report.verdict);
    if (bad.report.stage_reached == Stage::qpe_completed) CHECK(bad.gap > 0.0);

    // removed edge incident to node 1: gap flips sign but stays resolvable
    const Diagnostics inc = analyze(remove_edges(complete_graph(8), {Edge(1, 2)}));
    CHECK_FALSE(inc.report.verdict);
    if (inc.report.stage_reached == Stage::qpe_completed) CHECK(inc.gap < 0.0);
}
