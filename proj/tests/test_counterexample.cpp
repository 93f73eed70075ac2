#include <doctest.h>

#include <cmath>

#include "evset/counterexample.hpp"
#include "evset/error.hpp"
#include "evset/hitting.hpp"
#include "oracles.hpp"

using namespace evset;

TEST_SUITE_BEGIN("counterexample");

TEST_CASE("construction and counts") {
    auto g = build_counterexample(2, 2);
    CHECK(g.pendant_vertex_count() == 16);
    CHECK(g.tower_heights() == std::vector<int>{2, 2});

    auto g2 = build_counterexample(12, 8);
    CHECK(g2.tower_heights() == std::vector<int>{2, 4, 12, 12, 12, 12, 12, 12});
    // 8 + (2^3-1) + (2^5-1) + 6 (2^13-1)
    CHECK(g2.pendant_vertex_count() == 8u + 7u + 31u + 6u * 8191u);
}

TEST_CASE("per-start rates are positive and ordered by tree access") {
    auto g = build_counterexample(12, 8);
    std::vector<VertexId> starts{g.parse_vertex("pt:1"), g.parse_vertex("pt:3")};
    auto profiles = per_start_entropy_rates(g, starts, 40);
    REQUIRE(profiles.size() == 2);
    for (const auto& p : profiles) {
        CHECK(p.rate > 0.0);
        CHECK(p.window_lo == 20);
        CHECK(p.window_hi == 40);
    }
    CHECK(profiles[0].tree_depth == 0);
    // vertex 3 sits next to the first full-height tree; vertex 1 wastes its
    // window inside the stubby T_1 and T_2
    CHECK(profiles[1].rate > profiles[0].rate);

    auto tree_start = per_start_entropy_rates(g, {g.parse_vertex("pt:3/00")}, 10);
    CHECK(tree_start[0].tree_depth == 3);
}

TEST_CASE("hitting time solver against closed forms") {
    // gambler's ruin: end-to-end on a path with i vertices is (i-1)^2
    for (int i : {2, 5, 10}) {
        auto h = expected_hitting_times(path_graph(i), i - 1);
        CHECK(h[0] == doctest::Approx(oracle::path_end_to_end_hitting(i)).epsilon(1e-10));
    }

    // edge-crossing oracle on the full binary tree of height 3
    auto adj = full_binary_tree(3);
    for (int target : {0, 3, 7, 14}) {
        auto h = expected_hitting_times(adj, target);
        for (int start : {0, 1, 6, 8, 14})
            CHECK(h[static_cast<std::size_t>(start)] ==
                  doctest::Approx(oracle::tree_hitting_time(adj, start, target)).epsilon(1e-10));
    }

    // Monte Carlo agrees within a loose tolerance
    double exact = expected_hitting_times(adj, 0)[14];
    double mc = mc_expected_hitting_time(adj, 14, 0, 4000, 17);
    CHECK(mc == doctest::Approx(exact).epsilon(0.1));
}

TEST_CASE("hitting time bound reports") {
    auto reports = check_hitting_time_bound({1, 7, 15, 31, 63});
    REQUIRE(reports.size() == 5);
    for (const auto& r : reports) {
        CHECK(r.pass);
        CHECK(r.lhs <= r.rhs);
    }
    CHECK(reports[0].lhs == 0.0);
    CHECK(reports[0].rhs == 2.0);
    CHECK(reports[1].rhs == 98.0);
    CHECK_THROWS_AS((void)check_hitting_time_bound({6}), Error);
}

TEST_CASE("drift inside a tall tree") {
    auto g = build_counterexample(8, 3);
    auto rep = drift_check(g, 3, 20'000, 5);
    CHECK(rep.pass);
    CHECK(rep.note.find("up_fraction") != std::string::npos);

    auto flat = build_counterexample(1, 2); // trees of height 1 have no interior
    CHECK_THROWS_AS((void)drift_check(flat, 1, 100, 5), Error);
}

TEST_CASE("backbone projection is a fair lazy walk") {
    auto g = build_counterexample(6, 6);
    auto proj = backbone_projection_check(g, g.parse_vertex("pt:1"), 200'000, 21);
    CHECK(proj.moves > 100);
    CHECK(proj.lazy_holds > 0);
    CHECK(proj.pass);
}

TEST_CASE("line resistance by the series law") {
    auto g = build_counterexample(4, 8);
    CHECK(backbone_line_resistance(g, 1, 8) == 7.0);
    CHECK(backbone_line_resistance(g, 3, 3) == 0.0);
    CHECK_THROWS_AS((void)backbone_line_resistance(g, 0, 3), Error);
}

TEST_CASE("finite truncation is recurrent") {
    auto g = build_counterexample(4, 4);
    auto diag = recurrence_diagnostics(g, g.parse_vertex("pt:1"), {1'000, 100'000}, 200, 60, 31);
    REQUIRE(diag.returns.size() == 2);
    CHECK(diag.returns[1].frequency >= diag.returns[0].frequency);
    CHECK(diag.returns[1].frequency > 0.99);
    CHECK(diag.projection.pass);
    CHECK(diag.resistance_across_backbone == 3.0);
    // green partial sums keep growing on a recurrent graph
    REQUIRE(!diag.green.empty());
    CHECK(diag.green.back().partial_sum > diag.green[diag.green.size() / 2].partial_sum);
}

TEST_SUITE_END();
