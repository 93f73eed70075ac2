#include <doctest.h>

#include <cmath>
#include <set>

#include "evset/error.hpp"
#include "evset/evolve.hpp"
#include "oracles.hpp"

using namespace evset;

TEST_SUITE_BEGIN("evolve");

namespace {

std::vector<std::string> labels_of(const std::vector<VertexId>& vs) {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(v.label());
    return out;
}

} // namespace

TEST_CASE("q measures") {
    auto z = GraphFamily::integer_line();
    auto q0 = q_measure(z, {z.origin()}, 0);
    CHECK(q0.measure.value(z.origin()) == 2.0);
    CHECK(q0.origin_pi == 2.0);

    auto q2 = q_measure(z, {z.origin()}, 2);
    CHECK(q2.measure.value(z.parse_vertex("z:-2")) == doctest::Approx(0.5));
    CHECK(q2.measure.value(z.parse_vertex("z:0")) == doctest::Approx(1.0));
    CHECK(q2.measure.value(z.parse_vertex("z:2")) == doctest::Approx(0.5));
    CHECK(q2.measure.total_mass() == doctest::Approx(2.0).epsilon(1e-14));

    auto empty = q_measure(z, {}, 5);
    CHECK(empty.measure.empty());
    CHECK(empty.origin_pi == 0.0);

    // against the brute-force oracle on a lattice
    auto g2 = GraphFamily::lattice2d();
    auto S = g2.ball(g2.origin(), 1);
    auto brute = oracle::brute_q_measure(g2, S, 3);
    auto exact = q_measure(g2, S, 3);
    CHECK(exact.measure.support_size() == brute.size());
    for (const auto& [label, mass] : brute)
        CHECK(exact.measure.value(g2.parse_vertex(label)) ==
              doctest::Approx(mass).epsilon(1e-12));
}

TEST_CASE("gap lengths") {
    CHECK(gap_length(1.0, 1.0) == 6);
    CHECK(gap_length(2.0, 0.5) == 12);
    CHECK(gap_length(2.0, 0.2) == 28);
    CHECK_THROWS_AS((void)gap_length(0.0, 0.5), Error);
    CHECK_THROWS_AS((void)gap_length(2.0, 0.0), Error);

    RngStream rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        double pi = 1.0 + 1e6 * rng.uniform_open01();
        double c = 0.05 + 2.0 * rng.uniform_open01();
        int gap = gap_length(pi, c);
        CHECK(gap >= 2);
        CHECK(gap % 2 == 0);
    }
}

TEST_CASE("superstep sampling on the line example") {
    auto z = GraphFamily::integer_line();
    std::vector<VertexId> S{z.origin()};
    CHECK(labels_of(superstep_sample(z, S, 2, 0.3)) == std::vector<std::string>{"z:0"});
    CHECK(labels_of(superstep_sample(z, S, 2, 0.2)) ==
          std::vector<std::string>{"z:-2", "z:0", "z:2"});
    CHECK(superstep_sample(z, S, 2, 0.6).empty());
    CHECK_THROWS_AS((void)superstep_sample(z, S, 2, 0.0), Error);
    CHECK(superstep_sample(z, {}, 2, 0.5).empty());
}

TEST_CASE("level decomposition on the line example") {
    auto z = GraphFamily::integer_line();
    auto levels = superstep_levels(z, {z.origin()}, 2);
    REQUIRE(levels.thresholds.size() == 2);
    CHECK(levels.thresholds[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(levels.thresholds[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(levels.cum_pi[0] == doctest::Approx(2.0));
    CHECK(levels.cum_pi[1] == doctest::Approx(6.0));
    CHECK(levels.level_end[0] == 1);
    CHECK(levels.level_end[1] == 3);
    CHECK(levels.origin_pi == 2.0);
    // pi(A_1) = 2 < 8 = 4 pi(S) and pi(A_2) = 6 < 8, so S_* is the largest level
    CHECK(levels.s_star_index == 1);

    auto single = superstep_levels(z, {z.origin()}, 0);
    REQUIRE(single.thresholds.size() == 1);
    CHECK(single.thresholds[0] == 1.0);
    CHECK(labels_of(sample_level(single, 0.9)) == std::vector<std::string>{"z:0"});

    // sample/level consistency with the direct filter
    for (double u : {0.1, 0.2, 0.26, 0.4, 0.51, 0.9}) {
        CHECK(labels_of(sample_level(levels, u)) ==
              labels_of(superstep_sample(z, {z.origin()}, 2, u)));
    }
}

TEST_CASE("expected functionals on the line example") {
    auto z = GraphFamily::integer_line();
    auto levels = superstep_levels(z, {z.origin()}, 2);
    CHECK(expected_functional(levels, [](double x) { return x; }) ==
          doctest::Approx(2.0).epsilon(1e-12));
    double expect_sqrt = 0.25 * std::sqrt(6.0) + 0.25 * std::sqrt(2.0);
    CHECK(expected_functional(levels, [](double x) { return std::sqrt(x); }) ==
          doctest::Approx(expect_sqrt).epsilon(1e-12));
    CHECK(expected_functional(levels, [](double x) { return x >= 8.0 ? x : 0.0; }) == 0.0);
    CHECK(expect_sqrt == doctest::Approx(0.965926).epsilon(1e-5));
}

TEST_CASE("martingale identity and oracle agreement on random states") {
    RngStream rng(17);
    std::vector<GraphFamily> families;
    families.push_back(GraphFamily::integer_line());
    families.push_back(GraphFamily::lattice2d());
    families.push_back(GraphFamily::regular_tree(3));
    families.push_back(GraphFamily::pendant_tower(4, 4));
    std::vector<int> max_gap{6, 4, 4, 6};
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const auto& g = families[fi];
        auto pool = g.ball(g.origin(), 2);
        for (int rep = 0; rep < 6; ++rep) {
            std::vector<VertexId> S;
            for (const auto& v : pool)
                if (rng.uniform_open01() < 0.4) S.push_back(v);
            if (S.empty()) S.push_back(g.origin());
            int gap = 1 + rng.uniform_int(max_gap[fi]);
            auto levels = superstep_levels(g, S, gap);
            double pi = 0.0;
            for (const auto& v : S) pi += g.degree(v);

            double mart = expected_functional(levels, [](double x) { return x; });
            CHECK(mart == doctest::Approx(pi).epsilon(1e-10));

            double mine = expected_functional(levels, [](double x) { return std::sqrt(x); });
            double brute = oracle::brute_expected_functional(
                g, S, gap, [](double x) { return std::sqrt(x); });
            CHECK(mine == doctest::Approx(brute).epsilon(1e-10));

            // ratio bound: Q_L(S,y) <= pi(y)
            if (!levels.thresholds.empty())
                CHECK(levels.thresholds.front() <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("nestedness in the threshold") {
    auto g = GraphFamily::lattice2d();
    auto S = g.ball(g.origin(), 1);
    RngStream rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        double u1 = rng.uniform_open01();
        double u2 = rng.uniform_open01();
        if (u1 > u2) std::swap(u1, u2);
        auto big = superstep_sample(g, S, 4, u1);
        auto small = superstep_sample(g, S, 4, u2);
        auto big_labels = labels_of(big);
        std::set<std::string> big_set(big_labels.begin(), big_labels.end());
        for (const auto& lbl : labels_of(small)) CHECK(big_set.count(lbl) == 1);
    }
}

TEST_CASE("sampling frequencies match level widths") {
    auto z = GraphFamily::integer_line();
    auto levels = superstep_levels(z, {z.origin()}, 2);
    RngStream rng(29);
    const int draws = 10'000;
    int count_top = 0, count_all = 0, count_empty = 0;
    for (int i = 0; i < draws; ++i) {
        auto s = sample_level(levels, rng.uniform_open01());
        if (s.empty()) ++count_empty;
        else if (s.size() == 1) ++count_top;
        else ++count_all;
    }
    auto within4 = [&](int count, double p) {
        double sigma = std::sqrt(p * (1.0 - p) * draws);
        return std::abs(count - p * draws) <= 4.0 * sigma;
    };
    CHECK(within4(count_top, 0.25));  // u in (0.25, 0.5]
    CHECK(within4(count_all, 0.25));  // u in (0, 0.25]
    CHECK(within4(count_empty, 0.5)); // u > 0.5
}

TEST_CASE("trajectory bookkeeping") {
    auto z = GraphFamily::integer_line();
    RngStream rng(41);
    auto traj = simulate_trajectory(z, z.origin(), 0.5, 8, rng, {}, EvolveEngine::Generic, true);
    REQUIRE(!traj.steps.empty());
    CHECK(traj.steps[0].m == 0);
    CHECK(traj.steps[0].time == 0);
    CHECK(traj.steps[0].pi_mass == 2.0);
    CHECK(traj.steps[0].members == std::vector<std::string>{"z:0"});

    std::int64_t t_acc = 0;
    for (const auto& rec : traj.steps) {
        if (rec.m == 0) continue;
        CHECK(rec.gap >= 2);
        CHECK(rec.gap % 2 == 0);
        t_acc += rec.gap;
        CHECK(rec.time == t_acc);
        CHECK(rec.u > 0.0);
        CHECK(rec.u < 1.0);
    }
    // L_1 = 12 always for pi = 2, C = 0.5
    if (traj.steps.size() > 1) CHECK(traj.steps[1].gap == 12);

    // absorbing state ends the trajectory
    for (std::size_t i = 0; i < traj.steps.size(); ++i)
        if (traj.steps[i].set_size == 0.0) CHECK(i + 1 == traj.steps.size());
}

TEST_CASE("radial and generic trajectories agree step by step") {
    // with C = 1 the first gap from {root} is 8, small enough for the
    // generic engine: one superstep per seed, both engines on a shared
    // stream, over enough seeds to land in many different levels
    auto t3 = GraphFamily::regular_tree(3);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RngStream r1(seed), r2(seed);
        auto gen = simulate_trajectory(t3, t3.origin(), 1.0, 1, r1, {}, EvolveEngine::Generic);
        auto rad = simulate_trajectory(t3, t3.origin(), 1.0, 1, r2, {}, EvolveEngine::RadialTree);
        REQUIRE(gen.steps.size() == rad.steps.size());
        for (std::size_t i = 0; i < gen.steps.size(); ++i) {
            CHECK(gen.steps[i].time == rad.steps[i].time);
            CHECK(gen.steps[i].gap == rad.steps[i].gap);
            CHECK(gen.steps[i].u == rad.steps[i].u);
            CHECK(gen.steps[i].set_size == doctest::Approx(rad.steps[i].set_size));
            CHECK(gen.steps[i].pi_mass == doctest::Approx(rad.steps[i].pi_mass).epsilon(1e-12));
        }
    }
}

TEST_CASE("trajectory truncation under a tiny cap") {
    auto z = GraphFamily::integer_line();
    PropagationOptions tiny;
    tiny.support_cap = 4;
    RngStream rng(5);
    auto traj = simulate_trajectory(z, z.origin(), 0.5, 5, rng, tiny, EvolveEngine::Generic);
    CHECK(traj.truncated);
}

TEST_CASE("decay profile basics") {
    auto t3 = GraphFamily::regular_tree(3);
    auto decay = decay_profile(t3, t3.origin(), 0.2, 4, 400, 77);
    REQUIRE(decay.size() == 5);
    CHECK(decay[0].mean_sqrt_pi == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(decay[0].std_error == 0.0);
    CHECK(decay[0].alive == 400);
    for (const auto& p : decay) CHECK(p.mean_sqrt_pi >= 0.0);
    // the one-superstep kill probability is large at L = 32: most mass dies
    CHECK(decay[1].alive < 400);
}

TEST_CASE("decay profile is independent of the worker count") {
    auto t3 = GraphFamily::regular_tree(3);
    auto one = decay_profile(t3, t3.origin(), 0.2, 3, 500, 7, {}, EvolveEngine::Auto, 1);
    auto four = decay_profile(t3, t3.origin(), 0.2, 3, 500, 7, {}, EvolveEngine::Auto, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t m = 0; m < one.size(); ++m) {
        CHECK(one[m].mean_sqrt_pi == four[m].mean_sqrt_pi);
        CHECK(one[m].std_error == four[m].std_error);
        CHECK(one[m].alive == four[m].alive);
    }
}

TEST_CASE("duality estimates") {
    auto z = GraphFamily::integer_line();
    // t = 0: both sides indicator at x0
    auto d0 = duality_estimate(z, z.origin(), z.origin(), 0, 0.5, 50, 2);
    CHECK(d0.exact == 1.0);
    CHECK(d0.estimate == 1.0);
    CHECK(d0.std_error == 0.0);

    // t = 2 < L_1 = 12: a(2) = 0 deterministically, zero-variance agreement
    auto d2 = duality_estimate(z, z.origin(), z.origin(), 2, 0.5, 50, 2);
    CHECK(d2.exact == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d2.estimate == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d2.std_error == 0.0);

    // t = 17 crosses T_1 = 12: genuine trajectory averaging
    auto y = z.parse_vertex("z:1");
    auto d17 = duality_estimate(z, z.origin(), y, 17, 0.5, 20'000, 31);
    CHECK(std::abs(d17.estimate - d17.exact) <= 4.0 * d17.std_error + 1e-12);
    CHECK(d17.std_error > 0.0);

    // parity: odd-time probability at an even site is exactly zero on both sides
    auto dpar = duality_estimate(z, z.origin(), z.origin(), 17, 0.5, 2'000, 13);
    CHECK(dpar.exact == 0.0);
    CHECK(dpar.estimate == 0.0);
}

TEST_SUITE_END();
