#include <doctest.h>

#include <cmath>
#include <cstring>

#include "evset/bounds.hpp"
#include "evset/error.hpp"
#include "evset/suites.hpp"

using namespace evset;

TEST_SUITE_BEGIN("bounds");

namespace {

EntropyCertificate tree_cert(double c = 0.2, int lo = 5, int hi = 150) {
    auto t3 = GraphFamily::regular_tree(3);
    return certify_entropy_constant(t3, {t3.origin()}, lo, hi, c);
}

} // namespace

TEST_CASE("certification outcomes") {
    auto z = GraphFamily::integer_line();
    auto zc = certify_entropy_constant(z, {z.origin()}, 10, 100, 0.1);
    CHECK(!zc.verified);
    CHECK(!zc.violations.empty()); // entropy on the line grows like log n

    auto t3 = GraphFamily::regular_tree(3);
    auto tc = certify_entropy_constant(t3, {t3.origin()}, 5, 20, 0.2);
    CHECK(tc.verified);
    CHECK(tc.violations.empty());
    CHECK(tc.graph == "tree3");

    CHECK_THROWS_AS(
        (void)certify_entropy_constant(t3, {t3.origin()}, 10, 5, 0.2), Error);
    CHECK_THROWS_AS((void)certify_entropy_constant(t3, {}, 5, 20, 0.2), Error);
}

TEST_CASE("alpha constant") {
    CHECK(contraction_alpha(0.2, 3) == doctest::Approx(0.988621).epsilon(1e-6));
    CHECK(contraction_alpha(0.2, 3) ==
          doctest::Approx(1.0 - 0.2 / (16.0 * std::log(3.0))).epsilon(1e-15));
}

TEST_CASE("escape bound on the tree") {
    auto t3 = GraphFamily::regular_tree(3);
    auto cert = tree_cert(0.2, 5, 20);
    auto A = t3.ball(t3.origin(), 1);
    auto rep = check_escape_bound(t3, t3.origin(), 20, A, cert);
    double want_rhs = (0.2 * 20.0 - std::log(8.0)) / (20.0 * std::log(3.0));
    CHECK(rep.rhs == doctest::Approx(want_rhs).epsilon(1e-13));
    CHECK(rep.rhs == doctest::Approx(0.0874).epsilon(2e-3));
    CHECK(rep.lhs >= rep.rhs);
    CHECK(rep.pass);
    CHECK(!rep.vacuous);

    // vacuous when C n <= ln(2|A|)
    auto big = t3.ball(t3.origin(), 3);
    auto vac = check_escape_bound(t3, t3.origin(), 15, big, cert);
    CHECK(vac.rhs <= 0.0);
    CHECK(vac.vacuous);
    CHECK(vac.pass);

    CHECK_THROWS_AS((void)check_escape_bound(t3, t3.origin(), 20, {}, cert), Error);

    EntropyCertificate bogus;
    bogus.c = 0.2;
    CHECK_THROWS_AS((void)check_escape_bound(t3, t3.origin(), 20, A, bogus), Error);
    auto wrong_graph = cert;
    wrong_graph.graph = "z";
    CHECK_THROWS_AS((void)check_escape_bound(t3, t3.origin(), 20, A, wrong_graph), Error);
    // n outside the certified range
    CHECK_THROWS_AS((void)check_escape_bound(t3, t3.origin(), 40, A, cert), Error);
}

TEST_CASE("escape bound radial path equals generic path") {
    auto t3 = GraphFamily::regular_tree(3);
    auto cert = tree_cert(0.2, 5, 20);
    auto A = t3.ball(t3.origin(), 1);
    // n small enough for the generic engine: compare both routes
    auto rep = check_escape_bound(t3, t3.origin(), 8, A, cert);
    double generic = escape_probability(t3, t3.origin(), 8, A);
    CHECK(rep.lhs == doctest::Approx(generic).epsilon(1e-12));
}

TEST_CASE("q escape bound") {
    auto t3 = GraphFamily::regular_tree(3);
    auto cert = tree_cert(0.2, 5, 20);

    // single-vertex S reduces to pi(x0) times the walk escape probability
    auto A = t3.ball(t3.origin(), 1);
    auto rep = check_q_escape_bound(t3, {t3.origin()}, 8, A, cert);
    double esc = escape_probability(t3, t3.origin(), 8, A);
    CHECK(rep.lhs == doctest::Approx(3.0 * esc).epsilon(1e-11));

    // the paper-scale instance, via the radial quotient
    auto S = t3.ball(t3.origin(), 1);
    auto A2 = t3.ball(t3.origin(), 2);
    auto rep2 = check_q_escape_bound(t3, S, 20, A2, cert);
    CHECK(rep2.pass);
    CHECK(!rep2.vacuous);
    CHECK(rep2.note.find("literal") != std::string::npos);
}

TEST_CASE("entropy decomposition") {
    auto z = GraphFamily::integer_line();
    // n = 0, A = {x0}: both sides zero
    auto r0 = check_entropy_decomposition(z, z.origin(), 0, {z.origin()});
    CHECK(r0.lhs == 0.0);
    CHECK(r0.rhs == 0.0);
    CHECK(r0.pass);

    // the two-step line case is exactly extremal
    auto r2 = check_entropy_decomposition(z, z.origin(), 2, {z.origin()});
    CHECK(r2.lhs == doctest::Approx(r2.rhs).epsilon(1e-12));
    CHECK(r2.pass);

    // strict inequality away from the extremal shape
    auto g2 = GraphFamily::lattice2d();
    auto r6 = check_entropy_decomposition(g2, g2.origin(), 6, g2.ball(g2.origin(), 2));
    CHECK(r6.lhs < r6.rhs);
    CHECK(r6.pass);

    CHECK_THROWS_AS((void)check_entropy_decomposition(z, z.origin(), 2, {}), Error);
}

TEST_CASE("ceiling-log inequality") {
    auto reports = check_ceil_log_inequality({1.0, 4.0});
    CHECK(reports[0].lhs == 4.0);
    CHECK(reports[0].rhs == 3.0); // ceil(ln 8) = 3
    CHECK(reports[0].pass);
    CHECK(reports[1].lhs == 8.0);
    CHECK(reports[1].rhs == 4.0); // ceil(ln 32) = 4
    CHECK(reports[1].pass);
    CHECK_THROWS_AS((void)check_ceil_log_inequality({0.5}), Error);

    for (const auto& r : check_ceil_log_inequality(log_grid(1.0, 1e6, 2000)))
        CHECK(r.pass);
}

TEST_CASE("square-root moment bound for mean-one variables") {
    auto degenerate = check_sqrt_moment_bound({{1.0, 1.0}});
    CHECK(degenerate.lhs == 1.0);
    CHECK(degenerate.rhs == 1.0);
    CHECK(degenerate.pass);

    auto spread = check_sqrt_moment_bound({{4.0, 0.25}, {0.0, 0.75}});
    CHECK(spread.lhs == doctest::Approx(0.5));
    CHECK(spread.rhs == doctest::Approx(0.875));
    CHECK(spread.pass);

    CHECK_THROWS_AS((void)check_sqrt_moment_bound({{2.0, 1.0}}), Error);     // E R = 2
    CHECK_THROWS_AS((void)check_sqrt_moment_bound({{1.0, 0.5}}), Error);     // not normalized
    CHECK_THROWS_AS((void)check_sqrt_moment_bound({{-1.0, 0.5}, {3.0, 0.5}}), Error);

    RngStream rng(8);
    for (int rep = 0; rep < 1000; ++rep)
        CHECK(check_sqrt_moment_bound(random_mean_one_distribution(rng)).pass);
}

TEST_CASE("superstep decay on the tree, radial states") {
    auto t3 = GraphFamily::regular_tree(3);
    auto cert = tree_cert();
    auto rep = check_superstep_decay_radial(t3, radial::RadialSet{{0}}, cert);
    CHECK(rep.rhs == doctest::Approx(contraction_alpha(0.2, 3) * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx(1.71229).epsilon(1e-4));
    CHECK(rep.pass);

    auto rep2 = check_superstep_decay_radial(t3, radial::RadialSet{{0, 1}}, cert);
    CHECK(rep2.pass);
}

TEST_CASE("superstep decay generic engine agrees with radial at a shared state") {
    // C = 0.4 is certifiable on [1,16] (the exact rate at n = 16 is ~0.43)
    // and gives L = 16 from {root}: a scale where both engines can run
    auto t3 = GraphFamily::regular_tree(3);
    auto cert = certify_entropy_constant(t3, {t3.origin()}, 1, 16, 0.4);
    REQUIRE(cert.verified);
    auto generic = check_superstep_decay(t3, {t3.origin()}, cert);
    auto lumped = check_superstep_decay_radial(t3, radial::RadialSet{{0}}, cert);
    CHECK(generic.lhs == doctest::Approx(lumped.lhs).epsilon(1e-9));
    CHECK(generic.rhs == doctest::Approx(lumped.rhs).epsilon(1e-12));
    CHECK(generic.pass);
    CHECK(lumped.pass);
}

TEST_CASE("trajectory decay bound") {
    auto t3 = GraphFamily::regular_tree(3);
    auto cert = tree_cert();
    auto reports = check_trajectory_decay(t3, t3.origin(), cert, 5, 2000, 99);
    REQUIRE(reports.size() == 6);
    for (const auto& r : reports) CHECK(r.pass);
    // m = 0: sqrt(pi) <= pi since pi >= 1
    CHECK(reports[0].lhs == doctest::Approx(std::sqrt(3.0)));

    // stability: doubling trials must not flip the verdict
    auto doubled = check_trajectory_decay(t3, t3.origin(), cert, 5, 4000, 99);
    for (const auto& r : doubled) CHECK(r.pass);
}

TEST_CASE("transience sum bound") {
    auto t3 = GraphFamily::regular_tree(3);
    auto cert = tree_cert();
    auto rep = check_transience_sum(t3, t3.origin(), t3.origin(), cert, 40, 30, 2000, 7);
    CHECK(rep.pass);
    CHECK(rep.lhs >= 1.0);                   // the t = 0 term alone
    CHECK(rep.lhs == doctest::Approx(1.9870979410107645).epsilon(1e-9));
    CHECK(rep.note.find("prefactor=120") != std::string::npos); // 8 * 3 * ceil(1/0.2)
    CHECK(rep.rhs > 100.0 * rep.lhs);        // the constant is generous
}

TEST_CASE("duality reports") {
    auto z = GraphFamily::integer_line();
    auto rep = duality_check(z, z.origin(), z.origin(), 2, 0.5, 100, 3);
    CHECK(rep.pass);
    CHECK(rep.lhs == 0.0); // zero-variance exact agreement

    auto t3 = GraphFamily::regular_tree(3);
    auto rep2 = duality_check(t3, t3.origin(), t3.parse_vertex("t3:0"), 9, 0.2, 200, 4);
    CHECK(rep2.pass);
}

TEST_CASE("reports replay bit-identically from their recorded seed") {
    auto t3 = GraphFamily::regular_tree(3);
    auto cert = tree_cert();
    auto a = check_trajectory_decay(t3, t3.origin(), cert, 4, 500, 424242);
    auto b = check_trajectory_decay(t3, t3.origin(), cert, 4, 500, 424242);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::memcmp(&a[i].lhs, &b[i].lhs, sizeof(double)) == 0);
        CHECK(std::memcmp(&a[i].rhs, &b[i].rhs, sizeof(double)) == 0);
    }
    auto d1 = duality_check(t3, t3.origin(), t3.origin(), 6, 0.2, 300, 9);
    auto d2 = duality_check(t3, t3.origin(), t3.origin(), 6, 0.2, 300, 9);
    CHECK(std::memcmp(&d1.lhs, &d2.lhs, sizeof(double)) == 0);
    CHECK(d1.note == d2.note);
}

TEST_CASE("radialize detects unions of full depth classes") {
    auto t3 = GraphFamily::regular_tree(3);
    auto ball1 = radialize(t3, t3.ball(t3.origin(), 1));
    REQUIRE(ball1.has_value());
    CHECK(ball1->classes == std::vector<int>{0, 1});

    auto partial = radialize(t3, {t3.origin(), t3.parse_vertex("t3:0")});
    CHECK(!partial.has_value());

    auto z = GraphFamily::integer_line();
    CHECK(!radialize(z, {z.origin()}).has_value());
}

TEST_SUITE_END();
