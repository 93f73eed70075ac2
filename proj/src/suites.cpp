#include "evset/suites.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evset/error.hpp"
#include "evset/io.hpp"

namespace evset {

std::vector<std::pair<double, double>> random_mean_one_distribution(RngStream& rng,
                                                                    int max_support,
                                                                    double max_value) {
    while (true) {
        int support = 2 + rng.uniform_int(max_support - 1);
        std::vector<double> values(static_cast<std::size_t>(support));
        std::vector<double> probs(static_cast<std::size_t>(support));
        double prob_total = 0.0;
        for (int i = 0; i < support; ++i) {
            values[static_cast<std::size_t>(i)] = max_value * rng.uniform_open01();
            double w = rng.uniform_open01();
            probs[static_cast<std::size_t>(i)] = w;
            prob_total += w;
        }
        double mean = 0.0;
        for (int i = 0; i < support; ++i) {
            probs[static_cast<std::size_t>(i)] /= prob_total;
            mean += probs[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)];
        }
        if (mean <= 1e-9) continue;
        std::vector<std::pair<double, double>> out;
        out.reserve(static_cast<std::size_t>(support));
        double check = 0.0;
        for (int i = 0; i < support; ++i) {
            double v = values[static_cast<std::size_t>(i)] / mean;
            out.emplace_back(v, probs[static_cast<std::size_t>(i)]);
            check += v * probs[static_cast<std::size_t>(i)];
        }
        // nudge the largest atom so E R = 1 to full precision
        double drift = check - 1.0;
        if (std::abs(drift) > 0.0) {
            auto it = std::max_element(out.begin(), out.end(), [](const auto& x, const auto& y) {
                return x.second < y.second;
            });
            double adjusted = it->first - drift / it->second;
            if (adjusted < 0.0) continue;
            it->first = adjusted;
        }
        return out;
    }
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (lo <= 0.0 || hi < lo || points < 2)
        throw Error(ErrorCode::InvalidArgument, "bad grid parameters");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i) {
        double f = static_cast<double>(i) / (points - 1);
        out.push_back(std::exp(llo + f * (lhi - llo)));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<radial::RadialSet> sample_radial_states(const GraphFamily& tree, double c, int want,
                                                    std::uint64_t seed) {
    if (tree.kind() != FamilyKind::RegularTree)
        throw Error(ErrorCode::InvalidArgument, "radial states need a regular tree");
    radial::TreeQuotient quo{tree.tree_degree()};
    std::vector<radial::RadialSet> states;
    std::set<std::vector<int>> seen;
    auto push = [&](radial::RadialSet s) {
        if (s.empty()) return;
        if (seen.insert(s.classes).second) states.push_back(std::move(s));
    };
    for (int r = 0; r <= 4 && static_cast<int>(states.size()) < want; ++r) {
        radial::RadialSet ball;
        for (int k = 0; k <= r; ++k) ball.classes.push_back(k);
        push(ball);
    }
    // states actually visited by the process (most trajectories absorb fast,
    // so survivors are rare at small c)
    std::uint64_t trial = 0;
    while (static_cast<int>(states.size()) < want && trial < 512) {
        RngStream rng = seed_stream(seed, trial++);
        radial::RadialSet s{{0}};
        for (int m = 0; m < 6 && !s.empty(); ++m) {
            int gap = gap_length(static_cast<double>(radial::pi_mass(quo, s)), c);
            auto levels = radial::superstep_levels(quo, s, gap);
            s = radial::sample(levels, rng.uniform_open01());
            push(s);
            if (static_cast<int>(states.size()) >= want) break;
        }
    }
    // fill with seeded depth-class unions; the superstep bound conditions on
    // an arbitrary finite state, so any union is a legitimate test state
    std::uint64_t filler = 0;
    while (static_cast<int>(states.size()) < want && filler < 4096) {
        std::uint64_t bits = splitmix64(derive_seed(seed, 1'000'000 + filler++));
        radial::RadialSet s;
        for (int k = 0; k <= 10; ++k)
            if ((bits >> k) & 1u) s.classes.push_back(k);
        push(s);
    }
    if (static_cast<int>(states.size()) < want)
        throw Error(ErrorCode::InvalidArgument,
                    "could not collect " + std::to_string(want) + " distinct states");
    return states;
}

std::vector<std::vector<VertexId>> sample_generic_states(const GraphFamily& g, const VertexId& x0,
                                                         double c, int want, std::uint64_t seed,
                                                         const PropagationOptions& opt) {
    std::vector<std::vector<VertexId>> states;
    std::set<std::vector<std::string>> seen;
    auto push = [&](const std::vector<VertexId>& s) {
        if (s.empty()) return;
        std::vector<std::string> key;
        key.reserve(s.size());
        for (const auto& v : s) key.push_back(v.label());
        if (seen.insert(std::move(key)).second) states.push_back(s);
    };
    push({x0});
    std::uint64_t trial = 0;
    while (static_cast<int>(states.size()) < want && trial < 512) {
        RngStream rng = seed_stream(seed, trial++);
        EvolvingTrajectory traj =
            simulate_trajectory(g, x0, c, 6, rng, opt, EvolveEngine::Generic, true);
        for (const auto& rec : traj.steps) {
            if (rec.m == 0 || rec.members.empty()) continue;
            std::vector<VertexId> s;
            s.reserve(rec.members.size());
            for (const auto& lbl : rec.members) s.push_back(g.parse_vertex(lbl));
            push(s);
            if (static_cast<int>(states.size()) >= want) break;
        }
    }
    // fill with seeded subsets of a small ball around the start
    auto pool = g.ball(x0, 2);
    std::uint64_t filler = 0;
    while (static_cast<int>(states.size()) < want && filler < 4096) {
        std::uint64_t bits = splitmix64(derive_seed(seed, 2'000'000 + filler++));
        std::vector<VertexId> s;
        for (std::size_t i = 0; i < pool.size() && i < 48; ++i)
            if ((bits >> (i % 48)) & 1u) s.push_back(pool[i]);
        push(s);
    }
    if (static_cast<int>(states.size()) < want)
        throw Error(ErrorCode::InvalidArgument,
                    "could not collect " + std::to_string(want) + " distinct states");
    return states;
}

// ---------------------------------------------------------------------------

std::vector<BoundReport> run_unconditional_suite(int chain_cases, int sqrt_moment_cases,
                                                 int grid_points, std::uint64_t seed,
                                                 const PropagationOptions& opt) {
    std::vector<BoundReport> reports;

    // entropy decomposition on random (graph, x0, n, A)
    std::vector<GraphFamily> graphs;
    graphs.push_back(GraphFamily::integer_line());
    graphs.push_back(GraphFamily::lattice2d());
    graphs.push_back(GraphFamily::regular_tree(3));
    graphs.push_back(GraphFamily::cycle(7));
    graphs.push_back(GraphFamily::pendant_tower(3, 4));
    RngStream rng = seed_stream(seed, 0);
    for (int i = 0; i < chain_cases; ++i) {
        const GraphFamily& g = graphs[static_cast<std::size_t>(i) % graphs.size()];
        int n = 1 + rng.uniform_int(g.kind() == FamilyKind::RegularTree ? 7 : 8);
        SparseMeasure dist = distribution_at(g, g.origin(), n, opt);
        auto support = dist.sorted_entries();
        // random nonempty A with nonempty complement in the support
        std::vector<VertexId> A;
        while (true) {
            A.clear();
            for (const auto& [v, p] : support)
                if (rng.uniform_open01() < 0.4) A.push_back(v);
            if (!A.empty() && A.size() < support.size()) break;
        }
        reports.push_back(check_entropy_decomposition(g, g.origin(), n, A, opt));
    }

    // root decay on random mean-1 distributions
    RngStream rng2 = seed_stream(seed, 1);
    for (int i = 0; i < sqrt_moment_cases; ++i)
        reports.push_back(check_sqrt_moment_bound(random_mean_one_distribution(rng2)));

    // ceiling-log inequality on a log grid
    auto grid_reports = check_ceil_log_inequality(log_grid(1.0, 1e6, grid_points));
    reports.insert(reports.end(), grid_reports.begin(), grid_reports.end());
    return reports;
}

BoundReport certificate_report(const EntropyCertificate& cert) {
    std::string inputs = "graph=" + cert.graph + " c=" + fmt17(cert.c) + " range=[" +
                         std::to_string(cert.n_lo) + "," + std::to_string(cert.n_hi) +
                         "] starts=" + std::to_string(cert.start_labels.size());
    std::string note = cert.verified
                           ? "E_n >= c n verified at every covered n"
                           : "violations: " + std::to_string(cert.violations.size()) +
                                 (cert.violations.empty() ? "" : "; first " + cert.violations.front());
    BoundReport r = make_report("entropy_certificate", inputs, cert.verified ? 1.0 : 0.0, 1.0,
                                cert.verified ? 0.0 : -1.0, 0.0, false, note);
    return r;
}

std::vector<BoundReport> run_conditional_suite(const GraphFamily& g, const VertexId& x0, double c,
                                               const SuiteOptions& opt) {
    std::vector<BoundReport> reports;
    EntropyCertificate cert =
        certify_entropy_constant(g, {x0}, opt.cert_lo, opt.cert_hi, c, opt.prop);
    reports.push_back(certificate_report(cert));
    if (!cert.verified) return reports;

    // escape bounds on balls around the start
    for (int n : {15, 20}) {
        if (n < cert.n_lo || n > cert.n_hi) continue;
        for (int r = 1; r <= 3; ++r) {
            auto A = g.ball(x0, r);
            reports.push_back(check_escape_bound(g, x0, n, A, cert, opt.prop));
        }
    }
    {
        int n = std::min(20, cert.n_hi);
        auto S = g.ball(x0, 1);
        auto A = g.ball(x0, 2);
        reports.push_back(check_q_escape_bound(g, S, n, A, cert, opt.prop));
    }

    // exact one-superstep decay on a spread of states
    if (radial_applicable(g, x0)) {
        auto states = sample_radial_states(g, c, opt.decay_states, derive_seed(opt.seed, 11));
        for (const auto& s : states)
            reports.push_back(check_superstep_decay_radial(g, s, cert));
    } else {
        auto states =
            sample_generic_states(g, x0, c, opt.decay_states, derive_seed(opt.seed, 11), opt.prop);
        for (const auto& s : states)
            reports.push_back(check_superstep_decay(g, s, cert, opt.prop));
    }

    // trajectory decay and the transience sum
    auto decay_reports =
        check_trajectory_decay(g, x0, cert, opt.m_max, opt.trials, derive_seed(opt.seed, 12),
                               opt.prop, EvolveEngine::Auto, opt.n_threads);
    reports.insert(reports.end(), decay_reports.begin(), decay_reports.end());
    reports.push_back(check_transience_sum(g, x0, x0, cert, opt.transience_t, opt.transience_i,
                                           opt.trials, derive_seed(opt.seed, 13), opt.prop,
                                           EvolveEngine::Auto, opt.n_threads));
    return reports;
}

std::vector<BoundReport> run_duality_suite(const GraphFamily& g, const VertexId& x0, double c,
                                           std::uint64_t trials, std::uint64_t seed,
                                           const PropagationOptions& opt) {
    std::vector<BoundReport> reports;
    std::vector<int> ts = g.kind() == FamilyKind::RegularTree ? std::vector<int>{2, 5, 9, 12}
                                                              : std::vector<int>{2, 5, 12, 17, 20};
    std::vector<VertexId> ys{x0};
    auto nb = g.neighbors(x0);
    ys.push_back(nb.front());
    auto two_ball = g.ball(x0, 2);
    ys.push_back(two_ball.back());

    std::uint64_t counter = 0;
    for (int t : ts)
        for (const auto& y : ys)
            reports.push_back(
                duality_check(g, x0, y, t, c, trials, derive_seed(seed, counter++), opt));
    return reports;
}

} // namespace evset
