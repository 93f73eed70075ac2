#include "evset/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "evset/error.hpp"
#include "evset/io.hpp"

namespace evset {

namespace {

std::vector<VertexId> dedupe_sorted(const GraphFamily& g, std::vector<VertexId> set) {
    for (const auto& v : set) g.require_vertex(v);
    std::sort(set.begin(), set.end(), label_less);
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

double pi_of(const GraphFamily& g, const std::vector<VertexId>& S) {
    double total = 0.0;
    for (const auto& v : S) total += static_cast<double>(g.degree(v));
    return total;
}

void require_certificate(const EntropyCertificate& cert, const GraphFamily& g, int n) {
    if (!cert.verified)
        throw Error(ErrorCode::UncertifiedConstant,
                    "entropy constant is not certified; run certify_entropy_constant first");
    if (cert.graph != g.description())
        throw Error(ErrorCode::UncertifiedConstant,
                    "certificate is for '" + cert.graph + "', not '" + g.description() + "'");
    if (n >= 0 && (n < cert.n_lo || n > cert.n_hi))
        throw Error(ErrorCode::UncertifiedConstant,
                    "certificate covers n in [" + std::to_string(cert.n_lo) + ", " +
                        std::to_string(cert.n_hi) + "], not n = " + std::to_string(n));
}

} // namespace

std::optional<radial::RadialSet> radialize(const GraphFamily& g,
                                           const std::vector<VertexId>& set) {
    if (g.kind() != FamilyKind::RegularTree) return std::nullopt;
    radial::TreeQuotient quo{g.tree_degree()};
    std::map<int, std::uint64_t> counts;
    for (const auto& v : set) {
        if (!g.contains(v)) return std::nullopt;
        ++counts[static_cast<int>(v.path.size())];
    }
    radial::RadialSet out;
    for (const auto& [depth, count] : counts) {
        long double expected = quo.class_count(depth);
        if (expected > 1e18L || static_cast<long double>(count) != expected) return std::nullopt;
        out.classes.push_back(depth);
    }
    return out;
}

EntropyCertificate certify_entropy_constant(const GraphFamily& g,
                                            const std::vector<VertexId>& starts, int n_lo,
                                            int n_hi, double c_target,
                                            const PropagationOptions& opt) {
    if (starts.empty())
        throw Error(ErrorCode::InvalidArgument, "certification needs at least one start vertex");
    if (n_lo > n_hi || n_hi < 1)
        throw Error(ErrorCode::InvalidArgument, "vacuous certification range refused");
    if (c_target <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "target constant must be positive");

    EntropyCertificate cert;
    cert.c = c_target;
    cert.n_lo = std::max(n_lo, 1);
    cert.n_hi = n_hi;
    cert.graph = g.description();

    for (const auto& x0 : starts) {
        g.require_vertex(x0);
        cert.start_labels.push_back(x0.label());
        EntropySeries series;
        if (radial_applicable(g, x0)) {
            series = radial::entropy_series_root(radial::TreeQuotient{g.tree_degree()}, n_hi);
        } else {
            series = entropy_series(g, x0, n_hi, opt);
        }
        for (int n = cert.n_lo; n <= cert.n_hi; ++n) {
            double e = series.points[static_cast<std::size_t>(n)].entropy_nats;
            if (e < c_target * n - 1e-12) {
                cert.violations.push_back("x0=" + x0.label() + " n=" + std::to_string(n) +
                                          " E_n=" + fmt17(e));
            }
        }
    }
    cert.verified = cert.violations.empty();
    return cert;
}

double contraction_alpha(double c, int max_degree) {
    return 1.0 - c / (16.0 * std::log(static_cast<double>(max_degree)));
}

BoundReport check_escape_bound(const GraphFamily& g, const VertexId& x0, int n,
                               const std::vector<VertexId>& A, const EntropyCertificate& cert,
                               const PropagationOptions& opt, bool include_sharper) {
    require_certificate(cert, g, n);
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "escape bound needs n >= 1");
    auto a_set = dedupe_sorted(g, A);
    if (a_set.empty())
        throw Error(ErrorCode::EmptySet, "escape bound needs a nonempty target set A");

    const double d = static_cast<double>(g.max_degree());
    const double a_size = static_cast<double>(a_set.size());
    const double rhs = (cert.c * n - std::log(2.0 * a_size)) / (n * std::log(d));

    double lhs = 0.0;
    std::string note = "c=" + fmt17(cert.c) + " certified on [" + std::to_string(cert.n_lo) +
                       "," + std::to_string(cert.n_hi) + "]";

    // Root-symmetric A on a regular tree: the depth-class quotient gives the
    // escape probability exactly at horizons where vertex-level propagation
    // cannot be stored.
    std::optional<radial::RadialSet> rad;
    if (radial_applicable(g, x0) && (rad = radialize(g, a_set))) {
        const auto& classes = rad->classes;
        bool is_ball = !classes.empty() && classes.front() == 0 &&
                       classes.back() == static_cast<int>(classes.size()) - 1;
        if (is_ball) {
            lhs = radial::escape_probability_ball(radial::TreeQuotient{g.tree_degree()}, n,
                                                  classes.back());
            note += "; radial quotient, A = ball(root," + std::to_string(classes.back()) + ")";
        } else {
            rad.reset();
        }
    }
    if (!rad) {
        SparseMeasure dist = distribution_at(g, x0, n, opt);
        double inside = 0.0;
        std::size_t inside_support = 0;
        for (const auto& a : a_set) {
            double p = dist.value(a);
            inside += p;
            if (p > 0.0) ++inside_support;
        }
        lhs = std::min(1.0, std::max(0.0, 1.0 - inside));
        if (include_sharper) {
            double ac_size = static_cast<double>(dist.support_size() - inside_support);
            if (ac_size > 0.0 && std::log(ac_size) > std::log(a_size)) {
                double sharper = (cert.c * n - std::log(a_size) - std::log(2.0)) /
                                 (std::log(ac_size) - std::log(a_size));
                note += "; sharper_rhs=" + fmt17(sharper);
            }
        }
    }

    bool vacuous = rhs <= 0.0;
    if (vacuous) note += "; vacuous: rhs <= 0";
    std::string inputs = "graph=" + g.description() + " x0=" + x0.label() +
                         " n=" + std::to_string(n) + " |A|=" + std::to_string(a_set.size());
    return make_report("escape_bound", inputs, lhs, rhs, lhs - rhs, 1e-12, vacuous, note);
}

BoundReport check_q_escape_bound(const GraphFamily& g, const std::vector<VertexId>& S, int n,
                                 const std::vector<VertexId>& A, const EntropyCertificate& cert,
                                 const PropagationOptions& opt) {
    require_certificate(cert, g, n);
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "escape bound needs n >= 1");
    auto s_set = dedupe_sorted(g, S);
    auto a_set = dedupe_sorted(g, A);
    if (s_set.empty())
        throw Error(ErrorCode::EmptySet, "Q escape bound needs a nonempty source set S");
    if (a_set.empty())
        throw Error(ErrorCode::EmptySet, "Q escape bound needs a nonempty target set A");

    const double d = static_cast<double>(g.max_degree());
    const double a_size = static_cast<double>(a_set.size());

    double pi_s = 0.0;
    double outside = 0.0; // Q_n(S, support \ A)
    double inside = 0.0;  // Q_n(S, A), the displayed literal reading
    std::optional<radial::RadialSet> rad_s, rad_a;
    if (g.kind() == FamilyKind::RegularTree && (rad_s = radialize(g, s_set)) &&
        (rad_a = radialize(g, a_set))) {
        radial::TreeQuotient quo{g.tree_degree()};
        auto masses = radial::q_class_masses(quo, *rad_s, n);
        pi_s = static_cast<double>(radial::pi_mass(quo, *rad_s));
        long double in = 0.0L, total = 0.0L;
        std::set<int> a_classes(rad_a->classes.begin(), rad_a->classes.end());
        for (int k = 0; k < static_cast<int>(masses.size()); ++k) {
            total += masses[static_cast<std::size_t>(k)];
            if (a_classes.count(k)) in += masses[static_cast<std::size_t>(k)];
        }
        inside = static_cast<double>(in);
        outside = static_cast<double>(total - in);
    } else {
        QMeasure q = q_measure(g, s_set, n, opt);
        pi_s = q.origin_pi;
        for (const auto& a : a_set) inside += q.measure.value(a);
        outside = q.measure.total_mass() - inside;
    }

    const double rhs = pi_s * (cert.c * n - std::log(2.0 * a_size)) / (n * std::log(d));
    bool vacuous = rhs <= 0.0;
    std::string note = "complement reading; literal Q_n(S,A)=" + fmt17(inside) +
                       (inside >= rhs ? " (also >= rhs)" : " (below rhs)");
    if (vacuous) note += "; vacuous: rhs <= 0";
    std::string inputs = "graph=" + g.description() + " |S|=" + std::to_string(s_set.size()) +
                         " n=" + std::to_string(n) + " |A|=" + std::to_string(a_set.size());
    return make_report("q_escape_bound", inputs, outside, rhs, outside - rhs, 1e-12, vacuous,
                       note);
}

BoundReport check_entropy_decomposition(const GraphFamily& g, const VertexId& x0, int n,
                                        const std::vector<VertexId>& A,
                                        const PropagationOptions& opt) {
    auto a_set = dedupe_sorted(g, A);
    if (a_set.empty())
        throw Error(ErrorCode::EmptySet, "decomposition needs a nonempty A");
    SparseMeasure dist = distribution_at(g, x0, n, opt);

    double inside = 0.0;
    std::size_t inside_support = 0;
    for (const auto& a : a_set) {
        double p = dist.value(a);
        inside += p;
        if (p > 0.0) ++inside_support;
    }
    double q = std::min(1.0, std::max(0.0, 1.0 - inside));
    const double a_size = static_cast<double>(a_set.size());
    const double ac_size = static_cast<double>(dist.support_size() - inside_support);
    if (ac_size == 0.0 && q > 0.0)
        throw Error(ErrorCode::InvalidArgument, "A^c empty but escape mass positive");

    auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    double rhs = -xlogx(1.0 - q) - xlogx(q) + (1.0 - q) * std::log(a_size) +
                 (q > 0.0 ? q * std::log(ac_size) : 0.0);
    double lhs = entropy(dist);

    std::string inputs = "graph=" + g.description() + " x0=" + x0.label() +
                         " n=" + std::to_string(n) + " |A|=" + std::to_string(a_set.size()) +
                         " |Ac|=" + fmt17(ac_size) + " q=" + fmt17(q);
    return make_report("entropy_decomposition", inputs, lhs, rhs, rhs - lhs, 1e-12, false,
                       "upper bound on E_n; holds for every A");
}

std::vector<BoundReport> check_ceil_log_inequality(const std::vector<double>& xs) {
    std::vector<BoundReport> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (x < 1.0)
            throw Error(ErrorCode::InvalidArgument, "inequality needs x >= 1");
        double lhs = 4.0 * std::sqrt(x);
        double rhs = std::ceil(std::log(8.0 * x));
        out.push_back(make_report("ceil_log_inequality", "x=" + fmt17(x), lhs, rhs, lhs - rhs,
                                  1e-12, false, ""));
    }
    return out;
}

BoundReport check_sqrt_moment_bound(const std::vector<std::pair<double, double>>& dist) {
    double mean = 0.0, total = 0.0;
    for (const auto& [value, prob] : dist) {
        if (value < 0.0)
            throw Error(ErrorCode::InvalidArgument, "R must be nonnegative");
        if (prob < 0.0)
            throw Error(ErrorCode::InvalidArgument, "probabilities must be nonnegative");
        mean += value * prob;
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw Error(ErrorCode::NotNormalized, "probabilities sum to " + fmt17(total));
    if (std::abs(mean - 1.0) > 1e-9)
        throw Error(ErrorCode::InvalidArgument, "E R must be 1, got " + fmt17(mean));

    double lhs = 0.0, tail = 0.0;
    for (const auto& [value, prob] : dist) {
        lhs += prob * std::sqrt(value);
        if (value >= 4.0) tail += prob * value;
    }
    double rhs = 1.0 - tail / 8.0;
    std::string inputs = "support=" + std::to_string(dist.size()) + " E[R 1(R>=4)]=" + fmt17(tail);
    return make_report("sqrt_moment", inputs, lhs, rhs, rhs - lhs, 1e-12, false, "");
}

namespace {

BoundReport superstep_decay_report(const GraphFamily& g, const EntropyCertificate& cert, int gap,
                             double pi_s, double lhs, const std::string& state_desc) {
    double alpha = contraction_alpha(cert.c, g.max_degree());
    double rhs = alpha * std::sqrt(pi_s);
    std::string note = "L=" + std::to_string(gap) + " alpha=" + fmt17(alpha);
    if (gap < cert.n_lo || gap > cert.n_hi)
        note += "; certificate range [" + std::to_string(cert.n_lo) + "," +
                std::to_string(cert.n_hi) + "] does not cover L";
    std::string inputs = "graph=" + g.description() + " " + state_desc + " pi(S)=" + fmt17(pi_s);
    return make_report("superstep_decay", inputs, lhs, rhs, rhs - lhs, 1e-10, false, note);
}

} // namespace

BoundReport check_superstep_decay(const GraphFamily& g, const std::vector<VertexId>& S,
                            const EntropyCertificate& cert, const PropagationOptions& opt) {
    require_certificate(cert, g, -1);
    auto s_set = dedupe_sorted(g, S);
    if (s_set.empty())
        throw Error(ErrorCode::EmptySet, "decay needs a nonempty state");
    double pi_s = pi_of(g, s_set);
    int gap = gap_length(pi_s, cert.c);
    Levels levels = superstep_levels(g, s_set, gap, opt);
    double lhs = expected_functional(levels, [](double x) { return std::sqrt(x); });
    return superstep_decay_report(g, cert, gap, pi_s, lhs, "|S|=" + std::to_string(s_set.size()));
}

BoundReport check_superstep_decay_radial(const GraphFamily& g, const radial::RadialSet& S,
                                   const EntropyCertificate& cert) {
    require_certificate(cert, g, -1);
    if (g.kind() != FamilyKind::RegularTree)
        throw Error(ErrorCode::InvalidArgument, "radial decay needs a regular tree");
    if (S.empty())
        throw Error(ErrorCode::EmptySet, "decay needs a nonempty state");
    radial::TreeQuotient quo{g.tree_degree()};
    long double pi_s = radial::pi_mass(quo, S);
    int gap = gap_length(static_cast<double>(pi_s), cert.c);
    radial::RadialLevels levels = radial::superstep_levels(quo, S, gap);
    long double lhs =
        radial::expected_functional(levels, [](long double x) { return sqrtl(x); });
    std::string desc = "classes=" + std::to_string(S.classes.size()) +
                       " max_depth=" + std::to_string(S.classes.back());
    return superstep_decay_report(g, cert, gap, static_cast<double>(pi_s), static_cast<double>(lhs),
                            desc);
}

std::vector<BoundReport> check_trajectory_decay(const GraphFamily& g, const VertexId& x0,
                                       const EntropyCertificate& cert, int m_max,
                                       std::uint64_t trials, std::uint64_t master_seed,
                                       const PropagationOptions& opt, EvolveEngine engine,
                                       int n_threads) {
    require_certificate(cert, g, -1);
    auto decay =
        decay_profile(g, x0, cert.c, m_max, trials, master_seed, opt, engine, n_threads);
    const double alpha = contraction_alpha(cert.c, g.max_degree());
    const double pi_x0 = static_cast<double>(g.degree(x0));

    std::vector<BoundReport> out;
    out.reserve(decay.size());
    double bound = pi_x0;                    // alpha^m pi(x0), the stated bound
    double strict_bound = std::sqrt(pi_x0);  // alpha^m sqrt(pi(x0)): what the
                                             // induction actually yields; informational
    for (const auto& point : decay) {
        double allowance = bound + 4.0 * point.std_error;
        std::string inputs = "graph=" + g.description() + " x0=" + x0.label() +
                             " m=" + std::to_string(point.m) +
                             " trials=" + std::to_string(trials) +
                             " seed=" + std::to_string(master_seed);
        std::string note = "estimate=" + fmt17(point.mean_sqrt_pi) +
                           " stderr=" + fmt17(point.std_error) +
                           " alive=" + std::to_string(point.alive) +
                           " alpha^m*pi=" + fmt17(bound) +
                           " strict_alpha^m*sqrt_pi=" + fmt17(strict_bound) +
                           (point.mean_sqrt_pi <= strict_bound + 4.0 * point.std_error
                                ? " (strict bound also holds)"
                                : " (strict bound exceeded)");
        out.push_back(make_report("trajectory_decay", inputs, point.mean_sqrt_pi, allowance,
                                  allowance - point.mean_sqrt_pi, 0.0, false, note));
        bound *= alpha;
        strict_bound *= alpha;
    }
    return out;
}

BoundReport check_transience_sum(const GraphFamily& g, const VertexId& x0, const VertexId& y,
                                 const EntropyCertificate& cert, int t_horizon, int i_horizon,
                                 std::uint64_t trials, std::uint64_t master_seed,
                                 const PropagationOptions& opt, EvolveEngine engine,
                                 int n_threads) {
    require_certificate(cert, g, -1);
    g.require_vertex(y);

    // finite-horizon left side: sum_{t<=T} p^t(x0,y)
    double lhs = 0.0;
    if (radial_applicable(g, x0)) {
        radial::TreeQuotient quo{g.tree_degree()};
        const int depth = static_cast<int>(y.path.size());
        std::vector<long double> nu{1.0L};
        lhs += depth == 0 ? 1.0 : 0.0;
        for (int t = 1; t <= t_horizon; ++t) {
            radial::step(quo, nu);
            if (depth < static_cast<int>(nu.size()))
                lhs += static_cast<double>(nu[static_cast<std::size_t>(depth)] /
                                           quo.class_count(depth));
        }
    } else {
        SparseMeasure mu = SparseMeasure::point_mass(x0);
        lhs += mu.value(y);
        for (int t = 1; t <= t_horizon; ++t) {
            mu = step_distribution(g, mu, opt);
            lhs += mu.value(y);
        }
    }

    auto decay =
        decay_profile(g, x0, cert.c, i_horizon, trials, master_seed, opt, engine, n_threads);
    double decay_sum = 0.0;
    for (const auto& point : decay)
        decay_sum += point.mean_sqrt_pi + 4.0 * point.std_error;
    const double d = static_cast<double>(g.max_degree());
    const double prefactor = 8.0 * d * std::ceil(1.0 / cert.c);
    const double rhs = prefactor * decay_sum;

    std::string inputs = "graph=" + g.description() + " x0=" + x0.label() + " y=" + y.label() +
                         " T=" + std::to_string(t_horizon) + " I=" + std::to_string(i_horizon) +
                         " trials=" + std::to_string(trials) +
                         " seed=" + std::to_string(master_seed);
    std::string note = "prefactor=" + fmt17(prefactor) +
                       "; finite-horizon lhs only grows toward the full sum while rhs truncates "
                       "the true bound: a pass at large T,I is strong evidence, a fail only "
                       "indicative";
    return make_report("transience_sum", inputs, lhs, rhs, rhs - lhs, 0.0, false, note);
}

BoundReport duality_check(const GraphFamily& g, const VertexId& x0, const VertexId& y, int t,
                          double growth_constant, std::uint64_t trials,
                          std::uint64_t master_seed, const PropagationOptions& opt) {
    DualityEstimate est =
        duality_estimate(g, x0, y, t, growth_constant, trials, master_seed, opt);
    double diff = std::abs(est.estimate - est.exact);
    double allowance = 4.0 * est.std_error + 1e-12; // exactness guard at zero variance
    std::string inputs = "graph=" + g.description() + " x0=" + x0.label() + " y=" + y.label() +
                         " t=" + std::to_string(t) + " c=" + fmt17(growth_constant) +
                         " trials=" + std::to_string(trials) +
                         " seed=" + std::to_string(master_seed);
    std::string note = "exact=" + fmt17(est.exact) + " estimate=" + fmt17(est.estimate) +
                       " stderr=" + fmt17(est.std_error);
    return make_report("duality", inputs, diff, allowance, allowance - diff, 0.0, false, note);
}

} // namespace evset
