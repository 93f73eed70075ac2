#include "evset/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "evset/error.hpp"
#include "evset/mc.hpp"

namespace evset {

namespace {

std::vector<VertexId> canonical_set(const GraphFamily& g, std::vector<VertexId> S) {
    for (const auto& v : S) g.require_vertex(v);
    std::sort(S.begin(), S.end(), label_less);
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
}

double pi_of(const GraphFamily& g, const std::vector<VertexId>& S) {
    double total = 0.0;
    for (const auto& v : S) total += static_cast<double>(g.degree(v));
    return total;
}

std::string set_key(const std::vector<VertexId>& sorted_set) {
    std::string key;
    for (const auto& v : sorted_set) {
        key += v.label();
        key += '|';
    }
    return key;
}

} // namespace

QMeasure q_measure(const GraphFamily& g, const std::vector<VertexId>& S, int t,
                   const PropagationOptions& opt) {
    if (t < 0)
        throw Error(ErrorCode::InvalidArgument, "t must be >= 0");
    QMeasure q;
    q.steps = t;
    auto set = canonical_set(g, S);
    for (const auto& v : set) {
        double deg = static_cast<double>(g.degree(v));
        q.measure.add(v, deg);
        q.origin_pi += deg;
    }
    for (int s = 0; s < t; ++s)
        q.measure = step_distribution(g, q.measure, opt);
    return q;
}

int gap_length(double pi_mass, double growth_constant) {
    if (growth_constant <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "growth constant must be positive");
    if (pi_mass <= 0.0)
        throw Error(ErrorCode::EmptySet, "gap length of an empty state is undefined");
    double raw = std::log(8.0 * pi_mass) / growth_constant;
    return 2 * static_cast<int>(std::ceil(raw));
}

std::vector<VertexId> superstep_sample(const GraphFamily& g, const std::vector<VertexId>& S,
                                       int gap, double u, const PropagationOptions& opt) {
    if (!(u > 0.0) || u > 1.0)
        throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1]");
    QMeasure q = q_measure(g, S, gap, opt);
    std::vector<VertexId> out;
    for (const auto& [y, mass] : q.measure.entries()) {
        if (mass >= u * static_cast<double>(g.degree(y)))
            out.push_back(y);
    }
    std::sort(out.begin(), out.end(), label_less);
    return out;
}

Levels superstep_levels(const GraphFamily& g, const std::vector<VertexId>& S, int gap,
                        const PropagationOptions& opt) {
    QMeasure q = q_measure(g, S, gap, opt);
    Levels levels;
    levels.origin_pi = q.origin_pi;
    if (q.measure.empty()) return levels;

    // (ratio, degree, vertex), ratio descending; label order breaks ties so
    // replay is stable
    struct Entry {
        double ratio;
        double deg;
        VertexId v;
    };
    std::vector<Entry> entries;
    entries.reserve(q.measure.support_size());
    for (const auto& [y, mass] : q.measure.entries()) {
        double deg = static_cast<double>(g.degree(y));
        entries.push_back({mass / deg, deg, y});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.ratio != y.ratio) return x.ratio > y.ratio;
        return label_less(x.v, y.v);
    });

    double cum = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        levels.vertex_order.push_back(entries[i].v);
        cum += entries[i].deg;
        bool boundary = (i + 1 == entries.size()) ||
                        (entries[i].ratio - entries[i + 1].ratio > 1e-12 * entries[i].ratio);
        if (boundary) {
            levels.thresholds.push_back(entries[i].ratio);
            levels.level_end.push_back(levels.vertex_order.size());
            levels.cum_pi.push_back(cum);
        }
    }
    levels.s_star_index = Levels::npos;
    for (std::size_t j = 0; j < levels.cum_pi.size(); ++j) {
        if (levels.cum_pi[j] < 4.0 * levels.origin_pi) levels.s_star_index = j;
        else break;
    }
    return levels;
}

std::vector<VertexId> sample_level(const Levels& levels, double u) {
    std::size_t chosen = Levels::npos;
    for (std::size_t j = 0; j < levels.thresholds.size(); ++j) {
        if (levels.thresholds[j] >= u) chosen = j;
        else break;
    }
    std::vector<VertexId> out;
    if (chosen == Levels::npos) return out;
    out.assign(levels.vertex_order.begin(),
               levels.vertex_order.begin() + static_cast<std::ptrdiff_t>(levels.level_end[chosen]));
    std::sort(out.begin(), out.end(), label_less);
    return out;
}

double expected_functional(const Levels& levels, const std::function<double(double)>& f) {
    if (levels.thresholds.empty()) return f(0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < levels.thresholds.size(); ++j) {
        const double r_j = levels.thresholds[j];
        const double r_next = (j + 1 < levels.thresholds.size()) ? levels.thresholds[j + 1] : 0.0;
        total += (r_j - r_next) * f(levels.cum_pi[j]);
    }
    total += (1.0 - levels.thresholds.front()) * f(0.0);
    return total;
}

// ---------------------------------------------------------------------------
// trajectories

bool radial_applicable(const GraphFamily& g, const VertexId& x0) {
    return g.kind() == FamilyKind::RegularTree && g.contains(x0) && x0.path.empty();
}

namespace {

EvolvingTrajectory simulate_generic(const GraphFamily& g, const VertexId& x0,
                                    double growth_constant, int m_max, RngStream& rng,
                                    const PropagationOptions& opt, bool record_members) {
    EvolvingTrajectory traj;
    traj.growth_constant = growth_constant;

    std::vector<VertexId> S{x0};
    double pi = static_cast<double>(g.degree(x0));
    std::int64_t T = 0;

    auto record = [&](int m, int gap, double u) {
        SuperstepRecord rec;
        rec.m = m;
        rec.time = T;
        rec.gap = gap;
        rec.u = u;
        rec.set_size = static_cast<double>(S.size());
        rec.pi_mass = pi;
        if (record_members)
            for (const auto& v : S) rec.members.push_back(v.label());
        traj.steps.push_back(std::move(rec));
    };
    record(0, 0, 0.0);

    for (int m = 1; m <= m_max; ++m) {
        if (S.empty()) break;
        int gap = gap_length(pi, growth_constant);
        Levels levels;
        try {
            levels = superstep_levels(g, S, gap, opt);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SupportCapExceeded) {
                traj.truncated = true;
                break;
            }
            throw;
        }
        double u = rng.uniform_open01();
        S = sample_level(levels, u);
        pi = pi_of(g, S);
        T += gap;
        record(m, gap, u);
    }
    return traj;
}

EvolvingTrajectory simulate_radial(const GraphFamily& g, const VertexId& x0,
                                   double growth_constant, int m_max, RngStream& rng,
                                   const PropagationOptions& opt, bool record_members) {
    (void)opt;
    radial::TreeQuotient quo{g.tree_degree()};
    EvolvingTrajectory traj;
    traj.growth_constant = growth_constant;

    radial::RadialSet S{{0}}; // {root}
    long double pi = quo.class_pi(0);
    std::int64_t T = 0;
    (void)x0;

    auto record = [&](int m, int gap, double u) {
        SuperstepRecord rec;
        rec.m = m;
        rec.time = T;
        rec.gap = gap;
        rec.u = u;
        rec.set_size = static_cast<double>(radial::vertex_count(quo, S));
        rec.pi_mass = static_cast<double>(pi);
        if (record_members)
            for (int k : S.classes) rec.members.push_back("depth:" + std::to_string(k));
        traj.steps.push_back(std::move(rec));
    };
    record(0, 0, 0.0);

    for (int m = 1; m <= m_max; ++m) {
        if (S.empty()) break;
        int gap = gap_length(static_cast<double>(pi), growth_constant);
        radial::RadialLevels levels;
        try {
            levels = radial::superstep_levels(quo, S, gap);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SupportCapExceeded) {
                traj.truncated = true;
                break;
            }
            throw;
        }
        double u = rng.uniform_open01();
        S = radial::sample(levels, u);
        pi = radial::pi_mass(quo, S);
        T += gap;
        record(m, gap, u);
    }
    return traj;
}

} // namespace

EvolvingTrajectory simulate_trajectory(const GraphFamily& g, const VertexId& x0,
                                       double growth_constant, int m_max, RngStream& rng,
                                       const PropagationOptions& opt, EvolveEngine engine,
                                       bool record_members) {
    if (m_max < 0)
        throw Error(ErrorCode::InvalidArgument, "m_max must be >= 0");
    g.require_vertex(x0);
    bool use_radial = false;
    switch (engine) {
        case EvolveEngine::Auto: use_radial = radial_applicable(g, x0); break;
        case EvolveEngine::Generic: use_radial = false; break;
        case EvolveEngine::RadialTree:
            if (!radial_applicable(g, x0))
                throw Error(ErrorCode::InvalidArgument,
                            "radial engine needs a regular tree rooted at '" + x0.label() + "'");
            use_radial = true;
            break;
    }
    return use_radial ? simulate_radial(g, x0, growth_constant, m_max, rng, opt, record_members)
                      : simulate_generic(g, x0, growth_constant, m_max, rng, opt, record_members);
}

std::vector<DecayPoint> decay_profile(const GraphFamily& g, const VertexId& x0,
                                      double growth_constant, int m_max, std::uint64_t trials,
                                      std::uint64_t master_seed, const PropagationOptions& opt,
                                      EvolveEngine engine, int n_threads) {
    if (trials < 1)
        throw Error(ErrorCode::InvalidArgument, "need at least one trial");
    const std::size_t cols = static_cast<std::size_t>(m_max) + 1;
    std::vector<double> sqrt_pi(trials * cols, 0.0);

    auto run_trial = [&](std::uint64_t trial) {
        RngStream rng = seed_stream(master_seed, trial);
        EvolvingTrajectory traj =
            simulate_trajectory(g, x0, growth_constant, m_max, rng, opt, engine, false);
        double* row = &sqrt_pi[trial * cols];
        for (const auto& rec : traj.steps)
            row[rec.m] = std::sqrt(rec.pi_mass);
        // absorbed trajectories keep 0 beyond their last record
    };
    parallel_trials(trials, n_threads, run_trial);

    std::vector<DecayPoint> out(cols);
    // m = 0 is deterministic: S_{T_0} = {x0}
    out[0] = {0, std::sqrt(static_cast<double>(g.degree(x0))), 0.0, trials};
    for (std::size_t m = 1; m < cols; ++m) {
        double sum = 0.0;
        std::uint64_t alive = 0;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            double v = sqrt_pi[trial * cols + m];
            sum += v;
            if (v > 0.0) ++alive;
        }
        const double n = static_cast<double>(trials);
        double mean = sum / n;
        // two-pass variance: constant samples (e.g. m = 0) must give exactly 0
        double ss = 0.0;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            double d = sqrt_pi[trial * cols + m] - mean;
            ss += d * d;
        }
        double var = trials > 1 ? ss / (n - 1.0) : 0.0;
        out[m] = {static_cast<int>(m), mean, std::sqrt(var / n), alive};
    }
    return out;
}

DualityEstimate duality_estimate(const GraphFamily& g, const VertexId& x0, const VertexId& y,
                                 int t, double growth_constant, std::uint64_t trials,
                                 std::uint64_t master_seed, const PropagationOptions& opt) {
    if (t < 0)
        throw Error(ErrorCode::InvalidArgument, "t must be >= 0");
    if (trials < 1)
        throw Error(ErrorCode::InvalidArgument, "need at least one trial");
    g.require_vertex(x0);
    g.require_vertex(y);

    DualityEstimate res;
    res.trials = trials;
    res.exact = distribution_at(g, x0, t, opt).value(y);

    const double pi_x0 = static_cast<double>(g.degree(x0));

    // Supersteps branch over few distinct states at fixed t, so levels and
    // remaining Q-masses are shared across trials.
    std::map<std::pair<std::string, int>, Levels> levels_cache;
    std::map<std::pair<std::string, int>, double> q_at_y_cache;

    std::vector<double> values;
    values.reserve(trials);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        RngStream rng = seed_stream(master_seed, trial);
        std::vector<VertexId> S{x0};
        std::string key = set_key(S);
        double pi = pi_x0;
        int T = 0;
        while (!S.empty()) {
            int gap = gap_length(pi, growth_constant);
            if (T + gap > t) break; // a(t) reached
            auto ck = std::make_pair(key, gap);
            auto it = levels_cache.find(ck);
            if (it == levels_cache.end())
                it = levels_cache.emplace(ck, superstep_levels(g, S, gap, opt)).first;
            double u = rng.uniform_open01();
            S = sample_level(it->second, u);
            key = set_key(S);
            pi = pi_of(g, S);
            T += gap;
        }
        double value = 0.0;
        if (!S.empty()) {
            auto qk = std::make_pair(key, t - T);
            auto it = q_at_y_cache.find(qk);
            if (it == q_at_y_cache.end()) {
                QMeasure q = q_measure(g, S, t - T, opt);
                it = q_at_y_cache.emplace(qk, q.measure.value(y)).first;
            }
            value = it->second / pi_x0;
        }
        values.push_back(value);
    }
    const double n = static_cast<double>(trials);
    double sum = 0.0;
    for (double v : values) sum += v;
    res.estimate = sum / n;
    double ss = 0.0;
    for (double v : values) {
        double d = v - res.estimate;
        ss += d * d;
    }
    double var = trials > 1 ? ss / (n - 1.0) : 0.0;
    res.std_error = std::sqrt(var / n);
    return res;
}

} // namespace evset
