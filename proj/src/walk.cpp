#include "evset/walk.hpp"

#include <cmath>
#include <string>

#include "evset/error.hpp"

namespace evset {

SparseMeasure step_distribution(const GraphFamily& g, const SparseMeasure& mu,
                                const PropagationOptions& opt, PropagationStats* stats) {
    SparseMeasure next;
    next.reserve(mu.support_size() * 2);
    std::vector<VertexId> nb;
    for (const auto& [x, w] : mu.entries()) {
        if (w < 0.0)
            throw Error(ErrorCode::InvalidArgument, "negative mass at '" + x.label() + "'");
        g.adjacent_into(x, nb);
        const double share = w / static_cast<double>(nb.size());
        for (const auto& y : nb) {
            next.add(y, share);
            if (next.support_size() > opt.support_cap)
                throw Error(ErrorCode::SupportCapExceeded,
                            "support exceeds cap of " + std::to_string(opt.support_cap) +
                                " entries; raise the cap or use Monte Carlo");
        }
    }
    if (opt.prune_epsilon > 0.0) {
        SparseMeasure pruned;
        pruned.reserve(next.support_size());
        double dropped = 0.0;
        for (const auto& [y, w] : next.entries()) {
            if (w < opt.prune_epsilon) dropped += w;
            else pruned.add(y, w);
        }
        if (stats) stats->pruned_mass += dropped;
        next = std::move(pruned);
    }
    if (stats) ++stats->steps;
    return next;
}

SparseMeasure distribution_at(const GraphFamily& g, const VertexId& x0, int n,
                              const PropagationOptions& opt, PropagationStats* stats) {
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, "step count must be >= 0");
    g.require_vertex(x0);
    SparseMeasure mu = SparseMeasure::point_mass(x0);
    for (int t = 0; t < n; ++t)
        mu = step_distribution(g, mu, opt, stats);
    return mu;
}

double entropy(const SparseMeasure& mu) {
    if (!mu.is_probability())
        throw Error(ErrorCode::NotNormalized,
                    "entropy needs a probability distribution, total mass is " +
                        std::to_string(mu.total_mass()));
    double e = 0.0;
    for (const auto& [v, p] : mu.entries())
        if (p > 0.0) e -= p * std::log(p);
    return e;
}

EntropySeries entropy_series(const GraphFamily& g, const VertexId& x0, int n_max,
                             const PropagationOptions& opt, PropagationStats* stats) {
    if (n_max < 0)
        throw Error(ErrorCode::InvalidArgument, "n_max must be >= 0");
    g.require_vertex(x0);
    EntropySeries series;
    series.points.reserve(static_cast<std::size_t>(n_max) + 1);
    SparseMeasure mu = SparseMeasure::point_mass(x0);
    series.points.push_back({0, 0.0, 1.0});
    for (int n = 1; n <= n_max; ++n) {
        mu = step_distribution(g, mu, opt, stats);
        double e;
        if (opt.prune_epsilon > 0.0) {
            // pruned series are sub-probability by the reported pruned mass;
            // the biased raw sum is what opting in buys
            e = 0.0;
            for (const auto& [v, p] : mu.entries())
                if (p > 0.0) e -= p * std::log(p);
        } else {
            e = entropy(mu);
        }
        series.points.push_back({n, e, static_cast<double>(mu.support_size())});
    }
    return series;
}

double escape_probability(const GraphFamily& g, const VertexId& x0, int n,
                          const std::vector<VertexId>& A, const PropagationOptions& opt) {
    SparseMeasure mu = distribution_at(g, x0, n, opt);
    double inside = 0.0;
    for (const auto& a : A)
        inside += mu.value(a);
    double q = 1.0 - inside;
    if (q < 0.0) q = 0.0;
    if (q > 1.0) q = 1.0;
    return q;
}

std::vector<GreenPoint> green_partial_sum(const GraphFamily& g, const VertexId& x0,
                                          int t_max, const PropagationOptions& opt,
                                          PropagationStats* stats) {
    if (t_max < 0)
        throw Error(ErrorCode::InvalidArgument, "t_max must be >= 0");
    g.require_vertex(x0);
    std::vector<GreenPoint> out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    SparseMeasure mu = SparseMeasure::point_mass(x0);
    double sum = 1.0;
    out.push_back({0, 1.0, 1.0});
    for (int t = 1; t <= t_max; ++t) {
        mu = step_distribution(g, mu, opt, stats);
        double p = mu.value(x0);
        sum += p;
        out.push_back({t, p, sum});
    }
    return out;
}

} // namespace evset
