#include "evset/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evset/error.hpp"
#include "evset/hitting.hpp"
#include "evset/io.hpp"
#include "evset/mc.hpp"

namespace evset {

GraphFamily build_counterexample(int h_max, int n_max) {
    return GraphFamily::pendant_tower(h_max, n_max);
}

std::vector<StartProfile> per_start_entropy_rates(const GraphFamily& g,
                                                  const std::vector<VertexId>& starts, int n_max,
                                                  const PropagationOptions& opt) {
    if (n_max < 2)
        throw Error(ErrorCode::InvalidArgument, "rate window needs n_max >= 2");
    std::vector<StartProfile> out;
    out.reserve(starts.size());
    for (const auto& x0 : starts) {
        g.require_vertex(x0);
        StartProfile prof;
        prof.start = x0;
        prof.tree_depth = (x0.kind == FamilyKind::PendantTower && x0.b == 1)
                              ? 1 + static_cast<int>(x0.path.size())
                              : 0;
        prof.window_lo = n_max / 2;
        prof.window_hi = n_max;
        prof.series = entropy_series(g, x0, n_max, opt);
        double rate = std::numeric_limits<double>::infinity();
        for (int n = prof.window_lo; n <= prof.window_hi; ++n)
            rate = std::min(rate,
                            prof.series.points[static_cast<std::size_t>(n)].entropy_nats / n);
        prof.rate = rate;
        out.push_back(std::move(prof));
    }
    return out;
}

BackboneProjection backbone_projection_check(const GraphFamily& g, const VertexId& x0,
                                             std::uint64_t steps, std::uint64_t seed) {
    if (g.kind() != FamilyKind::PendantTower)
        throw Error(ErrorCode::InvalidArgument, "projection check needs the pendant tower graph");
    g.require_vertex(x0);

    BackboneProjection res;
    RngStream rng = seed_stream(seed, 0);
    const int n_back = g.backbone_length();

    VertexId v = x0;
    std::int64_t last_backbone = (v.b == 0) ? v.a : -1;
    std::vector<VertexId> nb;
    for (std::uint64_t t = 0; t < steps; ++t) {
        g.adjacent_into(v, nb);
        v = nb[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(nb.size())))];
        if (v.b != 0) continue; // not a backbone visit
        const std::int64_t pos = v.a;
        if (last_backbone >= 0 && last_backbone > 1 && last_backbone < n_back) {
            if (pos == last_backbone) {
                ++res.lazy_holds;
            } else {
                ++res.moves;
                if (pos == last_backbone + 1) ++res.up_moves;
            }
        }
        last_backbone = pos;
    }
    if (res.moves > 0) {
        res.up_fraction = static_cast<double>(res.up_moves) / static_cast<double>(res.moves);
        res.std_error = std::sqrt(0.25 / static_cast<double>(res.moves));
        res.pass = std::abs(res.up_fraction - 0.5) <= 4.0 * res.std_error;
    }
    return res;
}

double backbone_line_resistance(const GraphFamily& g, int a, int b) {
    if (g.kind() != FamilyKind::PendantTower)
        throw Error(ErrorCode::InvalidArgument, "line resistance needs the pendant tower graph");
    if (a < 1 || a > g.backbone_length() || b < 1 || b > g.backbone_length())
        throw Error(ErrorCode::InvalidVertex, "backbone index out of range");
    // unit resistors in series along the only current-carrying path
    return static_cast<double>(std::abs(b - a));
}

RecurrenceDiagnostics recurrence_diagnostics(const GraphFamily& g, const VertexId& x0,
                                             const std::vector<std::int64_t>& horizons,
                                             std::uint64_t trials, int green_t_max,
                                             std::uint64_t seed, const PropagationOptions& opt,
                                             int n_threads) {
    RecurrenceDiagnostics diag;
    std::uint64_t stream_base = 0;
    for (std::int64_t horizon : horizons) {
        auto freq = mc_return_frequency(g, x0, horizon, trials, derive_seed(seed, stream_base++),
                                        n_threads);
        diag.returns.push_back({horizon, freq.frequency, freq.std_error});
    }
    if (green_t_max > 0)
        diag.green = green_partial_sum(g, x0, green_t_max, opt);
    if (g.kind() == FamilyKind::PendantTower) {
        // interior-backbone visits are rare when tall trees dominate the
        // stationary measure; scale the watch window with the graph
        std::uint64_t steps = std::max<std::uint64_t>(200'000, 40 * g.pendant_vertex_count());
        diag.projection =
            backbone_projection_check(g, x0, steps, derive_seed(seed, stream_base++));
        diag.resistance_across_backbone = backbone_line_resistance(g, 1, g.backbone_length());
    }
    return diag;
}

std::vector<BoundReport> check_hitting_time_bound(const std::vector<int>& tree_sizes) {
    std::vector<BoundReport> out;
    out.reserve(tree_sizes.size());
    for (int i : tree_sizes) {
        if (i < 1 || (i & (i + 1)) != 0)
            throw Error(ErrorCode::InvalidArgument,
                        "full binary tree needs 2^(h+1)-1 vertices, got " + std::to_string(i));
        int height = 0;
        while ((1 << (height + 1)) - 1 < i) ++height;
        double max_hit = 0.0;
        std::string where;
        if (i == 1) {
            where = "single vertex";
        } else {
            auto ext = max_expected_hitting_time(full_binary_tree(height));
            max_hit = ext.max_expected;
            where = "start=" + std::to_string(ext.argmax_start) +
                    " target=" + std::to_string(ext.argmax_target);
        }
        const double bound = 2.0 * static_cast<double>(i) * static_cast<double>(i);
        out.push_back(make_report("hitting_time_bound",
                                  "full binary tree i=" + std::to_string(i), max_hit, bound,
                                  bound - max_hit, 0.0, false, where));
    }
    return out;
}

BoundReport drift_check(const GraphFamily& g, int backbone_n, std::uint64_t interior_samples,
                        std::uint64_t seed) {
    if (g.kind() != FamilyKind::PendantTower)
        throw Error(ErrorCode::InvalidArgument, "drift check needs the pendant tower graph");
    if (backbone_n < 1 || backbone_n > g.backbone_length())
        throw Error(ErrorCode::InvalidVertex, "backbone index out of range");
    const int h = g.tower_heights()[static_cast<std::size_t>(backbone_n - 1)];
    if (h < 2)
        throw Error(ErrorCode::InvalidArgument,
                    "tree T_" + std::to_string(backbone_n) + " has no interior vertices");

    VertexId root;
    root.kind = FamilyKind::PendantTower;
    root.a = backbone_n;
    root.b = 1;
    RngStream rng = seed_stream(seed, 0);

    VertexId v = root;
    std::vector<VertexId> nb;
    std::uint64_t up = 0, seen = 0;
    std::uint64_t step_cap = interior_samples * 50 + 1'000'000;
    for (std::uint64_t t = 0; t < step_cap && seen < interior_samples; ++t) {
        // interior of T_{backbone_n} only: other trees have other heights
        const bool interior = v.b == 1 && v.a == backbone_n && !v.path.empty() &&
                              v.path.size() < static_cast<std::size_t>(h);
        const std::size_t depth_before = v.path.size();
        g.adjacent_into(v, nb);
        v = nb[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(nb.size())))];
        if (!interior) continue;
        ++seen;
        if (v.b == 1 && v.path.size() > depth_before) ++up;
    }
    const double n = static_cast<double>(seen);
    const double up_fraction = seen > 0 ? static_cast<double>(up) / n : 0.0;
    const double sigma = seen > 0 ? std::sqrt((2.0 / 9.0) / n) : 0.0;
    const double diff = std::abs(up_fraction - 2.0 / 3.0);
    std::string inputs = "graph=" + g.description() + " tree=" + std::to_string(backbone_n) +
                         " samples=" + std::to_string(seen) + " seed=" + std::to_string(seed);
    std::string note = "up_fraction=" + fmt17(up_fraction) + " sigma=" + fmt17(sigma);
    return make_report("tree_drift", inputs, diff, 4.0 * sigma, 4.0 * sigma - diff, 0.0, false,
                       note);
}

} // namespace evset
