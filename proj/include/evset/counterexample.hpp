#pragma once

#include <cstdint>
#include <vector>

#include "evset/bounds.hpp"
#include "evset/walk.hpp"

namespace evset {

// The pendant tower graph: Z+ backbone of length n_max, a full binary tree
// of effective height min(2^^n, h_max) hung off each backbone vertex n.
// Recurrent for every truncation; entropy still grows for every start, at a
// start-dependent rate — the object under study here is that dependence.
GraphFamily build_counterexample(int h_max, int n_max);

struct StartProfile {
    VertexId start;
    int tree_depth = 0; // 0 on the backbone; 1 + path length inside a tree
    int window_lo = 0;
    int window_hi = 0;
    double rate = 0.0; // min over the window of E_n / n
    EntropySeries series;
};

// Exact per-start entropy series with the fitted rate over [n_max/2, n_max].
std::vector<StartProfile> per_start_entropy_rates(const GraphFamily& g,
                                                  const std::vector<VertexId>& starts, int n_max,
                                                  const PropagationOptions& opt = {});

struct BackboneProjection {
    std::uint64_t moves = 0;      // interior backbone observations that changed position
    std::uint64_t up_moves = 0;
    std::uint64_t lazy_holds = 0; // tree excursions returning to the same vertex
    double up_fraction = 0.0;
    double std_error = 0.0;
    bool pass = false; // up fraction within 4 sigma of 1/2
};

// Watch the walk at its backbone visit times: interior one-step transitions
// must be +1/-1 with equal frequency (the projected walk is a lazy simple
// random walk on the line).
BackboneProjection backbone_projection_check(const GraphFamily& g, const VertexId& x0,
                                             std::uint64_t steps, std::uint64_t seed);

// Effective resistance along the backbone between vertices a and b: the
// pendant trees are dead ends and carry no current, so the series law gives
// |b - a| unit edges.
double backbone_line_resistance(const GraphFamily& g, int a, int b);

struct RecurrencePoint {
    std::int64_t horizon = 0;
    double frequency = 0.0;
    double std_error = 0.0;
};

struct RecurrenceDiagnostics {
    std::vector<RecurrencePoint> returns;
    std::vector<GreenPoint> green;
    BackboneProjection projection;
    double resistance_across_backbone = 0.0;
};

RecurrenceDiagnostics recurrence_diagnostics(const GraphFamily& g, const VertexId& x0,
                                             const std::vector<std::int64_t>& horizons,
                                             std::uint64_t trials, int green_t_max,
                                             std::uint64_t seed,
                                             const PropagationOptions& opt = {},
                                             int n_threads = 1);

// For full binary trees with i vertices: max over (start, target) of the
// expected hitting time, exactly, against the 2 i^2 bound.
std::vector<BoundReport> check_hitting_time_bound(const std::vector<int>& tree_sizes);

// Depth increments at interior tree vertices are +1 w.p. 2/3, -1 w.p. 1/3
// (two children, one parent); leaf and root steps are excluded from the
// tally. MC sanity check of the sampler, within 4 sigma.
BoundReport drift_check(const GraphFamily& g, int backbone_n, std::uint64_t interior_samples,
                        std::uint64_t seed);

} // namespace evset
