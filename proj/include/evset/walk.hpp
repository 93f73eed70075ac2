#pragma once

#include <vector>

#include "evset/graph.hpp"
#include "evset/measure.hpp"

namespace evset {

struct PropagationOptions {
    // Exact propagation refuses to grow past this many stored entries.
    std::size_t support_cap = 5'000'000;
    // Entries below this absolute value are dropped after each step, with
    // the dropped mass reported and NOT renormalized away. Off by default:
    // pruning biases entropy, so it has to be asked for.
    double prune_epsilon = 0.0;
};

struct PropagationStats {
    double pruned_mass = 0.0;
    int steps = 0;
};

// One step of simple random walk: mu'(y) = sum_{x ~ y} mu(x)/degree(x).
SparseMeasure step_distribution(const GraphFamily& g, const SparseMeasure& mu,
                                const PropagationOptions& opt = {},
                                PropagationStats* stats = nullptr);

// p^n(x0, .) by n-fold exact propagation of the point mass at x0.
SparseMeasure distribution_at(const GraphFamily& g, const VertexId& x0, int n,
                              const PropagationOptions& opt = {},
                              PropagationStats* stats = nullptr);

// Shannon entropy in nats of a probability distribution; 0 ln 0 := 0.
double entropy(const SparseMeasure& mu);

struct EntropyPoint {
    int n = 0;
    double entropy_nats = 0.0;
    double support = 0.0; // |support(X_n)|; double so the lumped tree engine can report huge counts
};

struct EntropySeries {
    std::vector<EntropyPoint> points; // n = 0..n_max
};

EntropySeries entropy_series(const GraphFamily& g, const VertexId& x0, int n_max,
                             const PropagationOptions& opt = {},
                             PropagationStats* stats = nullptr);

// p^n(x0, A^c) with A^c = support(X_n) \ A, computed exactly.
double escape_probability(const GraphFamily& g, const VertexId& x0, int n,
                          const std::vector<VertexId>& A,
                          const PropagationOptions& opt = {});

struct GreenPoint {
    int t = 0;
    double p_return = 0.0;
    double partial_sum = 0.0; // sum_{s<=t} p^s(x0,x0)
};

// Partial sums of the return series; finiteness of the limit certifies
// transience, unbounded growth recurrence.
std::vector<GreenPoint> green_partial_sum(const GraphFamily& g, const VertexId& x0,
                                          int t_max, const PropagationOptions& opt = {},
                                          PropagationStats* stats = nullptr);

} // namespace evset
