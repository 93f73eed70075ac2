#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "evset/graph.hpp"
#include "evset/rng.hpp"

namespace evset {

// Endpoint of one n-step simple random walk.
VertexId mc_walk_endpoint(const GraphFamily& g, const VertexId& x0, int n, RngStream& rng);

struct ReturnFrequency {
    double frequency = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t returned = 0;
};

// Fraction of walks that revisit x0 by step n_max. Each trial uses the
// stream seed_stream(master_seed, trial); walks stop at first return, so
// the estimate is exact for the "revisit by n_max" event. Aggregation is
// in trial order regardless of worker count.
ReturnFrequency mc_return_frequency(const GraphFamily& g, const VertexId& x0,
                                    std::int64_t n_max, std::uint64_t trials,
                                    std::uint64_t master_seed, int n_threads = 1);

// Runs fn(trial) for trial = 0..trials-1, split contiguously over up to
// n_threads workers. Callers collect per-trial results into preallocated
// slots and reduce in index order afterwards, which keeps every statistic
// independent of the worker count.
void parallel_trials(std::uint64_t trials, int n_threads,
                     const std::function<void(std::uint64_t)>& fn);

} // namespace evset
