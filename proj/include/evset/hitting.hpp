#pragma once

#include <cstdint>
#include <vector>

#include "evset/rng.hpp"

namespace evset {

// Small explicit graphs as index adjacency lists, for hitting-time solves.
using AdjacencyList = std::vector<std::vector<int>>;

// Full binary tree of the given height in breadth-first order
// (children of i are 2i+1, 2i+2); 2^(height+1) - 1 vertices.
AdjacencyList full_binary_tree(int height);

AdjacencyList path_graph(int n);

// Expected hitting times E_v[time to reach target] for every start v,
// from the linear system (I - P off target) h = 1, solved exactly.
std::vector<double> expected_hitting_times(const AdjacencyList& adj, int target);

struct HittingExtremes {
    double max_expected = 0.0;
    int argmax_start = 0;
    int argmax_target = 0;
};

// Max over all (start, target) pairs; one solve per target.
HittingExtremes max_expected_hitting_time(const AdjacencyList& adj);

// Monte Carlo estimate of E_start[hit target], for graphs past exact scale.
double mc_expected_hitting_time(const AdjacencyList& adj, int start, int target,
                                std::uint64_t trials, std::uint64_t master_seed);

} // namespace evset
