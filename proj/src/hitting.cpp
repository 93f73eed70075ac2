#include "evset/hitting.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "evset/error.hpp"

namespace evset {

AdjacencyList full_binary_tree(int height) {
    if (height < 0)
        throw Error(ErrorCode::InvalidArgument, "height must be >= 0");
    const int n = (1 << (height + 1)) - 1;
    AdjacencyList adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        int left = 2 * v + 1, right = 2 * v + 2;
        if (left < n) {
            adj[static_cast<std::size_t>(v)].push_back(left);
            adj[static_cast<std::size_t>(left)].push_back(v);
        }
        if (right < n) {
            adj[static_cast<std::size_t>(v)].push_back(right);
            adj[static_cast<std::size_t>(right)].push_back(v);
        }
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

AdjacencyList path_graph(int n) {
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "path needs n >= 1");
    AdjacencyList adj(static_cast<std::size_t>(n));
    for (int v = 0; v + 1 < n; ++v) {
        adj[static_cast<std::size_t>(v)].push_back(v + 1);
        adj[static_cast<std::size_t>(v + 1)].push_back(v);
    }
    return adj;
}

std::vector<double> expected_hitting_times(const AdjacencyList& adj, int target) {
    const int n = static_cast<int>(adj.size());
    if (target < 0 || target >= n)
        throw Error(ErrorCode::InvalidArgument, "target out of range");

    // unknowns: h_v for v != target; h_v - sum_{u ~ v, u != target} h_u / deg(v) = 1
    std::vector<int> row_of(static_cast<std::size_t>(n), -1);
    int rows = 0;
    for (int v = 0; v < n; ++v)
        if (v != target) row_of[static_cast<std::size_t>(v)] = rows++;

    Eigen::SparseMatrix<double> A(rows, rows);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(rows) * 4);
    for (int v = 0; v < n; ++v) {
        if (v == target) continue;
        const int r = row_of[static_cast<std::size_t>(v)];
        triplets.emplace_back(r, r, 1.0);
        const double inv_deg = 1.0 / static_cast<double>(adj[static_cast<std::size_t>(v)].size());
        for (int u : adj[static_cast<std::size_t>(v)]) {
            if (u == target) continue;
            triplets.emplace_back(r, row_of[static_cast<std::size_t>(u)], -inv_deg);
        }
    }
    A.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.analyzePattern(A);
    solver.factorize(A);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::BadInput, "hitting-time system is singular (graph disconnected?)");
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(rows);
    Eigen::VectorXd h = solver.solve(rhs);

    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v)
        if (v != target) out[static_cast<std::size_t>(v)] = h[row_of[static_cast<std::size_t>(v)]];
    return out;
}

HittingExtremes max_expected_hitting_time(const AdjacencyList& adj) {
    HittingExtremes ext;
    const int n = static_cast<int>(adj.size());
    for (int target = 0; target < n; ++target) {
        auto h = expected_hitting_times(adj, target);
        for (int v = 0; v < n; ++v) {
            if (h[static_cast<std::size_t>(v)] > ext.max_expected) {
                ext.max_expected = h[static_cast<std::size_t>(v)];
                ext.argmax_start = v;
                ext.argmax_target = target;
            }
        }
    }
    return ext;
}

double mc_expected_hitting_time(const AdjacencyList& adj, int start, int target,
                                std::uint64_t trials, std::uint64_t master_seed) {
    if (trials < 1)
        throw Error(ErrorCode::InvalidArgument, "need at least one trial");
    double total = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        RngStream rng = seed_stream(master_seed, trial);
        int v = start;
        std::uint64_t steps = 0;
        while (v != target) {
            const auto& nb = adj[static_cast<std::size_t>(v)];
            v = nb[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(nb.size())))];
            ++steps;
        }
        total += static_cast<double>(steps);
    }
    return total / static_cast<double>(trials);
}

} // namespace evset
