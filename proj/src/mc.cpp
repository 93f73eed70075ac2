#include "evset/mc.hpp"

#include <cmath>
#include <thread>

#include "evset/error.hpp"

namespace evset {

VertexId mc_walk_endpoint(const GraphFamily& g, const VertexId& x0, int n, RngStream& rng) {
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, "walk length must be >= 0");
    g.require_vertex(x0);
    VertexId v = x0;
    std::vector<VertexId> nb;
    for (int t = 0; t < n; ++t) {
        g.adjacent_into(v, nb);
        v = nb[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(nb.size())))];
    }
    return v;
}

void parallel_trials(std::uint64_t trials, int n_threads,
                     const std::function<void(std::uint64_t)>& fn) {
    if (n_threads <= 1 || trials < 2) {
        for (std::uint64_t i = 0; i < trials; ++i) fn(i);
        return;
    }
    const std::uint64_t workers =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(n_threads), trials);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = trials * w / workers;
        const std::uint64_t hi = trials * (w + 1) / workers;
        pool.emplace_back([lo, hi, &fn]() {
            for (std::uint64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

ReturnFrequency mc_return_frequency(const GraphFamily& g, const VertexId& x0,
                                    std::int64_t n_max, std::uint64_t trials,
                                    std::uint64_t master_seed, int n_threads) {
    if (trials < 1)
        throw Error(ErrorCode::InvalidArgument, "need at least one trial");
    g.require_vertex(x0);

    std::vector<unsigned char> hit(trials, 0);
    parallel_trials(trials, n_threads, [&](std::uint64_t trial) {
        RngStream rng = seed_stream(master_seed, trial);
        VertexId v = x0;
        std::vector<VertexId> nb;
        for (std::int64_t t = 0; t < n_max; ++t) {
            g.adjacent_into(v, nb);
            v = nb[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(nb.size())))];
            if (v == x0) {
                hit[trial] = 1;
                break;
            }
        }
    });

    ReturnFrequency out;
    out.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i)
        out.returned += hit[i];
    out.frequency = static_cast<double>(out.returned) / static_cast<double>(trials);
    out.std_error =
        std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(trials));
    return out;
}

} // namespace evset
