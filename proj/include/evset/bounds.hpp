#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evset/evolve.hpp"
#include "evset/report.hpp"

namespace evset {

// Evidence that E_n >= c n held exactly for every listed start and every n
// in [n_lo, n_hi]. The decay and escape predicates only hold under the
// growth condition, so they refuse to run against an unverified constant.
struct EntropyCertificate {
    double c = 0.0;
    int n_lo = 0;
    int n_hi = 0;
    std::string graph;
    std::vector<std::string> start_labels;
    bool verified = false;
    std::vector<std::string> violations; // "x0=<label> n=<n> E_n=<value>"
};

EntropyCertificate certify_entropy_constant(const GraphFamily& g,
                                            const std::vector<VertexId>& starts, int n_lo,
                                            int n_hi, double c_target,
                                            const PropagationOptions& opt = {});

// alpha = 1 - C / (16 ln d), the one-superstep contraction factor.
double contraction_alpha(double c, int max_degree);

// p^n(x0, A^c) >= (C n - ln(2|A|)) / (n ln d). Vacuous when the right side
// is <= 0. include_sharper also reports the pre-simplification bound
// (C n - ln|A| - ln 2) / (ln|A^c| - ln|A|) in the note.
BoundReport check_escape_bound(const GraphFamily& g, const VertexId& x0, int n,
                               const std::vector<VertexId>& A, const EntropyCertificate& cert,
                               const PropagationOptions& opt = {}, bool include_sharper = false);

// Q_n(S, .) mass outside A >= pi(S) (C n - ln(2|A|)) / (n ln d). The note
// also carries the literal inside-A reading Q_n(S, A) for comparison.
BoundReport check_q_escape_bound(const GraphFamily& g, const std::vector<VertexId>& S, int n,
                                 const std::vector<VertexId>& A, const EntropyCertificate& cert,
                                 const PropagationOptions& opt = {});

// E_n <= h(q) + (1-q) ln|A| + q ln|A^c| with q the escape probability.
// Holds for every A with nonempty A and A^c; no entropy hypothesis.
BoundReport check_entropy_decomposition(const GraphFamily& g, const VertexId& x0, int n,
                                        const std::vector<VertexId>& A,
                                        const PropagationOptions& opt = {});

// 4 sqrt(x) >= ceil(ln(8x)) for x >= 1.
std::vector<BoundReport> check_ceil_log_inequality(const std::vector<double>& xs);

// E sqrt(R) <= 1 - E[R 1(R>=4)]/8 for nonnegative R with E R = 1.
// dist holds (value, probability) pairs.
BoundReport check_sqrt_moment_bound(const std::vector<std::pair<double, double>>& dist);

// Exact one-superstep decay: E sqrt(pi(S~)) <= alpha sqrt(pi(S)).
BoundReport check_superstep_decay(const GraphFamily& g, const std::vector<VertexId>& S,
                            const EntropyCertificate& cert, const PropagationOptions& opt = {});
BoundReport check_superstep_decay_radial(const GraphFamily& g, const radial::RadialSet& S,
                                   const EntropyCertificate& cert);

// Monte Carlo decay along trajectories: per-m estimate of E sqrt(pi(S_{T_m}))
// against alpha^m pi(x0), allowing 4 standard errors.
std::vector<BoundReport> check_trajectory_decay(const GraphFamily& g, const VertexId& x0,
                                       const EntropyCertificate& cert, int m_max,
                                       std::uint64_t trials, std::uint64_t master_seed,
                                       const PropagationOptions& opt = {},
                                       EvolveEngine engine = EvolveEngine::Auto,
                                       int n_threads = 1);

// Finite-horizon instance of the transience sum bound:
//   sum_{t<=T} p^t(x0,y)  vs  8 d ceil(1/C) sum_{i<=I} (E sqrt(pi(S_{T_i})) + 4 se).
// The left side only grows toward the infinite sum while the right side
// truncates the true bound, so a pass at large T and I is strong evidence
// and a fail is only indicative.
BoundReport check_transience_sum(const GraphFamily& g, const VertexId& x0, const VertexId& y,
                                 const EntropyCertificate& cert, int t_horizon, int i_horizon,
                                 std::uint64_t trials, std::uint64_t master_seed,
                                 const PropagationOptions& opt = {},
                                 EvolveEngine engine = EvolveEngine::Auto, int n_threads = 1);

// p^t(x0,y) against the trajectory-average estimator, within 4 standard
// errors (exact agreement required when the estimator is deterministic).
BoundReport duality_check(const GraphFamily& g, const VertexId& x0, const VertexId& y, int t,
                          double growth_constant, std::uint64_t trials,
                          std::uint64_t master_seed, const PropagationOptions& opt = {});

// Depth-class view of a tree vertex set: engages the exact radial fast
// paths when every depth class the set touches is fully contained in it.
std::optional<radial::RadialSet> radialize(const GraphFamily& g,
                                           const std::vector<VertexId>& set);

} // namespace evset
