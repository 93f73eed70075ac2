#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evset/radial.hpp"
#include "evset/rng.hpp"
#include "evset/walk.hpp"

namespace evset {

// Q_t(S, .) = sum_{x in S} degree(x) p^t(x, .), the degree-weighted t-step
// mass. Total mass is pi(S) for every t; 0 <= Q_t(S,y) <= degree(y).
struct QMeasure {
    SparseMeasure measure;
    int steps = 0;
    double origin_pi = 0.0; // pi(S)
};

QMeasure q_measure(const GraphFamily& g, const std::vector<VertexId>& S, int t,
                   const PropagationOptions& opt = {});

// Gap schedule L = 2 ceil(ln(8 pi(S)) / C); always even and >= 2 when
// pi(S) >= 1. Requesting a gap for the empty set is an error.
int gap_length(double pi_mass, double growth_constant);

// One superstep outcome for threshold u: {y : Q_L(S,y) >= u degree(y)},
// sorted by canonical label.
std::vector<VertexId> superstep_sample(const GraphFamily& g, const std::vector<VertexId>& S,
                                       int gap, double u, const PropagationOptions& opt = {});

// Level-set decomposition of a superstep: candidate outcomes are the nested
// sets cut out by the distinct ratios Q_L(S,y)/degree(y), descending.
// Ratios within 1e-12 relative merge into one level (propagation rounding
// must not split analytically equal levels). Level j's set is
// vertex_order[0, level_end[j]); thresholds[j] is its ratio, cum_pi[j] its
// pi-mass.
struct Levels {
    std::vector<VertexId> vertex_order;
    std::vector<std::size_t> level_end;
    std::vector<double> thresholds;
    std::vector<double> cum_pi;
    double origin_pi = 0.0;
    std::size_t s_star_index = npos; // largest level with pi < 4 pi(S)

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

Levels superstep_levels(const GraphFamily& g, const std::vector<VertexId>& S, int gap,
                        const PropagationOptions& opt = {});

// Sampled outcome for threshold u (label-sorted); empty above the top ratio.
std::vector<VertexId> sample_level(const Levels& levels, double u);

// Exact E[f(pi(S~))] over the uniform threshold:
// sum_j (r_j - r_{j+1}) f(pi(A_j)) + (1 - r_1) f(0).
double expected_functional(const Levels& levels, const std::function<double(double)>& f);

// ---------------------------------------------------------------------------
// trajectories

enum class EvolveEngine {
    Auto,       // radial quotient on a regular tree rooted at its root, generic otherwise
    Generic,    // sparse vertex-set states
    RadialTree, // depth-class states (regular tree from the root only)
};

struct SuperstepRecord {
    int m = 0;
    std::int64_t time = 0; // T_m
    int gap = 0;           // L_m; 0 on the initial record
    double u = 0.0;        // U_m; 0 on the initial record
    double set_size = 0.0;
    double pi_mass = 0.0;
    std::vector<std::string> members; // filled only when members are recorded
};

struct EvolvingTrajectory {
    std::vector<SuperstepRecord> steps; // index m = 0..; stops at m_max or absorption
    double growth_constant = 0.0;
    bool truncated = false; // support cap hit mid-trajectory
};

EvolvingTrajectory simulate_trajectory(const GraphFamily& g, const VertexId& x0,
                                       double growth_constant, int m_max, RngStream& rng,
                                       const PropagationOptions& opt = {},
                                       EvolveEngine engine = EvolveEngine::Auto,
                                       bool record_members = false);

// Whether Auto dispatch uses the radial quotient for (g, x0).
bool radial_applicable(const GraphFamily& g, const VertexId& x0);

struct DecayPoint {
    int m = 0;
    double mean_sqrt_pi = 0.0;
    double std_error = 0.0;
    std::uint64_t alive = 0; // trajectories with nonempty S_{T_m}
};

// Monte Carlo estimates of E sqrt(pi(S_{T_m})) over independent trajectories
// (stream = seed_stream(master_seed, trial)); absorbed trajectories
// contribute 0 from their death time on. The m=0 entry is the exact
// sqrt(degree(x0)) with zero standard error.
std::vector<DecayPoint> decay_profile(const GraphFamily& g, const VertexId& x0,
                                      double growth_constant, int m_max, std::uint64_t trials,
                                      std::uint64_t master_seed,
                                      const PropagationOptions& opt = {},
                                      EvolveEngine engine = EvolveEngine::Auto,
                                      int n_threads = 1);

struct DualityEstimate {
    double exact = 0.0;     // p^t(x0, y)
    double estimate = 0.0;  // mean of Q_{t-T_a(t)}(S_{T_a(t)}, y)/pi(x0)
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

// Trajectory-average estimator of p^t(x0,y): unrolls supersteps only as far
// as time t requires, evaluating the remaining Q-mass at y exactly.
DualityEstimate duality_estimate(const GraphFamily& g, const VertexId& x0, const VertexId& y,
                                 int t, double growth_constant, std::uint64_t trials,
                                 std::uint64_t master_seed, const PropagationOptions& opt = {});

} // namespace evset
