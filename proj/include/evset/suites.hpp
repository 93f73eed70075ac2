#pragma once

#include <cstdint>
#include <vector>

#include "evset/bounds.hpp"

namespace evset {

// Random mean-1 nonnegative discrete distribution: support size <= max_support,
// values drawn in [0, max_value] then rescaled to mean exactly 1.
std::vector<std::pair<double, double>> random_mean_one_distribution(RngStream& rng,
                                                                    int max_support = 20,
                                                                    double max_value = 16.0);

// Log-spaced grid on [lo, hi], inclusive endpoints.
std::vector<double> log_grid(double lo, double hi, int points);

// Distinct nonempty depth-symmetric evolving-set states on a regular tree:
// balls around the root plus states visited by seeded trajectories.
std::vector<radial::RadialSet> sample_radial_states(const GraphFamily& tree, double c, int want,
                                                    std::uint64_t seed);

// Distinct nonempty generic evolving-set states reached from x0.
std::vector<std::vector<VertexId>> sample_generic_states(const GraphFamily& g, const VertexId& x0,
                                                         double c, int want, std::uint64_t seed,
                                                         const PropagationOptions& opt = {});

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::uint64_t trials = 10'000;
    int n_threads = 1;
    int cert_lo = 5;
    int cert_hi = 150;
    int decay_states = 20;
    int m_max = 10;
    int transience_t = 40;
    int transience_i = 30;
    PropagationOptions prop;
};

// Hypothesis-free inequalities; every report must pass on every input.
std::vector<BoundReport> run_unconditional_suite(int chain_cases, int sqrt_moment_cases,
                                                 int grid_points, std::uint64_t seed,
                                                 const PropagationOptions& opt = {});

// Entropy certification plus everything conditional on it (escape bounds,
// superstep decay, trajectory decay, the transience sum). If certification
// fails, only its record is returned.
std::vector<BoundReport> run_conditional_suite(const GraphFamily& g, const VertexId& x0, double c,
                                               const SuiteOptions& opt);

// Walk-vs-evolving-set duality at exact horizons.
std::vector<BoundReport> run_duality_suite(const GraphFamily& g, const VertexId& x0, double c,
                                           std::uint64_t trials, std::uint64_t seed,
                                           const PropagationOptions& opt = {});

// Report for a certification outcome (pass iff verified).
BoundReport certificate_report(const EntropyCertificate& cert);

} // namespace evset
