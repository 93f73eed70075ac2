#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "evset/walk.hpp"

namespace evset::radial {

// Exact depth-class quotient of the infinite d-regular tree around its root.
//
// The partition of the tree into depth classes {k = 0, 1, 2, ...} is
// equitable for simple random walk: every vertex at depth k >= 1 has one
// neighbor at depth k-1 and d-1 at depth k+1, the root has d at depth 1.
// Walk distributions started at the root, and Q-measures of depth-symmetric
// sets, are uniform within classes for all time, so class totals evolve by
// the lumped birth-death kernel and every quantity below is exact.
//
// This is what makes the tree computable at evolving-set scale: the vertex
// support after L steps is ~ d (d-1)^L, but the class support is L+1.
//
// Masses are carried in long double: class pi-masses grow like (d-1)^k and
// overflow double near k ~ 1020 for d = 3.
struct TreeQuotient {
    int d = 3;

    // number of vertices at depth k
    long double class_count(int k) const;
    // pi(class k) = d * class_count(k)
    long double class_pi(int k) const;
    double ln_class_count(int k) const;
};

inline constexpr int kDefaultDepthCap = 4000;

// One SRW step of a class-total vector (probability or Q-mass; both stay
// uniform within classes, so both evolve by the same kernel).
void step(const TreeQuotient& q, std::vector<long double>& v, int depth_cap = kDefaultDepthCap);

EntropySeries entropy_series_root(const TreeQuotient& q, int n_max);

std::vector<GreenPoint> green_from_root(const TreeQuotient& q, int t_max);

// p^t(root, y) for any y at depth k.
double p_root_to_depth(const TreeQuotient& q, int t, int k);

// 1 - P(X_n within distance r of the root), i.e. escape from A = ball(root, r).
double escape_probability_ball(const TreeQuotient& q, int n, int r);

// A depth-symmetric vertex set: a finite union of full depth classes.
// Distinct classes, ascending. Empty vector = empty set.
struct RadialSet {
    std::vector<int> classes;
    bool empty() const { return classes.empty(); }
};

long double pi_mass(const TreeQuotient& q, const RadialSet& s);
long double vertex_count(const TreeQuotient& q, const RadialSet& s);

// Q_t(S, .) as class totals; index k = total Q-mass on depth class k.
std::vector<long double> q_class_masses(const TreeQuotient& q, const RadialSet& s, int t,
                                        int depth_cap = kDefaultDepthCap);

// Level-set decomposition of one superstep from a depth-symmetric state:
// distinct ratios Q_L(S, y)/pi(y) descending, with the nested candidate
// sets they cut out. Ratios within 1e-12 relative merge into one level.
struct RadialLevels {
    std::vector<int> class_order;       // classes sorted by ratio, descending
    std::vector<std::size_t> level_end; // classes [0, level_end[j]) form level j's set
    std::vector<double> thresholds;     // distinct ratios r_1 > r_2 > ... > 0
    std::vector<long double> cum_pi;    // pi(A_j)
    long double origin_pi = 0.0L;       // pi(S)
    std::size_t s_star_index = npos;    // largest j with pi(A_j) < 4 pi(S)

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

RadialLevels superstep_levels(const TreeQuotient& q, const RadialSet& s, int gap,
                              int depth_cap = kDefaultDepthCap);

// Sampled state for threshold u: largest level with threshold >= u.
RadialSet sample(const RadialLevels& levels, double u);

// Exact E[f(pi(S~))] over the uniform threshold.
long double expected_functional(const RadialLevels& levels,
                                const std::function<long double(long double)>& f);

} // namespace evset::radial
