#include "evset/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evset/error.hpp"

namespace evset::radial {

long double TreeQuotient::class_count(int k) const {
    if (k == 0) return 1.0L;
    return static_cast<long double>(d) * powl(static_cast<long double>(d - 1), k - 1);
}

long double TreeQuotient::class_pi(int k) const {
    return static_cast<long double>(d) * class_count(k);
}

double TreeQuotient::ln_class_count(int k) const {
    if (k == 0) return 0.0;
    return std::log(static_cast<double>(d)) + (k - 1) * std::log(static_cast<double>(d - 1));
}

void step(const TreeQuotient& q, std::vector<long double>& v, int depth_cap) {
    const int kmax = static_cast<int>(v.size()) - 1;
    if (kmax + 1 > depth_cap)
        throw Error(ErrorCode::SupportCapExceeded,
                    "radial support exceeds depth cap of " + std::to_string(depth_cap));
    const long double up = static_cast<long double>(q.d - 1) / q.d;
    const long double down = 1.0L / q.d;
    std::vector<long double> out(v.size() + 1, 0.0L);
    if (v[0] != 0.0L) out[1] += v[0]; // root moves to depth 1 surely
    for (int k = 1; k <= kmax; ++k) {
        if (v[static_cast<std::size_t>(k)] == 0.0L) continue;
        out[static_cast<std::size_t>(k + 1)] += v[static_cast<std::size_t>(k)] * up;
        out[static_cast<std::size_t>(k - 1)] += v[static_cast<std::size_t>(k)] * down;
    }
    v = std::move(out);
}

EntropySeries entropy_series_root(const TreeQuotient& q, int n_max) {
    if (n_max < 0)
        throw Error(ErrorCode::InvalidArgument, "n_max must be >= 0");
    EntropySeries series;
    series.points.reserve(static_cast<std::size_t>(n_max) + 1);
    std::vector<long double> nu{1.0L};
    series.points.push_back({0, 0.0, 1.0});
    for (int n = 1; n <= n_max; ++n) {
        step(q, nu);
        double e = 0.0;
        double support = 0.0;
        for (int k = 0; k < static_cast<int>(nu.size()); ++k) {
            const long double p = nu[static_cast<std::size_t>(k)];
            if (p <= 0.0L) continue;
            // class is uniform: N_k vertices each carrying p/N_k
            e -= static_cast<double>(p) * (static_cast<double>(logl(p)) - q.ln_class_count(k));
            support += static_cast<double>(q.class_count(k));
        }
        series.points.push_back({n, e, support});
    }
    return series;
}

std::vector<GreenPoint> green_from_root(const TreeQuotient& q, int t_max) {
    if (t_max < 0)
        throw Error(ErrorCode::InvalidArgument, "t_max must be >= 0");
    std::vector<GreenPoint> out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    std::vector<long double> nu{1.0L};
    double sum = 1.0;
    out.push_back({0, 1.0, 1.0});
    for (int t = 1; t <= t_max; ++t) {
        step(q, nu);
        double p = static_cast<double>(nu[0]);
        sum += p;
        out.push_back({t, p, sum});
    }
    return out;
}

double p_root_to_depth(const TreeQuotient& q, int t, int k) {
    if (t < 0 || k < 0)
        throw Error(ErrorCode::InvalidArgument, "t and depth must be >= 0");
    std::vector<long double> nu{1.0L};
    for (int s = 0; s < t; ++s) step(q, nu);
    if (k >= static_cast<int>(nu.size())) return 0.0;
    return static_cast<double>(nu[static_cast<std::size_t>(k)] / q.class_count(k));
}

double escape_probability_ball(const TreeQuotient& q, int n, int r) {
    if (r < 0)
        throw Error(ErrorCode::InvalidArgument, "ball radius must be >= 0");
    std::vector<long double> nu{1.0L};
    for (int s = 0; s < n; ++s) step(q, nu);
    long double inside = 0.0L;
    for (int k = 0; k <= r && k < static_cast<int>(nu.size()); ++k)
        inside += nu[static_cast<std::size_t>(k)];
    double esc = static_cast<double>(1.0L - inside);
    if (esc < 0.0) esc = 0.0;
    if (esc > 1.0) esc = 1.0;
    return esc;
}

long double pi_mass(const TreeQuotient& q, const RadialSet& s) {
    long double total = 0.0L;
    for (int k : s.classes) total += q.class_pi(k);
    return total;
}

long double vertex_count(const TreeQuotient& q, const RadialSet& s) {
    long double total = 0.0L;
    for (int k : s.classes) total += q.class_count(k);
    return total;
}

std::vector<long double> q_class_masses(const TreeQuotient& q, const RadialSet& s, int t,
                                        int depth_cap) {
    if (t < 0)
        throw Error(ErrorCode::InvalidArgument, "t must be >= 0");
    std::vector<long double> v;
    if (s.empty()) return v; // Q of the empty set is the zero measure
    int kmax = s.classes.back();
    v.assign(static_cast<std::size_t>(kmax) + 1, 0.0L);
    for (int k : s.classes) {
        if (k < 0)
            throw Error(ErrorCode::InvalidArgument, "negative depth class");
        v[static_cast<std::size_t>(k)] = q.class_pi(k); // Q_0(S,.) = pi on S
    }
    for (int step_i = 0; step_i < t; ++step_i) step(q, v, depth_cap);
    return v;
}

RadialLevels superstep_levels(const TreeQuotient& q, const RadialSet& s, int gap,
                              int depth_cap) {
    if (gap < 0)
        throw Error(ErrorCode::InvalidArgument, "gap must be >= 0");
    RadialLevels levels;
    levels.origin_pi = pi_mass(q, s);
    if (s.empty()) return levels;

    std::vector<long double> masses = q_class_masses(q, s, gap, depth_cap);
    std::vector<std::pair<double, int>> ratios; // (ratio, class)
    for (int k = 0; k < static_cast<int>(masses.size()); ++k) {
        const long double m = masses[static_cast<std::size_t>(k)];
        if (m <= 0.0L) continue;
        ratios.emplace_back(static_cast<double>(m / q.class_pi(k)), k);
    }
    std::sort(ratios.begin(), ratios.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });

    long double cum = 0.0L;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        levels.class_order.push_back(ratios[i].second);
        cum += q.class_pi(ratios[i].second);
        // merge ratios equal up to relative propagation rounding; an absolute
        // tolerance would fuse genuinely distinct deep levels whose pi-masses
        // are huge and break the exact martingale
        bool boundary = (i + 1 == ratios.size()) ||
                        (ratios[i].first - ratios[i + 1].first > 1e-12 * ratios[i].first);
        if (boundary) {
            levels.thresholds.push_back(ratios[i].first);
            levels.level_end.push_back(levels.class_order.size());
            levels.cum_pi.push_back(cum);
        }
    }
    levels.s_star_index = RadialLevels::npos;
    for (std::size_t j = 0; j < levels.cum_pi.size(); ++j) {
        if (levels.cum_pi[j] < 4.0L * levels.origin_pi) levels.s_star_index = j;
        else break;
    }
    return levels;
}

RadialSet sample(const RadialLevels& levels, double u) {
    RadialSet out;
    std::size_t chosen = RadialLevels::npos;
    for (std::size_t j = 0; j < levels.thresholds.size(); ++j) {
        if (levels.thresholds[j] >= u) chosen = j;
        else break;
    }
    if (chosen == RadialLevels::npos) return out;
    out.classes.assign(levels.class_order.begin(),
                       levels.class_order.begin() +
                           static_cast<std::ptrdiff_t>(levels.level_end[chosen]));
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

long double expected_functional(const RadialLevels& levels,
                                const std::function<long double(long double)>& f) {
    if (levels.thresholds.empty()) return f(0.0L);
    long double total = 0.0L;
    for (std::size_t j = 0; j < levels.thresholds.size(); ++j) {
        const long double r_j = levels.thresholds[j];
        const long double r_next = (j + 1 < levels.thresholds.size()) ? levels.thresholds[j + 1] : 0.0L;
        total += (r_j - r_next) * f(levels.cum_pi[j]);
    }
    total += (1.0L - static_cast<long double>(levels.thresholds.front())) * f(0.0L);
    return total;
}

} // namespace evset::radial
