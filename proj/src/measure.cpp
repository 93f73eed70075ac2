#include "evset/measure.hpp"

#include <algorithm>
#include <cmath>

namespace evset {

SparseMeasure SparseMeasure::point_mass(const VertexId& v, double w) {
    SparseMeasure m;
    m.add(v, w);
    return m;
}

void SparseMeasure::add(const VertexId& v, double w) {
    if (w == 0.0) return;
    auto [it, inserted] = entries_.try_emplace(v, w);
    if (!inserted) {
        it->second += w;
        if (it->second == 0.0) entries_.erase(it);
    }
    mass_ += w;
}

double SparseMeasure::value(const VertexId& v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? 0.0 : it->second;
}

bool SparseMeasure::is_probability(double tol) const {
    return std::abs(mass_ - 1.0) <= tol;
}

std::vector<std::pair<VertexId, double>> SparseMeasure::sorted_entries() const {
    std::vector<std::pair<VertexId, double>> out(entries_.begin(), entries_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return label_less(x.first, y.first); });
    return out;
}

} // namespace evset
