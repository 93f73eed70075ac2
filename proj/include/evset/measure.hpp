#pragma once

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evset/vertex.hpp"

namespace evset {

// Finite nonnegative measure on vertices: backs both walk distributions
// p^t(x0,.) and the degree-weighted Q_t(S,.) masses. Exact zeros are never
// stored; the total mass is maintained incrementally as entries are built.
class SparseMeasure {
public:
    using Map = std::unordered_map<VertexId, double, VertexIdHash>;

    SparseMeasure() = default;

    static SparseMeasure point_mass(const VertexId& v, double w = 1.0);

    void add(const VertexId& v, double w);
    double value(const VertexId& v) const;

    double total_mass() const { return mass_; }
    std::size_t support_size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const Map& entries() const { return entries_; }

    // mass 1 within tol
    bool is_probability(double tol = 1e-9) const;

    // Entries ordered by canonical label (for emission and stable replay).
    std::vector<std::pair<VertexId, double>> sorted_entries() const;

    void clear() { entries_.clear(); mass_ = 0.0; }
    void reserve(std::size_t n) { entries_.reserve(n); }

private:
    Map entries_;
    double mass_ = 0.0;
};

} // namespace evset
