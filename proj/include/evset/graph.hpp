#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "evset/vertex.hpp"

namespace evset {

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

// A bounded-degree graph exposed through local adjacency queries only.
// Infinite families (line, lattices, regular tree, pendant tower) are
// generated lazily; there is no global vertex enumeration. Immutable
// after construction.
class GraphFamily {
public:
    static GraphFamily integer_line();
    static GraphFamily half_line();
    static GraphFamily lattice2d();
    static GraphFamily lattice3d();
    static GraphFamily regular_tree(int degree);
    static GraphFamily cycle(int n);
    static GraphFamily pendant_tower(int h_max, int n_max);
    static GraphFamily finite_from_edge_list(std::istream& in);
    static GraphFamily finite_from_edges(const std::vector<std::pair<std::string, std::string>>& edges);

    // Config strings: "z", "zplus", "z2", "z3", "tree3" / "tree,d=4",
    // "cycle,n=7", "pendant_tower,hmax=20,nmax=64", "finite:<edge list file>".
    static GraphFamily from_spec(const std::string& spec);

    FamilyKind kind() const { return kind_; }
    int max_degree() const;
    std::string description() const;

    // Canonical start vertex of the family (z:0, zp:1, origin, root, ...).
    VertexId origin() const;

    bool contains(const VertexId& v) const noexcept;
    void require_vertex(const VertexId& v) const;

    // All adjacent vertices, ordered by canonical label.
    std::vector<VertexId> neighbors(const VertexId& v) const;
    void neighbors_into(const VertexId& v, std::vector<VertexId>& out) const;

    // Fixed family-specific generation order, no label sort. Same vertices
    // as neighbors(); used by hot loops where only determinism matters.
    void adjacent_into(const VertexId& v, std::vector<VertexId>& out) const;

    int degree(const VertexId& v) const;

    // Parse a canonical label, validating it against this family.
    VertexId parse_vertex(const std::string& label) const;

    // Closed ball via breadth-first expansion, sorted by canonical label.
    std::vector<VertexId> ball(const VertexId& center, int radius,
                               std::size_t max_vertices = kDefaultBallCap) const;

    // RegularTree only.
    int tree_degree() const { return tree_d_; }

    // Cycle only.
    int cycle_size() const { return cycle_n_; }

    // PendantTower only.
    const std::vector<int>& tower_heights() const { return heights_; }
    int backbone_length() const { return nmax_; }
    int height_cap() const { return hmax_; }
    std::uint64_t pendant_vertex_count() const;

    // FiniteExplicit only.
    std::size_t finite_vertex_count() const { return fin_labels_.size(); }
    const std::vector<std::string>& finite_labels() const { return fin_labels_; }

private:
    GraphFamily() = default;

    FamilyKind kind_ = FamilyKind::IntegerLine;
    int tree_d_ = 0;
    int cycle_n_ = 0;
    int hmax_ = 0;
    int nmax_ = 0;
    std::vector<int> heights_; // effective tree heights h_n, n = 1..nmax_

    std::vector<std::string> fin_labels_;            // sorted
    std::unordered_map<std::string, int> fin_index_;
    std::vector<std::vector<int>> fin_adj_;          // sorted by neighbor label

    void check_kind(FamilyKind k, const char* what) const;
};

// Effective heights min(2^^n, h_max) of the pendant towers; 2^^n is the
// power tower 2, 2^2, 2^2^2, ...
std::vector<int> tower_schedule(int h_max, int n_max);

} // namespace evset
