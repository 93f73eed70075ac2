#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace evset {

enum class FamilyKind : std::uint8_t {
    IntegerLine,   // Z
    HalfLine,      // Z+ = {1, 2, ...}
    Lattice2D,     // Z^2
    Lattice3D,     // Z^3
    RegularTree,   // infinite d-regular tree, d >= 3
    Cycle,         // C_n, n >= 3
    FiniteExplicit,// finite graph from an edge list
    PendantTower,  // Z+ backbone with a full binary tree hung off each vertex
};

// A vertex of some graph family. The integer payload and path string are
// interpreted by the owning family; the canonical label is a lossless,
// family-tagged printable form. Ordering follows the canonical label so
// that iteration order of emitted sets is stable and human-checkable.
struct VertexId {
    FamilyKind kind = FamilyKind::IntegerLine;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::string path; // tree paths; raw label for FiniteExplicit

    std::string label() const;

    friend bool operator==(const VertexId& x, const VertexId& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b && x.c == y.c && x.path == y.path;
    }
    friend bool operator!=(const VertexId& x, const VertexId& y) { return !(x == y); }
};

// Label order: lexicographic on the canonical label.
bool label_less(const VertexId& x, const VertexId& y);
inline bool operator<(const VertexId& x, const VertexId& y) { return label_less(x, y); }

struct VertexIdHash {
    std::size_t operator()(const VertexId& v) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](std::uint64_t x) {
            h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        };
        mix(static_cast<std::uint64_t>(v.kind));
        mix(static_cast<std::uint64_t>(v.a));
        mix(static_cast<std::uint64_t>(v.b));
        mix(static_cast<std::uint64_t>(v.c));
        mix(std::hash<std::string>{}(v.path));
        return static_cast<std::size_t>(h);
    }
};

} // namespace evset
