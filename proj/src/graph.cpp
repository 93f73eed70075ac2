#include "evset/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "evset/error.hpp"

namespace evset {

namespace {

std::string i64str(std::int64_t v) { return std::to_string(v); }

bool parse_i64(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto first = s.data();
    auto last = s.data() + s.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

} // namespace

std::string VertexId::label() const {
    switch (kind) {
        case FamilyKind::IntegerLine: return "z:" + i64str(a);
        case FamilyKind::HalfLine:    return "zp:" + i64str(a);
        case FamilyKind::Lattice2D:   return "l2:" + i64str(a) + "," + i64str(b);
        case FamilyKind::Lattice3D:   return "l3:" + i64str(a) + "," + i64str(b) + "," + i64str(c);
        case FamilyKind::RegularTree: return "t" + i64str(a) + ":" + path;
        case FamilyKind::Cycle:       return "c:" + i64str(a);
        case FamilyKind::FiniteExplicit: return path;
        case FamilyKind::PendantTower:
            return b == 0 ? "pt:" + i64str(a) : "pt:" + i64str(a) + "/" + path;
    }
    return "?";
}

bool label_less(const VertexId& x, const VertexId& y) {
    return x.label() < y.label();
}

// ---------------------------------------------------------------------------
// construction

GraphFamily GraphFamily::integer_line() {
    GraphFamily g;
    g.kind_ = FamilyKind::IntegerLine;
    return g;
}

GraphFamily GraphFamily::half_line() {
    GraphFamily g;
    g.kind_ = FamilyKind::HalfLine;
    return g;
}

GraphFamily GraphFamily::lattice2d() {
    GraphFamily g;
    g.kind_ = FamilyKind::Lattice2D;
    return g;
}

GraphFamily GraphFamily::lattice3d() {
    GraphFamily g;
    g.kind_ = FamilyKind::Lattice3D;
    return g;
}

GraphFamily GraphFamily::regular_tree(int degree) {
    if (degree < 3)
        throw Error(ErrorCode::InvalidArgument, "regular tree needs degree >= 3, got " + std::to_string(degree));
    GraphFamily g;
    g.kind_ = FamilyKind::RegularTree;
    g.tree_d_ = degree;
    return g;
}

GraphFamily GraphFamily::cycle(int n) {
    if (n < 3)
        throw Error(ErrorCode::InvalidArgument, "cycle needs n >= 3, got " + std::to_string(n));
    GraphFamily g;
    g.kind_ = FamilyKind::Cycle;
    g.cycle_n_ = n;
    return g;
}

std::vector<int> tower_schedule(int h_max, int n_max) {
    if (h_max < 1 || n_max < 1)
        throw Error(ErrorCode::InvalidArgument, "tower schedule needs h_max >= 1 and n_max >= 1");
    std::vector<int> hs;
    hs.reserve(static_cast<std::size_t>(n_max));
    // tower(1)=2, tower(n)=2^tower(n-1); saturate once past any representable cap
    long double t = 2.0L;
    bool saturated = false;
    for (int n = 1; n <= n_max; ++n) {
        int h = saturated ? h_max : static_cast<int>(std::min<long double>(t, h_max));
        hs.push_back(h);
        if (!saturated) {
            if (t >= 64.0L) {
                saturated = true; // 2^t would overflow anything reasonable
            } else {
                t = std::pow(2.0L, t);
            }
        }
    }
    return hs;
}

GraphFamily GraphFamily::pendant_tower(int h_max, int n_max) {
    GraphFamily g;
    g.kind_ = FamilyKind::PendantTower;
    g.hmax_ = h_max;
    g.nmax_ = n_max;
    g.heights_ = tower_schedule(h_max, n_max);
    return g;
}

GraphFamily GraphFamily::finite_from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
    GraphFamily g;
    g.kind_ = FamilyKind::FiniteExplicit;
    for (const auto& [u, v] : edges) {
        if (u == v)
            throw Error(ErrorCode::BadInput, "self-loop on '" + u + "' not allowed");
        if (g.fin_index_.find(u) == g.fin_index_.end()) {
            g.fin_index_.emplace(u, 0);
            g.fin_labels_.push_back(u);
        }
        if (g.fin_index_.find(v) == g.fin_index_.end()) {
            g.fin_index_.emplace(v, 0);
            g.fin_labels_.push_back(v);
        }
    }
    std::sort(g.fin_labels_.begin(), g.fin_labels_.end());
    for (std::size_t i = 0; i < g.fin_labels_.size(); ++i)
        g.fin_index_[g.fin_labels_[i]] = static_cast<int>(i);
    g.fin_adj_.assign(g.fin_labels_.size(), {});
    for (const auto& [u, v] : edges) {
        int iu = g.fin_index_.at(u);
        int iv = g.fin_index_.at(v);
        g.fin_adj_[static_cast<std::size_t>(iu)].push_back(iv);
        g.fin_adj_[static_cast<std::size_t>(iv)].push_back(iu);
    }
    for (auto& nb : g.fin_adj_) {
        std::sort(nb.begin(), nb.end()); // label order == index order (labels sorted)
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

GraphFamily GraphFamily::finite_from_edge_list(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string u, v, extra;
        if (!(ls >> u >> v))
            throw Error(ErrorCode::BadInput, "edge list line needs two labels: '" + line + "'");
        if (ls >> extra)
            throw Error(ErrorCode::BadInput, "edge list line has trailing tokens: '" + line + "'");
        edges.emplace_back(std::move(u), std::move(v));
    }
    if (edges.empty())
        throw Error(ErrorCode::BadInput, "edge list is empty");
    return finite_from_edges(edges);
}

// ---------------------------------------------------------------------------
// basic queries

int GraphFamily::max_degree() const {
    switch (kind_) {
        case FamilyKind::IntegerLine: return 2;
        case FamilyKind::HalfLine:    return 2;
        case FamilyKind::Lattice2D:   return 4;
        case FamilyKind::Lattice3D:   return 6;
        case FamilyKind::RegularTree: return tree_d_;
        case FamilyKind::Cycle:       return 2;
        case FamilyKind::PendantTower:return 3;
        case FamilyKind::FiniteExplicit: {
            std::size_t d = 0;
            for (const auto& nb : fin_adj_) d = std::max(d, nb.size());
            return static_cast<int>(d);
        }
    }
    return 0;
}

std::string GraphFamily::description() const {
    switch (kind_) {
        case FamilyKind::IntegerLine: return "z";
        case FamilyKind::HalfLine:    return "zplus";
        case FamilyKind::Lattice2D:   return "z2";
        case FamilyKind::Lattice3D:   return "z3";
        case FamilyKind::RegularTree: return "tree" + std::to_string(tree_d_);
        case FamilyKind::Cycle:       return "cycle,n=" + std::to_string(cycle_n_);
        case FamilyKind::PendantTower:
            return "pendant_tower,hmax=" + std::to_string(hmax_) + ",nmax=" + std::to_string(nmax_);
        case FamilyKind::FiniteExplicit:
            return "finite,vertices=" + std::to_string(fin_labels_.size());
    }
    return "?";
}

VertexId GraphFamily::origin() const {
    VertexId v;
    v.kind = kind_;
    switch (kind_) {
        case FamilyKind::IntegerLine: v.a = 0; break;
        case FamilyKind::HalfLine:    v.a = 1; break;
        case FamilyKind::Lattice2D:   break;
        case FamilyKind::Lattice3D:   break;
        case FamilyKind::RegularTree: v.a = tree_d_; break;
        case FamilyKind::Cycle:       v.a = 0; break;
        case FamilyKind::PendantTower:v.a = 1; v.b = 0; break;
        case FamilyKind::FiniteExplicit: v.path = fin_labels_.front(); break;
    }
    return v;
}

bool GraphFamily::contains(const VertexId& v) const noexcept {
    if (v.kind != kind_) return false;
    switch (kind_) {
        case FamilyKind::IntegerLine: return v.b == 0 && v.c == 0 && v.path.empty();
        case FamilyKind::HalfLine:    return v.a >= 1 && v.b == 0 && v.c == 0 && v.path.empty();
        case FamilyKind::Lattice2D:   return v.c == 0 && v.path.empty();
        case FamilyKind::Lattice3D:   return v.path.empty();
        case FamilyKind::Cycle:       return v.a >= 0 && v.a < cycle_n_ && v.b == 0 && v.c == 0 && v.path.empty();
        case FamilyKind::RegularTree: {
            if (v.a != tree_d_ || v.b != 0 || v.c != 0) return false;
            for (std::size_t i = 0; i < v.path.size(); ++i) {
                int fan = (i == 0) ? tree_d_ : tree_d_ - 1;
                char ch = v.path[i];
                if (ch < '0' || ch >= static_cast<char>('0' + fan)) return false;
            }
            return true;
        }
        case FamilyKind::PendantTower: {
            if (v.a < 1 || v.a > nmax_ || v.c != 0) return false;
            if (v.b == 0) return v.path.empty();
            if (v.b != 1) return false;
            int h = heights_[static_cast<std::size_t>(v.a - 1)];
            if (v.path.size() > static_cast<std::size_t>(h)) return false;
            for (char ch : v.path)
                if (ch != '0' && ch != '1') return false;
            return true;
        }
        case FamilyKind::FiniteExplicit:
            return v.a >= 0 && v.a < static_cast<std::int64_t>(fin_labels_.size()) &&
                   v.path == fin_labels_[static_cast<std::size_t>(v.a)];
    }
    return false;
}

void GraphFamily::require_vertex(const VertexId& v) const {
    if (!contains(v))
        throw Error(ErrorCode::InvalidVertex,
                    "'" + v.label() + "' is not a vertex of " + description());
}

void GraphFamily::adjacent_into(const VertexId& v, std::vector<VertexId>& out) const {
    require_vertex(v);
    out.clear();
    switch (kind_) {
        case FamilyKind::IntegerLine: {
            VertexId u = v;
            u.a = v.a - 1; out.push_back(u);
            u.a = v.a + 1; out.push_back(u);
            break;
        }
        case FamilyKind::HalfLine: {
            VertexId u = v;
            if (v.a > 1) { u.a = v.a - 1; out.push_back(u); }
            u.a = v.a + 1; out.push_back(u);
            break;
        }
        case FamilyKind::Lattice2D: {
            VertexId u = v;
            u.a = v.a - 1; out.push_back(u); u.a = v.a + 1; out.push_back(u); u.a = v.a;
            u.b = v.b - 1; out.push_back(u); u.b = v.b + 1; out.push_back(u);
            break;
        }
        case FamilyKind::Lattice3D: {
            VertexId u = v;
            u.a = v.a - 1; out.push_back(u); u.a = v.a + 1; out.push_back(u); u.a = v.a;
            u.b = v.b - 1; out.push_back(u); u.b = v.b + 1; out.push_back(u); u.b = v.b;
            u.c = v.c - 1; out.push_back(u); u.c = v.c + 1; out.push_back(u);
            break;
        }
        case FamilyKind::Cycle: {
            VertexId u = v;
            u.a = (v.a + cycle_n_ - 1) % cycle_n_; out.push_back(u);
            u.a = (v.a + 1) % cycle_n_; out.push_back(u);
            break;
        }
        case FamilyKind::RegularTree: {
            VertexId u = v;
            if (!v.path.empty()) {
                u.path = v.path.substr(0, v.path.size() - 1);
                out.push_back(u);
            }
            int fan = v.path.empty() ? tree_d_ : tree_d_ - 1;
            for (int i = 0; i < fan; ++i) {
                u.path = v.path + static_cast<char>('0' + i);
                out.push_back(u);
            }
            break;
        }
        case FamilyKind::PendantTower: {
            VertexId u = v;
            if (v.b == 0) {
                if (v.a > 1) { u.a = v.a - 1; out.push_back(u); }
                if (v.a < nmax_) { u.a = v.a + 1; out.push_back(u); u.a = v.a; }
                u.a = v.a; u.b = 1; u.path.clear();
                out.push_back(u); // root of T_a
            } else {
                int h = heights_[static_cast<std::size_t>(v.a - 1)];
                if (v.path.empty()) {
                    u.b = 0; u.path.clear();
                    out.push_back(u); // attach vertex on the backbone
                    u.b = 1;
                } else {
                    u.path = v.path.substr(0, v.path.size() - 1);
                    out.push_back(u);
                }
                if (v.path.size() < static_cast<std::size_t>(h)) {
                    u.path = v.path + '0'; out.push_back(u);
                    u.path = v.path + '1'; out.push_back(u);
                }
            }
            break;
        }
        case FamilyKind::FiniteExplicit: {
            for (int j : fin_adj_[static_cast<std::size_t>(v.a)]) {
                VertexId u;
                u.kind = kind_;
                u.a = j;
                u.path = fin_labels_[static_cast<std::size_t>(j)];
                out.push_back(u);
            }
            break;
        }
    }
}

void GraphFamily::neighbors_into(const VertexId& v, std::vector<VertexId>& out) const {
    adjacent_into(v, out);
    std::sort(out.begin(), out.end(), label_less);
}

std::vector<VertexId> GraphFamily::neighbors(const VertexId& v) const {
    std::vector<VertexId> out;
    neighbors_into(v, out);
    return out;
}

int GraphFamily::degree(const VertexId& v) const {
    require_vertex(v);
    switch (kind_) {
        case FamilyKind::IntegerLine: return 2;
        case FamilyKind::HalfLine:    return v.a == 1 ? 1 : 2;
        case FamilyKind::Lattice2D:   return 4;
        case FamilyKind::Lattice3D:   return 6;
        case FamilyKind::Cycle:       return 2;
        case FamilyKind::RegularTree: return tree_d_;
        case FamilyKind::PendantTower: {
            if (v.b == 0) {
                int d = 1; // root of T_a
                if (v.a > 1) ++d;
                if (v.a < nmax_) ++d;
                return d;
            }
            int h = heights_[static_cast<std::size_t>(v.a - 1)];
            bool leaf = v.path.size() == static_cast<std::size_t>(h);
            return leaf ? 1 : 3;
        }
        case FamilyKind::FiniteExplicit:
            return static_cast<int>(fin_adj_[static_cast<std::size_t>(v.a)].size());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// label parsing

VertexId GraphFamily::parse_vertex(const std::string& label) const {
    auto bad = [&]() -> Error {
        return Error(ErrorCode::InvalidVertex,
                     "cannot parse '" + label + "' as a vertex of " + description());
    };
    VertexId v;
    v.kind = kind_;
    switch (kind_) {
        case FamilyKind::IntegerLine: {
            if (label.rfind("z:", 0) != 0 || !parse_i64(std::string_view(label).substr(2), v.a)) throw bad();
            break;
        }
        case FamilyKind::HalfLine: {
            if (label.rfind("zp:", 0) != 0 || !parse_i64(std::string_view(label).substr(3), v.a)) throw bad();
            break;
        }
        case FamilyKind::Lattice2D: {
            if (label.rfind("l2:", 0) != 0) throw bad();
            auto body = std::string_view(label).substr(3);
            auto comma = body.find(',');
            if (comma == std::string_view::npos) throw bad();
            if (!parse_i64(body.substr(0, comma), v.a) || !parse_i64(body.substr(comma + 1), v.b)) throw bad();
            break;
        }
        case FamilyKind::Lattice3D: {
            if (label.rfind("l3:", 0) != 0) throw bad();
            auto body = std::string_view(label).substr(3);
            auto c1 = body.find(',');
            if (c1 == std::string_view::npos) throw bad();
            auto c2 = body.find(',', c1 + 1);
            if (c2 == std::string_view::npos) throw bad();
            if (!parse_i64(body.substr(0, c1), v.a) ||
                !parse_i64(body.substr(c1 + 1, c2 - c1 - 1), v.b) ||
                !parse_i64(body.substr(c2 + 1), v.c)) throw bad();
            break;
        }
        case FamilyKind::Cycle: {
            if (label.rfind("c:", 0) != 0 || !parse_i64(std::string_view(label).substr(2), v.a)) throw bad();
            break;
        }
        case FamilyKind::RegularTree: {
            auto colon = label.find(':');
            if (colon == std::string::npos || label.empty() || label[0] != 't') throw bad();
            std::int64_t d = 0;
            if (!parse_i64(std::string_view(label).substr(1, colon - 1), d) || d != tree_d_) throw bad();
            v.a = d;
            v.path = label.substr(colon + 1);
            break;
        }
        case FamilyKind::PendantTower: {
            if (label.rfind("pt:", 0) != 0) throw bad();
            auto body = label.substr(3);
            auto slash = body.find('/');
            if (slash == std::string::npos) {
                if (!parse_i64(body, v.a)) throw bad();
                v.b = 0;
            } else {
                if (!parse_i64(std::string_view(body).substr(0, slash), v.a)) throw bad();
                v.b = 1;
                v.path = body.substr(slash + 1);
            }
            break;
        }
        case FamilyKind::FiniteExplicit: {
            auto it = fin_index_.find(label);
            if (it == fin_index_.end()) throw bad();
            v.a = it->second;
            v.path = label;
            break;
        }
    }
    require_vertex(v);
    return v;
}

// ---------------------------------------------------------------------------
// balls

std::vector<VertexId> GraphFamily::ball(const VertexId& center, int radius,
                                        std::size_t max_vertices) const {
    if (radius < 0)
        throw Error(ErrorCode::InvalidArgument, "ball radius must be >= 0");
    require_vertex(center);

    std::unordered_map<VertexId, int, VertexIdHash> seen;
    seen.emplace(center, 0);
    std::vector<VertexId> frontier{center};
    std::vector<VertexId> next;
    std::vector<VertexId> nb;
    for (int r = 1; r <= radius; ++r) {
        next.clear();
        for (const auto& v : frontier) {
            adjacent_into(v, nb);
            for (auto& u : nb) {
                if (seen.emplace(u, r).second) {
                    next.push_back(u);
                    if (seen.size() > max_vertices)
                        throw Error(ErrorCode::ResourceCapExceeded,
                                    "ball exceeds cap of " + std::to_string(max_vertices) + " vertices");
                }
            }
        }
        frontier.swap(next);
        if (frontier.empty()) break;
    }
    std::vector<VertexId> out;
    out.reserve(seen.size());
    for (const auto& [v, r] : seen) out.push_back(v);
    std::sort(out.begin(), out.end(), label_less);
    return out;
}

std::uint64_t GraphFamily::pendant_vertex_count() const {
    check_kind(FamilyKind::PendantTower, "pendant_vertex_count");
    std::uint64_t total = static_cast<std::uint64_t>(nmax_);
    for (int h : heights_)
        total += (std::uint64_t{1} << (h + 1)) - 1;
    return total;
}

void GraphFamily::check_kind(FamilyKind k, const char* what) const {
    if (kind_ != k)
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " is not defined for " + description());
}

// ---------------------------------------------------------------------------
// spec strings

GraphFamily GraphFamily::from_spec(const std::string& spec) {
    std::string s = spec;
    if (s.rfind("graph=", 0) == 0) s = s.substr(6);

    if (s.rfind("finite:", 0) == 0) {
        std::string file = s.substr(7);
        std::ifstream in(file);
        if (!in)
            throw Error(ErrorCode::BadInput, "cannot open edge list file '" + file + "'");
        return finite_from_edge_list(in);
    }

    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) parts.push_back(part);
    if (parts.empty())
        throw Error(ErrorCode::BadInput, "empty graph spec");

    std::unordered_map<std::string, std::int64_t> kv;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        std::int64_t val = 0;
        if (eq == std::string::npos || !parse_i64(std::string_view(parts[i]).substr(eq + 1), val))
            throw Error(ErrorCode::BadInput, "bad graph parameter '" + parts[i] + "'");
        kv[parts[i].substr(0, eq)] = val;
    }
    auto get = [&](const std::string& key, std::int64_t dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    };

    const std::string& name = parts[0];
    if (name == "z") return integer_line();
    if (name == "zplus" || name == "zp") return half_line();
    if (name == "z2" || name == "lattice2d") return lattice2d();
    if (name == "z3" || name == "lattice3d") return lattice3d();
    if (name == "cycle") return cycle(static_cast<int>(get("n", 0)));
    if (name == "tree") return regular_tree(static_cast<int>(get("d", 3)));
    if (name.rfind("tree", 0) == 0 && name.size() > 4) {
        std::int64_t d = 0;
        if (parse_i64(std::string_view(name).substr(4), d)) return regular_tree(static_cast<int>(d));
    }
    if (name == "pendant_tower")
        return pendant_tower(static_cast<int>(get("hmax", 20)), static_cast<int>(get("nmax", 64)));

    throw Error(ErrorCode::BadInput, "unknown graph family '" + name + "'");
}

} // namespace evset
