#pragma once

// Graph core: immutable-ish simple undirected graphs on at most 64 vertices,
// stored as one neighbour bitmask per vertex.  Everything downstream (the
// game engine, strategies, the verification harness) works on this type.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace damage {

inline constexpr int kMaxVertices = 64;  // damaged set must fit one word

using Mask = std::uint64_t;

constexpr Mask vbit(int v) { return Mask{1} << v; }

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Graph {
public:
    Graph() = default;

    explicit Graph(int n, std::string name = {}) : n_(n), adj_(static_cast<std::size_t>(n), 0), name_(std::move(name)) {
        if (n < 1 || n > kMaxVertices)
            throw GraphError("vertex count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxVertices) + "]");
    }

    int size() const { return n_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v)
            throw GraphError("loops are not allowed (vertex " + std::to_string(u) + ")");
        adj_[static_cast<std::size_t>(u)] |= vbit(v);
        adj_[static_cast<std::size_t>(v)] |= vbit(u);
    }

    bool adjacent(int u, int v) const { return (adj_[static_cast<std::size_t>(u)] & vbit(v)) != 0; }

    // Open neighbourhood N(v) as a bitmask.
    Mask neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }

    // Closed neighbourhood N[v].
    Mask closed(int v) const { return adj_[static_cast<std::size_t>(v)] | vbit(v); }

    int degree(int v) const { return std::popcount(neighbours(v)); }

    int edge_count() const {
        int twice = 0;
        for (int v = 0; v < n_; ++v) twice += degree(v);
        return twice / 2;
    }

    Mask all_vertices() const { return n_ == kMaxVertices ? ~Mask{0} : (vbit(n_) - 1); }

    bool is_connected() const {
        Mask seen = vbit(0);
        Mask frontier = seen;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f;) {
                int v = std::countr_zero(f);
                f &= f - 1;
                next |= neighbours(v);
            }
            frontier = next & ~seen;
            seen |= frontier;
        }
        return seen == all_vertices();
    }

    void require_connected(const char* who) const {
        if (!is_connected())
            throw GraphError(std::string(who) + ": graph is not connected");
    }

    bool operator==(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw GraphError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n_) + ")");
    }

    int n_ = 0;
    std::vector<Mask> adj_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// Named families.  Labelings are pinned: cycles are u_0 ~ u_1 ~ ... ~ u_{m-1}
// ~ u_0 so strategy code can talk about increasing/decreasing the index.
// ---------------------------------------------------------------------------

inline Graph path_graph(int n) {
    Graph g(n, "path:" + std::to_string(n));
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw GraphError("cycle needs at least 3 vertices");
    Graph g(n, "cycle:" + std::to_string(n));
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n, "complete:" + std::to_string(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

// star:k is K_{1,k}: hub at index 0, k leaves.
inline Graph star_graph(int leaves) {
    Graph g(leaves + 1, "star:" + std::to_string(leaves));
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

inline Graph complete_bipartite_graph(int m, int n) {
    Graph g(m + n, "complete_bipartite:" + std::to_string(m) + "," + std::to_string(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) g.add_edge(i, m + j);
    return g;
}

// parents[0] is ignored (root); parents[i] < i for i >= 1.
inline Graph tree_from_parents(const std::vector<int>& parents) {
    const int n = static_cast<int>(parents.size());
    Graph g(n, "tree");
    for (int i = 1; i < n; ++i) {
        if (parents[static_cast<std::size_t>(i)] < 0 || parents[static_cast<std::size_t>(i)] >= i)
            throw GraphError("parent list entry " + std::to_string(i) + " must be in [0, i)");
        g.add_edge(i, parents[static_cast<std::size_t>(i)]);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Cartesian product.  Flat index is row-major in the second factor:
// (a, b) -> a * |V(h)| + b.
// ---------------------------------------------------------------------------

struct ProductVertex {
    int g_coord;
    int h_coord;
    int flat;
};

inline int product_flat(int g_coord, int h_coord, int h_size) { return g_coord * h_size + h_coord; }

inline ProductVertex product_coords(int flat, int h_size) {
    return ProductVertex{flat / h_size, flat % h_size, flat};
}

inline Graph cartesian_product(const Graph& g, const Graph& h) {
    if (g.size() * h.size() > kMaxVertices)
        throw GraphError("product has " + std::to_string(g.size() * h.size()) + " vertices, above the " +
                         std::to_string(kMaxVertices) + "-vertex engine cap");
    Graph p(g.size() * h.size(), "product:" + g.name() + "x" + h.name());
    for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < h.size(); ++b) {
            for (int b2 = b + 1; b2 < h.size(); ++b2)
                if (h.adjacent(b, b2)) p.add_edge(product_flat(a, b, h.size()), product_flat(a, b2, h.size()));
            for (int a2 = a + 1; a2 < g.size(); ++a2)
                if (g.adjacent(a, a2)) p.add_edge(product_flat(a, b, h.size()), product_flat(a2, b, h.size()));
        }
    return p;
}

// ---------------------------------------------------------------------------
// Metrics.
// ---------------------------------------------------------------------------

class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 255) {}
    int n() const { return n_; }
    int operator()(int u, int v) const { return d_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)]; }
    void set(int u, int v, int dist) { d_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(dist); }

private:
    int n_ = 0;
    std::vector<std::uint8_t> d_;
};

inline DistanceMatrix all_pairs_distance(const Graph& g) {
    DistanceMatrix dm(g.size());
    for (int s = 0; s < g.size(); ++s) {
        Mask seen = vbit(s);
        Mask frontier = seen;
        int dist = 0;
        dm.set(s, s, 0);
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f;) {
                int v = std::countr_zero(f);
                f &= f - 1;
                next |= g.neighbours(v);
            }
            frontier = next & ~seen;
            seen |= frontier;
            ++dist;
            for (Mask f = frontier; f;) {
                int v = std::countr_zero(f);
                f &= f - 1;
                dm.set(s, v, dist);
            }
        }
        if (seen != g.all_vertices()) {
            int missing = std::countr_zero(g.all_vertices() & ~seen);
            throw GraphError("graph is disconnected: no path from " + std::to_string(s) + " to " + std::to_string(missing));
        }
    }
    return dm;
}

struct RadiusInfo {
    int radius = 0;
    std::vector<int> eccentricity;
    Mask centers = 0;
};

inline RadiusInfo radius_ecc_centers(const Graph& g) {
    const DistanceMatrix dm = all_pairs_distance(g);
    RadiusInfo info;
    info.eccentricity.resize(static_cast<std::size_t>(g.size()));
    info.radius = kMaxVertices + 1;
    for (int v = 0; v < g.size(); ++v) {
        int ecc = 0;
        for (int u = 0; u < g.size(); ++u) ecc = std::max(ecc, dm(v, u));
        info.eccentricity[static_cast<std::size_t>(v)] = ecc;
        info.radius = std::min(info.radius, ecc);
    }
    for (int v = 0; v < g.size(); ++v)
        if (info.eccentricity[static_cast<std::size_t>(v)] == info.radius) info.centers |= vbit(v);
    return info;
}

inline int radius(const Graph& g) { return radius_ecc_centers(g).radius; }

// ---------------------------------------------------------------------------
// Domination predicates.
// ---------------------------------------------------------------------------

inline bool is_universal(const Graph& g, int v) { return g.degree(v) == g.size() - 1; }

inline bool has_universal_vertex(const Graph& g) {
    for (int v = 0; v < g.size(); ++v)
        if (is_universal(g, v)) return true;
    return false;
}

inline bool is_tree(const Graph& g) { return g.is_connected() && g.edge_count() == g.size() - 1; }

// v dominates u: N(u) subseteq N[v].
inline bool dominates(const Graph& g, int v, int u) { return (g.neighbours(u) & ~g.closed(v)) == 0; }

// u is o-dominated by v: N(u) subseteq N(v).
inline bool o_dominates(const Graph& g, int v, int u) { return (g.neighbours(u) & ~g.neighbours(v)) == 0; }

// u is c-dominated by v: N[u] subseteq N[v].
inline bool c_dominates(const Graph& g, int v, int u) { return (g.closed(u) & ~g.closed(v)) == 0; }

struct CornerWitness {
    int corner;
    int dominator;
};

inline std::optional<CornerWitness> has_c_dominated_vertex(const Graph& g) {
    for (int u = 0; u < g.size(); ++u)
        for (int v = 0; v < g.size(); ++v)
            if (u != v && c_dominates(g, v, u)) return CornerWitness{u, v};
    return std::nullopt;
}

struct DismantleResult {
    bool is_copwin = false;
    std::vector<int> elimination_order;
};

// Repeatedly delete a c-dominated vertex of the surviving induced subgraph;
// copwin iff the reduction reaches a single vertex.
inline DismantleResult corner_dismantle(const Graph& g) {
    g.require_connected("corner_dismantle");
    Mask alive = g.all_vertices();
    DismantleResult result;
    auto closed_alive = [&](int v) { return (g.neighbours(v) | vbit(v)) & alive; };
    while (std::popcount(alive) > 1) {
        int corner = -1;
        for (Mask um = alive; um && corner < 0;) {
            int u = std::countr_zero(um);
            um &= um - 1;
            for (Mask vm = alive & ~vbit(u); vm;) {
                int v = std::countr_zero(vm);
                vm &= vm - 1;
                if ((closed_alive(u) & ~closed_alive(v)) == 0) {
                    corner = u;
                    break;
                }
            }
        }
        if (corner < 0) break;
        alive &= ~vbit(corner);
        result.elimination_order.push_back(corner);
    }
    result.is_copwin = std::popcount(alive) == 1;
    return result;
}

// ---------------------------------------------------------------------------
// graph6 (the published 6-bit packed format, 63-offset).
// ---------------------------------------------------------------------------

inline std::string encode_graph6(const Graph& g) {
    std::string out;
    const int n = g.size();
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0;
    int nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

inline Graph parse_graph6(std::string_view text) {
    if (text.size() >= 10 && text.substr(0, 10) == ">>graph6<<") text.remove_prefix(10);
    if (text.empty()) throw GraphError("graph6: empty input");
    for (char ch : text)
        if (static_cast<unsigned char>(ch) < 63 || static_cast<unsigned char>(ch) > 126)
            throw GraphError("graph6: byte outside [63, 126]");
    std::size_t pos = 0;
    long n = 0;
    if (text[0] == 126) {
        if (text.size() >= 4 && text[1] != 126) {
            n = ((text[1] - 63L) << 12) | ((text[2] - 63L) << 6) | (text[3] - 63L);
            pos = 4;
        } else {
            throw GraphError("graph6: unsupported or truncated size prefix");
        }
    } else {
        n = text[0] - 63;
        pos = 1;
    }
    if (n < 1 || n > kMaxVertices)
        throw GraphError("graph6: vertex count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxVertices) + "]");
    const long nbits = n * (n - 1) / 2;
    const std::size_t need = static_cast<std::size_t>((nbits + 5) / 6);
    if (text.size() - pos != need)
        throw GraphError("graph6: body length " + std::to_string(text.size() - pos) + ", expected " + std::to_string(need));
    Graph g(static_cast<int>(n));
    long k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            const int byte = text[pos + static_cast<std::size_t>(k / 6)] - 63;
            if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
        }
    return g;
}

// One graph per line; a ">>graph6<<" header line (or prefix) is tolerated.
inline std::vector<Graph> parse_graph6_file(std::istream& in) {
    std::vector<Graph> graphs;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line == ">>graph6<<") continue;
        graphs.push_back(parse_graph6(line));
    }
    return graphs;
}

// ---------------------------------------------------------------------------
// Family descriptor mini-language:
//   path:n | cycle:n | complete:n | star:n | complete_bipartite:m,n
//   | tree:<comma parent list> | g6:<string> | file:<path>[:<line>]
//   | product:<spec>x<spec>
// ---------------------------------------------------------------------------

namespace detail {

inline int parse_int(std::string_view s, const char* what) {
    if (s.empty()) throw GraphError(std::string("family spec: missing ") + what);
    int value = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw GraphError(std::string("family spec: bad ") + what + " '" + std::string(s) + "'");
        value = value * 10 + (ch - '0');
        if (value > 100000) throw GraphError(std::string("family spec: ") + what + " too large");
    }
    return value;
}

}  // namespace detail

Graph build_family(std::string_view spec);

namespace detail {

inline Graph build_product_spec(std::string_view body) {
    // Split at each 'x' and take the first split where both halves parse.
    for (std::size_t i = 1; i + 1 < body.size() + 1; ++i) {
        if (i >= body.size()) break;
        if (body[i] != 'x') continue;
        try {
            Graph lhs = build_family(body.substr(0, i));
            Graph rhs = build_family(body.substr(i + 1));
            return cartesian_product(lhs, rhs);
        } catch (const GraphError&) {
            continue;
        }
    }
    throw GraphError("family spec: cannot split product '" + std::string(body) + "'");
}

}  // namespace detail

inline Graph build_family(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos) throw GraphError("family spec: expected '<family>:<args>', got '" + std::string(spec) + "'");
    const std::string_view family = spec.substr(0, colon);
    const std::string_view body = spec.substr(colon + 1);
    if (family == "path") return path_graph(detail::parse_int(body, "path length"));
    if (family == "cycle") return cycle_graph(detail::parse_int(body, "cycle length"));
    if (family == "complete") return complete_graph(detail::parse_int(body, "clique size"));
    if (family == "star") return star_graph(detail::parse_int(body, "leaf count"));
    if (family == "complete_bipartite") {
        const std::size_t comma = body.find(',');
        if (comma == std::string_view::npos) throw GraphError("family spec: complete_bipartite needs m,n");
        return complete_bipartite_graph(detail::parse_int(body.substr(0, comma), "m"), detail::parse_int(body.substr(comma + 1), "n"));
    }
    if (family == "tree") {
        std::string_view list = body;
        if (!list.empty() && list.front() == '[') list.remove_prefix(1);
        if (!list.empty() && list.back() == ']') list.remove_suffix(1);
        std::vector<int> parents;
        std::size_t start = 0;
        while (start <= list.size()) {
            std::size_t end = list.find(',', start);
            if (end == std::string_view::npos) end = list.size();
            const std::string_view item = list.substr(start, end - start);
            if (parents.empty()) {
                if (item != "_" && !item.empty()) throw GraphError("family spec: tree parent list must start with '_' for the root");
                parents.push_back(-1);
            } else {
                parents.push_back(detail::parse_int(item, "parent index"));
            }
            if (end == list.size()) break;
            start = end + 1;
        }
        Graph g = tree_from_parents(parents);
        g.set_name("tree:" + std::string(body));
        return g;
    }
    if (family == "g6") {
        Graph g = parse_graph6(body);
        g.set_name("g6:" + std::string(body));
        return g;
    }
    if (family == "file") {
        // file:<path>[:<line>], 1-based line, default 1.
        std::string path(body);
        int line_no = 1;
        const std::size_t last_colon = path.rfind(':');
        if (last_colon != std::string::npos && last_colon + 1 < path.size() &&
            path.find_first_not_of("0123456789", last_colon + 1) == std::string::npos) {
            line_no = detail::parse_int(std::string_view(path).substr(last_colon + 1), "line number");
            path = path.substr(0, last_colon);
        }
        std::ifstream in(path);
        if (!in) throw GraphError("family spec: cannot open '" + path + "'");
        std::vector<Graph> graphs = parse_graph6_file(in);
        if (line_no < 1 || static_cast<std::size_t>(line_no) > graphs.size())
            throw GraphError("family spec: file '" + path + "' has " + std::to_string(graphs.size()) + " graphs, wanted #" + std::to_string(line_no));
        Graph g = graphs[static_cast<std::size_t>(line_no - 1)];
        g.set_name(std::string(spec));
        return g;
    }
    if (family == "product") return detail::build_product_spec(body);
    throw GraphError("family spec: unknown family '" + std::string(family) + "'");
}

}  // namespace damage
