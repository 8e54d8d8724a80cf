#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "birep/errors.hpp"

namespace birep {

enum class EdgeKind { Directed, Undirected, Bidirected };

inline const char* edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Directed: return "directed";
        case EdgeKind::Undirected: return "undirected";
        case EdgeKind::Bidirected: return "bidirected";
    }
    return "?";
}

inline std::optional<EdgeKind> edge_kind_from_name(const std::string& s) {
    if (s == "directed") return EdgeKind::Directed;
    if (s == "undirected") return EdgeKind::Undirected;
    if (s == "bidirected") return EdgeKind::Bidirected;
    return std::nullopt;
}

/// One edge of a bidirected graph. Vertices are 1-based. Non-directed edges
/// are stored normalized with tail <= head.
struct Edge {
    std::string id;
    int tail = 1;
    int head = 1;
    EdgeKind kind = EdgeKind::Directed;
};

/// Graph with directed, undirected and bidirected edges; loops and parallel
/// edges of any kind are allowed. Vertices are 1..vertex_count.
struct BidirectedGraph {
    int vertex_count = 1;
    std::vector<Edge> edges;

    const Edge* find_edge(const std::string& id) const {
        for (const Edge& e : edges)
            if (e.id == id) return &e;
        return nullptr;
    }

    bool operator==(const BidirectedGraph&) const = default;
};

inline bool operator==(const Edge& a, const Edge& b) {
    return a.id == b.id && a.tail == b.tail && a.head == b.head && a.kind == b.kind;
}

inline void validate(const BidirectedGraph& g) {
    if (g.vertex_count < 1)
        throw BadEndpoint("graph must have at least one vertex");
    std::set<std::string> ids;
    for (const Edge& e : g.edges) {
        if (!ids.insert(e.id).second)
            throw UnknownEdge("duplicate edge id '" + e.id + "'");
        if (e.tail < 1 || e.tail > g.vertex_count || e.head < 1 || e.head > g.vertex_count)
            throw BadEndpoint("edge '" + e.id + "' has an endpoint outside 1.." +
                              std::to_string(g.vertex_count));
        if (e.kind != EdgeKind::Directed && e.tail > e.head)
            throw BadEndpoint("edge '" + e.id + "' must be stored with tail <= head");
    }
}

// --- quivers ---

/// Arrow of a quiver; tail/head are 0-based indices into Quiver::vertices.
struct Arrow {
    std::string id;
    int tail = 0;
    int head = 0;

    bool operator==(const Arrow&) const = default;
};

/// Self-inverse symmetry pairing vertices and arrows (i <-> i*, a <-> a*).
struct Involution {
    std::vector<int> vertex_map;                  // vertex index -> starred index
    std::map<std::string, std::string> arrow_map; // arrow id -> starred arrow id

    bool operator==(const Involution&) const = default;
};

struct Quiver {
    std::vector<std::string> vertices;  // labels; starred vertices are "i*"
    std::vector<Arrow> arrows;
    std::optional<Involution> involution;

    int vertex_index(const std::string& label) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == label) return static_cast<int>(i);
        return -1;
    }

    const Arrow* find_arrow(const std::string& id) const {
        for (const Arrow& a : arrows)
            if (a.id == id) return &a;
        return nullptr;
    }

    bool operator==(const Quiver&) const = default;
};

inline void validate(const Quiver& q) {
    if (q.vertices.empty()) throw BadEndpoint("quiver must have at least one vertex");
    const int n = static_cast<int>(q.vertices.size());
    {
        std::set<std::string> labels(q.vertices.begin(), q.vertices.end());
        if (static_cast<int>(labels.size()) != n)
            throw BadEndpoint("duplicate vertex label");
    }
    std::set<std::string> ids;
    for (const Arrow& a : q.arrows) {
        if (!ids.insert(a.id).second)
            throw UnknownEdge("duplicate arrow id '" + a.id + "'");
        if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
            throw BadEndpoint("arrow '" + a.id + "' has an endpoint out of range");
    }
    if (q.involution) {
        const Involution& inv = *q.involution;
        if (static_cast<int>(inv.vertex_map.size()) != n)
            throw BadEndpoint("involution vertex map has wrong size");
        for (int v = 0; v < n; ++v) {
            const int w = inv.vertex_map[v];
            if (w < 0 || w >= n || inv.vertex_map[w] != v)
                throw BadEndpoint("vertex involution is not self-inverse");
        }
        for (const auto& [id, star] : inv.arrow_map) {
            const Arrow* a = q.find_arrow(id);
            const Arrow* as = q.find_arrow(star);
            if (!a || !as)
                throw UnknownEdge("involution names unknown arrow '" + id + "' or '" + star + "'");
            auto it = inv.arrow_map.find(star);
            if (it == inv.arrow_map.end() || it->second != id)
                throw BadEndpoint("arrow involution is not self-inverse at '" + id + "'");
            // an arrow i -> j must be sent to an arrow j* -> i*
            if (as->tail != inv.vertex_map[a->head] || as->head != inv.vertex_map[a->tail])
                throw BadEndpoint("involution maps arrow '" + id + "' to incompatible endpoints");
        }
        if (inv.arrow_map.size() != q.arrows.size())
            throw BadEndpoint("arrow involution must cover every arrow");
    }
}

/// Quiver on vertices {1..t, 1*..t*} obtained by doubling a bidirected
/// graph, together with the edge -> (arrow, starred arrow) provenance.
struct DoubledQuiver {
    Quiver quiver;
    int base_vertex_count = 0;  // t; quiver vertex i* has index i-1+t
    std::map<std::string, std::pair<std::string, std::string>> provenance;

    int star(int vertex_index) const {
        return vertex_index < base_vertex_count ? vertex_index + base_vertex_count
                                                : vertex_index - base_vertex_count;
    }

    bool operator==(const DoubledQuiver&) const = default;
};

inline void validate(const DoubledQuiver& d) {
    validate(d.quiver);
    const int t = d.base_vertex_count;
    if (static_cast<int>(d.quiver.vertices.size()) != 2 * t)
        throw BadEndpoint("doubled quiver must have 2t vertices");
    if (!d.quiver.involution)
        throw BadEndpoint("doubled quiver must carry its involution");
    for (int v = 0; v < t; ++v)
        if (d.quiver.involution->vertex_map[v] != v + t)
            throw BadEndpoint("doubled quiver involution must be fixed-point-free, i <-> i*");
    std::set<std::string> covered;
    for (const auto& [edge, pair] : d.provenance) {
        if (!d.quiver.find_arrow(pair.first) || !d.quiver.find_arrow(pair.second))
            throw UnknownEdge("provenance of edge '" + edge + "' names unknown arrows");
        covered.insert(pair.first);
        covered.insert(pair.second);
    }
    if (covered.size() != d.quiver.arrows.size())
        throw UnknownEdge("provenance must cover every arrow exactly once");
}

}  // namespace birep
