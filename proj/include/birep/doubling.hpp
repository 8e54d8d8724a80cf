#pragma once

#include <string>
#include <utility>

#include "birep/isomorphism.hpp"
#include "birep/representation.hpp"

namespace birep {

inline std::string star_label(const std::string& label) { return label + "*"; }

/// Doubles a bidirected graph into a quiver on {1..t, 1*..t*}:
///   directed   beta : i -> j          =>  beta: i -> j    and beta*: j* -> i*
///   undirected alpha: i -- j  (i<=j)  =>  alpha: j -> i*  and alpha*: i -> j*
///   bidirected gamma: i <-> j (i<=j)  =>  gamma: j* -> i  and gamma*: i* -> j
inline DoubledQuiver underline_graph(const BidirectedGraph& g) {
    validate(g);
    const int t = g.vertex_count;
    DoubledQuiver out;
    out.base_vertex_count = t;
    Quiver& q = out.quiver;
    for (int v = 1; v <= t; ++v) q.vertices.push_back(std::to_string(v));
    for (int v = 1; v <= t; ++v) q.vertices.push_back(star_label(std::to_string(v)));
    Involution inv;
    inv.vertex_map.resize(2 * static_cast<std::size_t>(t));
    for (int v = 0; v < t; ++v) {
        inv.vertex_map[static_cast<std::size_t>(v)] = v + t;
        inv.vertex_map[static_cast<std::size_t>(v + t)] = v;
    }
    for (const Edge& e : g.edges) {
        const int i = e.tail - 1;
        const int j = e.head - 1;
        const std::string sid = star_label(e.id);
        switch (e.kind) {
            case EdgeKind::Directed:
                q.arrows.push_back({e.id, i, j});
                q.arrows.push_back({sid, j + t, i + t});
                break;
            case EdgeKind::Undirected:
                q.arrows.push_back({e.id, j, i + t});
                q.arrows.push_back({sid, i, j + t});
                break;
            case EdgeKind::Bidirected:
                q.arrows.push_back({e.id, j + t, i});
                q.arrows.push_back({sid, i + t, j});
                break;
        }
        inv.arrow_map[e.id] = sid;
        inv.arrow_map[sid] = e.id;
        out.provenance[e.id] = {e.id, sid};
    }
    q.involution = std::move(inv);
    return out;
}

/// Doubles a representation: an edge's stored matrix goes on its first
/// doubled arrow, the transpose on the starred arrow; dims are repeated.
inline QuiverRep underline_rep(const Representation& rep, const DoubledQuiver& doubled) {
    validate(rep);
    QuiverRep out;
    out.quiver = doubled.quiver;
    out.dims = rep.dims;
    out.dims.insert(out.dims.end(), rep.dims.begin(), rep.dims.end());
    for (const Edge& e : rep.graph.edges) {
        const auto& [aid, sid] = doubled.provenance.at(e.id);
        const CMatrix& m = rep.matrices.at(e.id);
        out.matrices[aid] = m;
        out.matrices[sid] = m.transpose();
    }
    validate(out);
    return out;
}

inline QuiverRep underline_rep(const Representation& rep) {
    return underline_rep(rep, underline_graph(rep.graph));
}

/// Doubles an isomorphism phi: A -> B into underline(A) -> underline(B):
/// component Phi_i at vertex i, Phi_i^{-T} at vertex i*.
inline Isomorphism underline_iso(const Isomorphism& phi) {
    Isomorphism out;
    out.mats.reserve(2 * phi.mats.size());
    for (const CMatrix& s : phi.mats) out.mats.push_back(s);
    for (const CMatrix& s : phi.mats) {
        if (s.rows() > 0 && classify_invertibility(s) != Invertibility::Invertible)
            throw SingularComponent("cannot double a singular component");
        out.mats.push_back(inverse_transpose(s));
    }
    return out;
}

/// Validates a doubled representation, including the transpose-pairing
/// ("selfdual") invariant: each starred arrow carries the exact transpose.
inline void validate_doubled(const QuiverRep& rep, const DoubledQuiver& doubled) {
    validate(rep);
    validate(doubled);
    if (rep.quiver != doubled.quiver)
        throw UnknownEdge("representation does not live on the given doubled quiver");
    const int t = doubled.base_vertex_count;
    for (int v = 0; v < t; ++v)
        if (rep.dims[static_cast<std::size_t>(v)] != rep.dims[static_cast<std::size_t>(v + t)])
            throw ShapeMismatch("starred vertex " + std::to_string(v + 1) +
                                "* has a different dimension than its partner");
    for (const auto& [edge, pair] : doubled.provenance) {
        const CMatrix& m = rep.matrices.at(pair.first);
        const CMatrix& ms = rep.matrices.at(pair.second);
        if (ms.rows() != m.cols() || ms.cols() != m.rows() ||
            (ms - m.transpose()).norm() != 0.0)
            throw ShapeMismatch("arrow '" + pair.second + "' is not the exact transpose of '" +
                                pair.first + "'");
    }
}

}  // namespace birep
