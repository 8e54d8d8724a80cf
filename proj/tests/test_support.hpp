#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <string>

#include "birep/birep.hpp"

namespace birep::testing {

inline DimensionVector random_dims(Rng& rng, int count, int max_dim, int min_dim = 1) {
    std::uniform_int_distribution<int> dim(min_dim, max_dim);
    DimensionVector dims(static_cast<std::size_t>(count));
    for (int& d : dims) d = dim(rng);
    return dims;
}

/// Random bidirected graph; with all_kinds set, at least one edge of each
/// kind is present (loops included in the mix).
inline BidirectedGraph random_graph(Rng& rng, int max_t, int extra_edges, bool all_kinds) {
    std::uniform_int_distribution<int> tdist(all_kinds ? 2 : 1, max_t);
    BidirectedGraph g;
    g.vertex_count = tdist(rng);
    std::uniform_int_distribution<int> vdist(1, g.vertex_count);
    std::uniform_int_distribution<int> kdist(0, 2);
    int next_id = 0;
    auto add_edge = [&](EdgeKind kind) {
        int tail = vdist(rng);
        int head = vdist(rng);
        if (kind != EdgeKind::Directed && tail > head) std::swap(tail, head);
        g.edges.push_back({"e" + std::to_string(next_id++), tail, head, kind});
    };
    if (all_kinds) {
        add_edge(EdgeKind::Directed);
        add_edge(EdgeKind::Undirected);
        add_edge(EdgeKind::Bidirected);
    }
    std::uniform_int_distribution<int> extra(0, extra_edges);
    const int count = extra(rng);
    for (int i = 0; i < count; ++i)
        add_edge(static_cast<EdgeKind>(kdist(rng)));
    validate(g);
    return g;
}

inline Quiver random_quiver(Rng& rng, int max_t, int max_arrows, int min_arrows = 1) {
    std::uniform_int_distribution<int> tdist(1, max_t);
    Quiver q;
    const int t = tdist(rng);
    for (int v = 1; v <= t; ++v) q.vertices.push_back(std::to_string(v));
    std::uniform_int_distribution<int> adist(min_arrows, max_arrows);
    std::uniform_int_distribution<int> vdist(0, t - 1);
    const int k = adist(rng);
    for (int i = 0; i < k; ++i)
        q.arrows.push_back({"a" + std::to_string(i), vdist(rng), vdist(rng)});
    validate(q);
    return q;
}

/// Generic invertible tuple (not near the identity).
inline Isomorphism random_invertible_iso(const DimensionVector& dims, Rng& rng) {
    Isomorphism iso;
    for (int n : dims) {
        for (;;) {
            CMatrix s = random_gaussian(n, n, rng);
            if (n == 0 || is_invertible(s)) {
                iso.mats.push_back(std::move(s));
                break;
            }
        }
    }
    return iso;
}

/// Near-identity tuple over the doubled vertex set with deviation exactly
/// `delta` (split evenly across the nonempty components).
inline Isomorphism random_doubled_near_identity(const DimensionVector& base_dims, double delta,
                                                Rng& rng) {
    DimensionVector dims = base_dims;
    dims.insert(dims.end(), base_dims.begin(), base_dims.end());
    int nonempty = 0;
    for (int n : dims) nonempty += n > 0 ? 1 : 0;
    Isomorphism iso;
    for (int n : dims) {
        if (n == 0) {
            iso.mats.push_back(CMatrix(0, 0));
            continue;
        }
        CMatrix e = random_gaussian(n, n, rng);
        while (e.norm() == 0.0) e = random_gaussian(n, n, rng);
        iso.mats.push_back(CMatrix::Identity(n, n) +
                           (delta / (nonempty * e.norm())) * e);
    }
    return iso;
}

}  // namespace birep::testing
