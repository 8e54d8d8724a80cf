#pragma once

#include <map>
#include <string>
#include <vector>

#include "birep/graph.hpp"
#include "birep/linalg.hpp"

namespace birep {

/// One dimension per vertex; entries may be zero.
using DimensionVector = std::vector<int>;

/// Matrix representation of a bidirected graph.
///
/// Shape convention (fixed once, used everywhere):
///   directed   i -> j          : n_j x n_i
///   undirected i -- j  (i<=j)  : n_i x n_j   (matrix of the doubled arrow j -> i*)
///   bidirected i <-> j (i<=j)  : n_i x n_j   (matrix of the doubled arrow j* -> i)
struct Representation {
    BidirectedGraph graph;
    DimensionVector dims;                    // dims[v-1] is the dimension at vertex v
    std::map<std::string, CMatrix> matrices; // edge id -> matrix

    int dim_at(int vertex) const { return dims[static_cast<std::size_t>(vertex - 1)]; }
};

/// Matrix representation of a quiver: arrow u -> v carries an n_v x n_u matrix.
struct QuiverRep {
    Quiver quiver;
    DimensionVector dims;                    // dims[i] is the dimension at vertex index i
    std::map<std::string, CMatrix> matrices; // arrow id -> matrix
};

inline std::pair<int, int> expected_shape(const Edge& e, const DimensionVector& dims) {
    const int nt = dims[static_cast<std::size_t>(e.tail - 1)];
    const int nh = dims[static_cast<std::size_t>(e.head - 1)];
    if (e.kind == EdgeKind::Directed) return {nh, nt};
    return {nt, nh};
}

inline void validate(const Representation& rep) {
    validate(rep.graph);
    if (static_cast<int>(rep.dims.size()) != rep.graph.vertex_count)
        throw ShapeMismatch("dimension vector length differs from vertex count");
    for (int d : rep.dims)
        if (d < 0) throw ShapeMismatch("negative dimension");
    for (const auto& [id, m] : rep.matrices)
        if (!rep.graph.find_edge(id))
            throw UnknownEdge("matrix assigned to unknown edge '" + id + "'");
    for (const Edge& e : rep.graph.edges) {
        auto it = rep.matrices.find(e.id);
        if (it == rep.matrices.end())
            throw UnknownEdge("edge '" + e.id + "' has no matrix");
        const auto [rows, cols] = expected_shape(e, rep.dims);
        if (it->second.rows() != rows || it->second.cols() != cols)
            throw ShapeMismatch("edge '" + e.id + "' expects a " + std::to_string(rows) +
                                "x" + std::to_string(cols) + " matrix, got " +
                                std::to_string(it->second.rows()) + "x" +
                                std::to_string(it->second.cols()));
    }
}

inline void validate(const QuiverRep& rep) {
    validate(rep.quiver);
    if (rep.dims.size() != rep.quiver.vertices.size())
        throw ShapeMismatch("dimension vector length differs from vertex count");
    for (int d : rep.dims)
        if (d < 0) throw ShapeMismatch("negative dimension");
    for (const auto& [id, m] : rep.matrices)
        if (!rep.quiver.find_arrow(id))
            throw UnknownEdge("matrix assigned to unknown arrow '" + id + "'");
    for (const Arrow& a : rep.quiver.arrows) {
        auto it = rep.matrices.find(a.id);
        if (it == rep.matrices.end())
            throw UnknownEdge("arrow '" + a.id + "' has no matrix");
        const int rows = rep.dims[static_cast<std::size_t>(a.head)];
        const int cols = rep.dims[static_cast<std::size_t>(a.tail)];
        if (it->second.rows() != rows || it->second.cols() != cols)
            throw ShapeMismatch("arrow '" + a.id + "' expects a " + std::to_string(rows) +
                                "x" + std::to_string(cols) + " matrix");
    }
}

namespace detail {
inline bool matrices_equal(const std::map<std::string, CMatrix>& a,
                           const std::map<std::string, CMatrix>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [id, m] : a) {
        auto it = b.find(id);
        if (it == b.end() || m.rows() != it->second.rows() || m.cols() != it->second.cols() ||
            (m - it->second).squaredNorm() != 0.0)
            return false;
    }
    return true;
}
}  // namespace detail

inline bool operator==(const Representation& a, const Representation& b) {
    return a.graph == b.graph && a.dims == b.dims &&
           detail::matrices_equal(a.matrices, b.matrices);
}

inline bool operator==(const QuiverRep& a, const QuiverRep& b) {
    return a.quiver == b.quiver && a.dims == b.dims &&
           detail::matrices_equal(a.matrices, b.matrices);
}

/// Sum of Frobenius norms over all edge matrices.
template <class Rep>
double rep_norm(const Rep& rep) {
    double sum = 0.0;
    for (const auto& [id, m] : rep.matrices) sum += m.norm();
    return sum;
}

/// Edge-wise distance (rep_norm of the difference); both representations
/// must live on the same graph with the same dimensions.
template <class Rep>
double rep_distance(const Rep& a, const Rep& b) {
    double sum = 0.0;
    for (const auto& [id, m] : a.matrices) {
        auto it = b.matrices.find(id);
        if (it == b.matrices.end()) throw UnknownEdge("no matching matrix for '" + id + "'");
        if (m.rows() != it->second.rows() || m.cols() != it->second.cols())
            throw ShapeMismatch("matrices for '" + id + "' have different shapes");
        sum += (m - it->second).norm();
    }
    if (b.matrices.size() != a.matrices.size())
        throw UnknownEdge("representations carry different edge sets");
    return sum;
}

inline Representation random_representation(const BidirectedGraph& graph,
                                            const DimensionVector& dims, double scale,
                                            std::uint64_t seed) {
    Rng rng(seed);
    Representation rep{graph, dims, {}};
    for (const Edge& e : graph.edges) {
        const auto [rows, cols] = expected_shape(e, dims);
        rep.matrices[e.id] = scale * random_gaussian(rows, cols, rng);
    }
    validate(rep);
    return rep;
}

inline QuiverRep random_representation(const Quiver& quiver, const DimensionVector& dims,
                                       double scale, std::uint64_t seed) {
    Rng rng(seed);
    QuiverRep rep{quiver, dims, {}};
    for (const Arrow& a : quiver.arrows) {
        const int rows = dims[static_cast<std::size_t>(a.head)];
        const int cols = dims[static_cast<std::size_t>(a.tail)];
        rep.matrices[a.id] = scale * random_gaussian(rows, cols, rng);
    }
    validate(rep);
    return rep;
}

/// Reinterprets an all-directed bidirected graph as a quiver (vertex labels
/// "1".."t"); throws if any edge is a form.
inline Quiver as_quiver(const BidirectedGraph& g) {
    Quiver q;
    for (int v = 1; v <= g.vertex_count; ++v) q.vertices.push_back(std::to_string(v));
    for (const Edge& e : g.edges) {
        if (e.kind != EdgeKind::Directed)
            throw BadEndpoint("edge '" + e.id + "' is not directed; double the graph first");
        q.arrows.push_back({e.id, e.tail - 1, e.head - 1});
    }
    return q;
}

inline QuiverRep as_quiver_rep(const Representation& rep) {
    return QuiverRep{as_quiver(rep.graph), rep.dims, rep.matrices};
}

}  // namespace birep
