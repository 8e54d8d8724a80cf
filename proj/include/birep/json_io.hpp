#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "birep/doubling.hpp"
#include "birep/isomorphism.hpp"
#include "birep/matfun.hpp"
#include "birep/pair_encoding.hpp"
#include "birep/representation.hpp"

namespace birep {

using nlohmann::json;

namespace detail {

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad or missing field '") + key + "': " + e.what(), where);
    }
}

}  // namespace detail

// --- matrices ---

inline json matrix_to_json(const CMatrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline CMatrix matrix_from_json(const json& j, const std::string& where = "matrix") {
    const auto rows = detail::field<Eigen::Index>(j, "rows", where);
    const auto cols = detail::field<Eigen::Index>(j, "cols", where);
    if (rows < 0 || cols < 0) throw ParseError("negative matrix shape", where);
    const json& data = j.contains("data") ? j["data"] : json::array();
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw ParseError("matrix data length does not match rows*cols", where);
    CMatrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++k) {
            const json& entry = data[static_cast<std::size_t>(k)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw ParseError("matrix entries must be [re, im] pairs",
                                 where + ", entry " + std::to_string(k));
            m(i, j2) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    return m;
}

inline json matrix_map_to_json(const std::map<std::string, CMatrix>& mats) {
    json out = json::object();
    for (const auto& [id, m] : mats) out[id] = matrix_to_json(m);
    return out;
}

inline std::map<std::string, CMatrix> matrix_map_from_json(const json& j,
                                                           const std::string& where) {
    if (!j.is_object()) throw ParseError("matrices must be an object", where);
    std::map<std::string, CMatrix> out;
    for (const auto& [id, mj] : j.items()) out[id] = matrix_from_json(mj, where + "." + id);
    return out;
}

// --- graphs ---

inline json graph_to_json(const BidirectedGraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges)
        edges.push_back({{"id", e.id},
                         {"tail", e.tail},
                         {"head", e.head},
                         {"kind", edge_kind_name(e.kind)}});
    return {{"t", g.vertex_count}, {"edges", std::move(edges)}};
}

inline BidirectedGraph graph_from_json(const json& j) {
    BidirectedGraph g;
    g.vertex_count = detail::field<int>(j, "t", "graph");
    for (const json& ej : j.contains("edges") ? j["edges"] : json::array()) {
        Edge e;
        e.id = detail::field<std::string>(ej, "id", "edge");
        e.tail = detail::field<int>(ej, "tail", "edge '" + e.id + "'");
        e.head = detail::field<int>(ej, "head", "edge '" + e.id + "'");
        const auto kind = detail::field<std::string>(ej, "kind", "edge '" + e.id + "'");
        const auto parsed = edge_kind_from_name(kind);
        if (!parsed)
            throw ParseError("unknown edge kind '" + kind + "'", "edge '" + e.id + "'");
        e.kind = *parsed;
        g.edges.push_back(std::move(e));
    }
    return g;
}

inline json quiver_to_json(const Quiver& q) {
    json arrows = json::array();
    for (const Arrow& a : q.arrows)
        arrows.push_back({{"id", a.id},
                          {"tail", q.vertices[static_cast<std::size_t>(a.tail)]},
                          {"head", q.vertices[static_cast<std::size_t>(a.head)]}});
    json out = {{"vertices", q.vertices}, {"arrows", std::move(arrows)}};
    if (q.involution) {
        json vmap = json::object();
        for (std::size_t v = 0; v < q.vertices.size(); ++v)
            vmap[q.vertices[v]] =
                q.vertices[static_cast<std::size_t>(q.involution->vertex_map[v])];
        out["involution"] = {{"vertices", std::move(vmap)},
                             {"arrows", q.involution->arrow_map}};
    }
    return out;
}

inline Quiver quiver_from_json(const json& j) {
    Quiver q;
    q.vertices = detail::field<std::vector<std::string>>(j, "vertices", "quiver");
    for (const json& aj : j.contains("arrows") ? j["arrows"] : json::array()) {
        Arrow a;
        a.id = detail::field<std::string>(aj, "id", "arrow");
        const auto tail = detail::field<std::string>(aj, "tail", "arrow '" + a.id + "'");
        const auto head = detail::field<std::string>(aj, "head", "arrow '" + a.id + "'");
        a.tail = q.vertex_index(tail);
        a.head = q.vertex_index(head);
        if (a.tail < 0 || a.head < 0)
            throw ParseError("arrow endpoint is not a listed vertex", "arrow '" + a.id + "'");
        q.arrows.push_back(std::move(a));
    }
    if (j.contains("involution")) {
        Involution inv;
        inv.vertex_map.assign(q.vertices.size(), -1);
        const json& ij = j["involution"];
        for (const auto& [from, to] : detail::field<std::map<std::string, std::string>>(
                 ij, "vertices", "involution")) {
            const int a = q.vertex_index(from);
            const int b = q.vertex_index(to);
            if (a < 0 || b < 0) throw ParseError("involution names unknown vertex", "involution");
            inv.vertex_map[static_cast<std::size_t>(a)] = b;
        }
        inv.arrow_map =
            detail::field<std::map<std::string, std::string>>(ij, "arrows", "involution");
        q.involution = std::move(inv);
    }
    return q;
}

// --- representations ---

inline json rep_to_json(const Representation& rep) {
    return {{"graph", graph_to_json(rep.graph)},
            {"dims", rep.dims},
            {"matrices", matrix_map_to_json(rep.matrices)}};
}

inline Representation rep_from_json(const json& j) {
    Representation rep;
    if (!j.contains("graph")) throw ParseError("missing 'graph'", "representation");
    rep.graph = graph_from_json(j["graph"]);
    rep.dims = detail::field<DimensionVector>(j, "dims", "representation");
    rep.matrices = matrix_map_from_json(j.contains("matrices") ? j["matrices"] : json::object(),
                                        "matrices");
    return rep;
}

inline json quiver_rep_to_json(const QuiverRep& rep) {
    return {{"quiver", quiver_to_json(rep.quiver)},
            {"dims", rep.dims},
            {"matrices", matrix_map_to_json(rep.matrices)}};
}

inline QuiverRep quiver_rep_from_json(const json& j) {
    QuiverRep rep;
    if (!j.contains("quiver")) throw ParseError("missing 'quiver'", "representation");
    rep.quiver = quiver_from_json(j["quiver"]);
    rep.dims = detail::field<DimensionVector>(j, "dims", "representation");
    rep.matrices = matrix_map_from_json(j.contains("matrices") ? j["matrices"] : json::object(),
                                        "matrices");
    return rep;
}

/// Doubled representation with its provenance, as emitted by the CLI.
inline json doubled_rep_to_json(const QuiverRep& rep, const DoubledQuiver& doubled) {
    json prov = json::object();
    for (const auto& [edge, pair] : doubled.provenance)
        prov[edge] = {pair.first, pair.second};
    json out = quiver_rep_to_json(rep);
    out["base_vertex_count"] = doubled.base_vertex_count;
    out["provenance"] = std::move(prov);
    return out;
}

inline std::pair<QuiverRep, DoubledQuiver> doubled_rep_from_json(const json& j) {
    QuiverRep rep = quiver_rep_from_json(j);
    DoubledQuiver doubled;
    doubled.quiver = rep.quiver;
    doubled.base_vertex_count = detail::field<int>(j, "base_vertex_count", "doubled rep");
    for (const auto& [edge, pair] :
         detail::field<std::map<std::string, std::vector<std::string>>>(j, "provenance",
                                                                        "doubled rep")) {
        if (pair.size() != 2)
            throw ParseError("provenance entries must list two arrows", "edge '" + edge + "'");
        doubled.provenance[edge] = {pair[0], pair[1]};
    }
    return {std::move(rep), std::move(doubled)};
}

// --- isomorphisms ---

/// Components are keyed by vertex label ("1".."t", starred labels "i*").
inline json iso_to_json(const Isomorphism& iso, const std::vector<std::string>& labels) {
    if (iso.mats.size() != labels.size())
        throw ShapeMismatch("isomorphism and label list disagree");
    json mats = json::object();
    for (std::size_t v = 0; v < labels.size(); ++v)
        mats[labels[v]] = matrix_to_json(iso.mats[v]);
    return {{"mats", std::move(mats)}};
}

inline std::vector<std::string> vertex_labels(const BidirectedGraph& g) {
    std::vector<std::string> labels;
    for (int v = 1; v <= g.vertex_count; ++v) labels.push_back(std::to_string(v));
    return labels;
}

inline Isomorphism iso_from_json(const json& j, const std::vector<std::string>& labels) {
    if (!j.contains("mats")) throw ParseError("missing 'mats'", "isomorphism");
    Isomorphism iso;
    for (const std::string& label : labels) {
        if (!j["mats"].contains(label))
            throw ParseError("missing component for vertex '" + label + "'", "isomorphism");
        iso.mats.push_back(matrix_from_json(j["mats"][label], "mats." + label));
    }
    return iso;
}

// --- pairs and layouts ---

inline json layout_to_json(const PairLayout& layout) {
    json copies = json::array();
    for (const CopyBlock& c : layout.copies)
        copies.push_back({{"index", c.index}, {"scalar", c.scalar}, {"size", c.size}});
    json arrows = json::object();
    for (const auto& [id, place] : layout.arrow_blocks)
        arrows[id] = {{"block_row", place.block_row}, {"block_col", place.block_col}};
    return {{"quiver", quiver_to_json(layout.quiver)},
            {"dims", layout.dims},
            {"copy_size", layout.copy_size},
            {"copies", std::move(copies)},
            {"vertex_offsets", layout.vertex_offsets},
            {"arrows", std::move(arrows)}};
}

inline PairLayout layout_from_json(const json& j) {
    PairLayout layout;
    if (!j.contains("quiver")) throw ParseError("missing 'quiver'", "layout");
    layout.quiver = quiver_from_json(j["quiver"]);
    layout.dims = detail::field<DimensionVector>(j, "dims", "layout");
    layout.copy_size = detail::field<int>(j, "copy_size", "layout");
    for (const json& cj : j.contains("copies") ? j["copies"] : json::array())
        layout.copies.push_back({detail::field<int>(cj, "index", "copy"),
                                 detail::field<double>(cj, "scalar", "copy"),
                                 detail::field<int>(cj, "size", "copy")});
    layout.vertex_offsets = detail::field<std::vector<int>>(j, "vertex_offsets", "layout");
    for (const auto& [id, pj] : (j.contains("arrows") ? j["arrows"] : json::object()).items())
        layout.arrow_blocks[id] = {detail::field<int>(pj, "block_row", "arrow '" + id + "'"),
                                   detail::field<int>(pj, "block_col", "arrow '" + id + "'")};
    return layout;
}

inline json pair_to_json(const MatrixPair& pair) {
    return {{"M", matrix_to_json(pair.m)}, {"N", matrix_to_json(pair.n)}};
}

inline MatrixPair pair_from_json(const json& j) {
    if (!j.contains("M") || !j.contains("N")) throw ParseError("missing 'M' or 'N'", "pair");
    return {matrix_from_json(j["M"], "M"), matrix_from_json(j["N"], "N")};
}

// --- top-level convenience ---

inline std::string serialize(const Representation& rep) { return rep_to_json(rep).dump(2) + "\n"; }
inline std::string serialize(const QuiverRep& rep) { return quiver_rep_to_json(rep).dump(2) + "\n"; }

inline Representation parse_representation(const std::string& text) {
    return rep_from_json(detail::parse_json(text));
}

inline QuiverRep parse_quiver_rep(const std::string& text) {
    return quiver_rep_from_json(detail::parse_json(text));
}

}  // namespace birep
