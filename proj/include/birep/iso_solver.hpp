#pragma once

#include <optional>
#include <vector>

#include "birep/doubling.hpp"
#include "birep/matfun.hpp"
#include "birep/pair_encoding.hpp"

namespace birep {

/// How an isomorphism is searched for / recovered.
enum class Route { QuiverDirect, Pair, BidirectedDoubled };

inline const char* route_name(Route r) {
    switch (r) {
        case Route::QuiverDirect: return "quiver-direct";
        case Route::Pair: return "pair";
        case Route::BidirectedDoubled: return "bidirected-doubled";
    }
    return "?";
}

/// Orthonormal basis of the space of intertwiners A -> B (tuples (X_i) with
/// X_j M^A = M^B X_i for every arrow i -> j); not necessarily invertible.
struct HomBasis {
    DimensionVector source_dims;
    DimensionVector target_dims;
    std::vector<std::vector<CMatrix>> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
};

/// Nullspace of the stacked intertwining operator.
inline HomBasis hom_space(const QuiverRep& a, const QuiverRep& b) {
    if (a.quiver != b.quiver)
        throw ShapeMismatch("hom space needs representations of the same quiver");
    const std::size_t t = a.dims.size();
    std::vector<int> offsets(t + 1, 0);
    for (std::size_t v = 0; v < t; ++v)
        offsets[v + 1] = offsets[v] + b.dims[v] * a.dims[v];
    const int unknowns = offsets[t];

    int rows = 0;
    for (const Arrow& arrow : a.quiver.arrows)
        rows += a.dims[static_cast<std::size_t>(arrow.tail)] *
                b.dims[static_cast<std::size_t>(arrow.head)];

    CMatrix op = CMatrix::Zero(rows, unknowns);
    int row = 0;
    for (const Arrow& arrow : a.quiver.arrows) {
        const auto i = static_cast<std::size_t>(arrow.tail);
        const auto j = static_cast<std::size_t>(arrow.head);
        const CMatrix& ma = a.matrices.at(arrow.id);
        const CMatrix& mb = b.matrices.at(arrow.id);
        const int eq = a.dims[i] * b.dims[j];
        // vec(X_j M^A) = (M^A)^T kron I, vec(M^B X_i) = I kron M^B
        op.block(row, offsets[j], eq, b.dims[j] * a.dims[j]) =
            detail::kron(ma.transpose(), CMatrix::Identity(b.dims[j], b.dims[j]));
        op.block(row, offsets[i], eq, b.dims[i] * a.dims[i]) -=
            detail::kron(CMatrix::Identity(a.dims[i], a.dims[i]), mb);
        row += eq;
    }

    const CMatrix null = nullspace(op);
    HomBasis out{a.dims, b.dims, {}};
    for (Eigen::Index c = 0; c < null.cols(); ++c) {
        std::vector<CMatrix> tuple;
        tuple.reserve(t);
        for (std::size_t v = 0; v < t; ++v)
            tuple.push_back(detail::unvec(null.col(c).segment(offsets[v], b.dims[v] * a.dims[v]),
                                          b.dims[v], a.dims[v]));
        out.basis.push_back(std::move(tuple));
    }
    return out;
}

namespace detail {

inline std::optional<Isomorphism> sample_invertible_tuple(const HomBasis& hom,
                                                          std::uint64_t seed) {
    if (hom.dimension() == 0) return std::nullopt;
    Rng rng(seed);
    bool ambiguous = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const CMatrix g = random_gaussian(hom.dimension(), 1, rng);
        Isomorphism iso;
        for (std::size_t v = 0; v < hom.source_dims.size(); ++v) {
            CMatrix s = CMatrix::Zero(hom.target_dims[v], hom.source_dims[v]);
            for (int q = 0; q < hom.dimension(); ++q)
                s += g(q, 0) * hom.basis[static_cast<std::size_t>(q)][v];
            iso.mats.push_back(std::move(s));
        }
        bool singular = false;
        bool banded = false;
        for (const CMatrix& s : iso.mats) {
            switch (classify_invertibility(s)) {
                case Invertibility::Singular: singular = true; break;
                case Invertibility::Ambiguous: banded = true; break;
                case Invertibility::Invertible: break;
            }
        }
        if (!singular && !banded) return iso;
        if (banded && !singular) ambiguous = true;
    }
    if (ambiguous)
        throw ToleranceAmbiguous("sampled intertwiners straddle the invertibility band");
    return std::nullopt;
}

}  // namespace detail

/// Decides isomorphism of two same-quiver representations by sampling a
/// generic element of hom_space(a, b); returns it as an isomorphism a -> b.
/// Succeeds with probability 1 when the representations are isomorphic;
/// a none is strong evidence, not a certificate.
inline std::optional<Isomorphism> decide_iso_quiver(const QuiverRep& a, const QuiverRep& b,
                                                    std::uint64_t seed,
                                                    double tol = kIsoResidualTol) {
    if (a.quiver != b.quiver)
        throw ShapeMismatch("representations live on different quivers");
    if (a.dims != b.dims) return std::nullopt;
    bool all_zero = true;
    for (int d : a.dims) all_zero = all_zero && d == 0;
    if (all_zero) return identity_isomorphism(a.dims);

    auto iso = detail::sample_invertible_tuple(hom_space(a, b), seed);
    if (!iso) return std::nullopt;
    const double res = iso_residual(a, b, *iso);
    if (res > tol)
        throw NumericalError("sampled isomorphism fails verification, residual " +
                             std::to_string(res));
    return iso;
}

/// Minimizer of sum ||X_i - I||_F^2 over intertwiners b -> a, i.e. the
/// orthogonal projection of the identity tuple onto hom_space(b, a). Not
/// guaranteed invertible; callers check.
inline std::vector<CMatrix> nearest_identity_intertwiner(const QuiverRep& a,
                                                         const QuiverRep& b) {
    if (a.dims != b.dims)
        throw ShapeMismatch("nearest-identity recovery needs equal dimension vectors");
    const HomBasis hom = hom_space(b, a);
    const std::size_t t = a.dims.size();
    std::vector<CMatrix> out;
    out.reserve(t);
    for (std::size_t v = 0; v < t; ++v)
        out.push_back(CMatrix::Zero(a.dims[v], a.dims[v]));
    for (const auto& tuple : hom.basis) {
        Complex coeff(0.0);
        for (std::size_t v = 0; v < t; ++v)
            coeff += (tuple[v].conjugate().array() *
                      CMatrix::Identity(a.dims[v], a.dims[v]).array())
                         .sum();
        for (std::size_t v = 0; v < t; ++v) out[v] += coeff * tuple[v];
    }
    return out;
}

/// Transpose-flip of an isomorphism of doubled representations: component at
/// vertex v becomes Psi_{v*}^T, and the direction reverses.
inline Isomorphism adjoint_iso(const Isomorphism& psi, int base_vertex_count) {
    const int t = base_vertex_count;
    if (psi.mats.size() != 2 * static_cast<std::size_t>(t))
        throw ShapeMismatch("adjoint needs one component per doubled vertex");
    Isomorphism out;
    out.mats.resize(psi.mats.size());
    for (int v = 0; v < 2 * t; ++v) {
        const int star = v < t ? v + t : v - t;
        out.mats[static_cast<std::size_t>(v)] =
            psi.mats[static_cast<std::size_t>(star)].transpose();
    }
    return out;
}

/// Turns an isomorphism psi: underline(B) -> underline(A) into a
/// G-isomorphism B -> A. Per vertex i, T_i = Psi_{i*}^T Psi_i gets a shared-
/// branch primary square root W_i, and the component is Psi_{i*}^{-T} W_i.
/// The result is verified before it is returned.
inline Isomorphism correct_to_bidirected_iso(const Isomorphism& psi, const Representation& a,
                                             const Representation& b,
                                             double tol = kIsoResidualTol) {
    const auto t = static_cast<std::size_t>(a.graph.vertex_count);
    if (psi.mats.size() != 2 * t)
        throw ShapeMismatch("expected one component per doubled vertex");
    std::vector<CMatrix> grams;
    grams.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
        grams.push_back(psi.mats[i + t].transpose() * psi.mats[i]);
    const std::vector<SqrtResult> roots = blockwise_primary_sqrt(grams);
    Isomorphism phi;
    phi.mats.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
        phi.mats.push_back(inverse_transpose(psi.mats[i + t]) * roots[i].root);
    const double res = iso_residual(b, a, phi);
    if (res > tol)
        throw CorrectionFailed("corrected tuple fails verification as an isomorphism, residual " +
                               std::to_string(res));
    return phi;
}

/// Decides isomorphism of bidirected-graph representations by doubling both
/// and correcting the doubled witness; the returned isomorphism maps b -> a.
inline std::optional<Isomorphism> decide_iso_bidirected(const Representation& a,
                                                        const Representation& b,
                                                        std::uint64_t seed,
                                                        double tol = kIsoResidualTol) {
    if (a.graph != b.graph)
        throw ShapeMismatch("representations live on different graphs");
    if (a.dims != b.dims) return std::nullopt;
    const DoubledQuiver doubled = underline_graph(a.graph);
    const QuiverRep ua = underline_rep(a, doubled);
    const QuiverRep ub = underline_rep(b, doubled);
    auto psi = decide_iso_quiver(ub, ua, seed, tol);
    if (!psi) return std::nullopt;
    return correct_to_bidirected_iso(*psi, a, b, tol);
}

/// Near-identity recovery for quiver representations, route QuiverDirect or
/// Pair. Returns phi: b -> a with deviation no larger than that of any true
/// isomorphism (projection property); throws NotIsomorphicOrTooFar when the
/// projection is singular or fails verification.
inline Isomorphism recover_near_identity(const QuiverRep& a, const QuiverRep& b,
                                         Route route = Route::QuiverDirect,
                                         double tol = kIsoResidualTol) {
    if (a.quiver != b.quiver)
        throw ShapeMismatch("representations live on different quivers");
    if (a.dims != b.dims)
        throw NotIsomorphicOrTooFar("dimension vectors differ");
    Isomorphism phi;
    if (route == Route::QuiverDirect) {
        phi.mats = nearest_identity_intertwiner(a, b);
    } else if (route == Route::Pair) {
        auto [pa, layout] = encode_pair(a);
        auto [pb, layout_b] = encode_pair(b);
        phi = decode_similarity(pair_project_identity(pa, pb, layout), layout, tol);
    } else {
        throw Error("bidirected route needs bidirected-graph representations");
    }
    for (const CMatrix& s : phi.mats)
        if (classify_invertibility(s) != Invertibility::Invertible)
            throw NotIsomorphicOrTooFar("nearest-identity intertwiner is not invertible");
    const double res = iso_residual(b, a, phi);
    if (res > tol)
        throw NotIsomorphicOrTooFar("recovered tuple fails verification, residual " +
                                    std::to_string(res));
    return phi;
}

/// Near-identity recovery for bidirected-graph representations: double both,
/// project the identity onto the doubled hom space, correct via the square
/// root. Returns phi: b -> a.
inline Isomorphism recover_near_identity(const Representation& a, const Representation& b,
                                         double tol = kIsoResidualTol) {
    if (a.graph != b.graph)
        throw ShapeMismatch("representations live on different graphs");
    if (a.dims != b.dims)
        throw NotIsomorphicOrTooFar("dimension vectors differ");
    const DoubledQuiver doubled = underline_graph(a.graph);
    const QuiverRep ua = underline_rep(a, doubled);
    const QuiverRep ub = underline_rep(b, doubled);
    Isomorphism psi;
    psi.mats = nearest_identity_intertwiner(ua, ub);
    for (const CMatrix& s : psi.mats)
        if (classify_invertibility(s) != Invertibility::Invertible)
            throw NotIsomorphicOrTooFar("nearest-identity intertwiner is not invertible");
    const double res = iso_residual(ub, ua, psi);
    if (res > tol)
        throw NotIsomorphicOrTooFar("doubled recovery fails verification, residual " +
                                    std::to_string(res));
    try {
        return correct_to_bidirected_iso(psi, a, b, tol);
    } catch (const CorrectionFailed& e) {
        throw NotIsomorphicOrTooFar(e.what());
    }
}

}  // namespace birep
