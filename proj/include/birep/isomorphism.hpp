#pragma once

#include <string>
#include <vector>

#include "birep/representation.hpp"

namespace birep {

/// Tuple of invertible matrices (S_1,...,S_t), one per vertex. The direction
/// (which representation is the source) is declared at the call site; every
/// operation below documents the direction it expects or produces.
struct Isomorphism {
    std::vector<CMatrix> mats;

    std::size_t size() const { return mats.size(); }
};

inline Isomorphism identity_isomorphism(const DimensionVector& dims) {
    Isomorphism iso;
    iso.mats.reserve(dims.size());
    for (int n : dims) iso.mats.push_back(CMatrix::Identity(n, n));
    return iso;
}

/// Checks component shapes against `dims` and the invertibility threshold.
inline void validate(const Isomorphism& iso, const DimensionVector& dims,
                     double ratio = kInvertibilityRatio) {
    if (iso.mats.size() != dims.size())
        throw ShapeMismatch("isomorphism has wrong number of components");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const CMatrix& s = iso.mats[i];
        if (s.rows() != dims[i] || s.cols() != dims[i])
            throw ShapeMismatch("component " + std::to_string(i + 1) + " must be " +
                                std::to_string(dims[i]) + "x" + std::to_string(dims[i]));
        if (classify_invertibility(s, ratio) != Invertibility::Invertible)
            throw SingularComponent("component " + std::to_string(i + 1) +
                                    " fails the invertibility threshold");
    }
}

/// Sum of Frobenius distances of the components from identity matrices.
inline double deviation(const Isomorphism& iso) {
    double sum = 0.0;
    for (const CMatrix& s : iso.mats) sum += identity_distance(s);
    return sum;
}

/// Componentwise inverse; as a map it goes in the opposite direction.
inline Isomorphism inverse(const Isomorphism& iso) {
    Isomorphism out;
    out.mats.reserve(iso.mats.size());
    for (const CMatrix& s : iso.mats) out.mats.push_back(inverse(s));
    return out;
}

/// Composition psi after phi: (psi . phi)_i = Psi_i Phi_i.
inline Isomorphism compose(const Isomorphism& psi, const Isomorphism& phi) {
    if (psi.mats.size() != phi.mats.size())
        throw ShapeMismatch("cannot compose isomorphisms of different lengths");
    Isomorphism out;
    out.mats.reserve(psi.mats.size());
    for (std::size_t i = 0; i < psi.mats.size(); ++i)
        out.mats.push_back(psi.mats[i] * phi.mats[i]);
    return out;
}

/// Transforms A by phi: A -> B. Per edge:
///   directed   beta : i -> j          B = S_j A S_i^{-1}
///   undirected alpha: i -- j  (i<=j)  B = S_i^{-T} A S_j^{-1}
///   bidirected gamma: i <-> j (i<=j)  B = S_i A S_j^{T}
inline Representation apply_isomorphism(const Representation& rep, const Isomorphism& phi) {
    validate(phi, rep.dims);
    Representation out{rep.graph, rep.dims, {}};
    std::vector<CMatrix> inv(phi.mats.size());
    for (std::size_t i = 0; i < phi.mats.size(); ++i) inv[i] = inverse(phi.mats[i]);
    for (const Edge& e : rep.graph.edges) {
        const CMatrix& m = rep.matrices.at(e.id);
        const std::size_t i = static_cast<std::size_t>(e.tail - 1);
        const std::size_t j = static_cast<std::size_t>(e.head - 1);
        switch (e.kind) {
            case EdgeKind::Directed:
                out.matrices[e.id] = phi.mats[j] * m * inv[i];
                break;
            case EdgeKind::Undirected:
                out.matrices[e.id] = inv[i].transpose() * m * inv[j];
                break;
            case EdgeKind::Bidirected:
                out.matrices[e.id] = phi.mats[i] * m * phi.mats[j].transpose();
                break;
        }
    }
    return out;
}

/// Quiver version: arrow a: u -> v gets S_v A_a S_u^{-1}.
inline QuiverRep apply_isomorphism(const QuiverRep& rep, const Isomorphism& phi) {
    validate(phi, rep.dims);
    QuiverRep out{rep.quiver, rep.dims, {}};
    std::vector<CMatrix> inv(phi.mats.size());
    for (std::size_t i = 0; i < phi.mats.size(); ++i) inv[i] = inverse(phi.mats[i]);
    for (const Arrow& a : rep.quiver.arrows) {
        const CMatrix& m = rep.matrices.at(a.id);
        out.matrices[a.id] = phi.mats[static_cast<std::size_t>(a.head)] * m *
                             inv[static_cast<std::size_t>(a.tail)];
    }
    return out;
}

/// Relative residual of phi as an isomorphism source -> target.
template <class Rep>
double iso_residual(const Rep& source, const Rep& target, const Isomorphism& phi) {
    const double dist = rep_distance(apply_isomorphism(source, phi), target);
    return dist / std::max(1.0, rep_norm(target));
}

/// Components S_i = I + eps * E_i with E_i Gaussian scaled to unit Frobenius
/// norm, so deviation = eps * (number of nonempty components). Draws that fail
/// the invertibility threshold are resampled.
inline Isomorphism random_near_identity_iso(const DimensionVector& dims, double eps,
                                            std::uint64_t seed) {
    if (eps < 0) throw Error("perturbation scale must be nonnegative");
    Rng rng(seed);
    Isomorphism iso;
    iso.mats.reserve(dims.size());
    for (int n : dims) {
        if (n == 0) {
            iso.mats.push_back(CMatrix(0, 0));
            continue;
        }
        for (int attempt = 0;; ++attempt) {
            CMatrix e = random_gaussian(n, n, rng);
            const double norm = e.norm();
            if (norm == 0.0) continue;
            CMatrix s = CMatrix::Identity(n, n) + (eps / norm) * e;
            if (is_invertible(s)) {
                iso.mats.push_back(std::move(s));
                break;
            }
            if (attempt > 256)
                throw SingularComponent("could not draw an invertible perturbation");
        }
    }
    return iso;
}

}  // namespace birep
