#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "birep/isomorphism.hpp"
#include "birep/representation.hpp"

namespace birep {

/// Default decision tolerance of the pair machinery, relative to ||R||.
inline constexpr double kPairTol = 1e-8;

/// Square matrix pair (M, N). For encoded representations M is block-scalar:
/// scalar c_p on the p-th copy block.
struct MatrixPair {
    CMatrix m;
    CMatrix n;
};

struct CopyBlock {
    int index = 0;      // p, 1-based
    double scalar = 0;  // c_p = p
    int size = 0;       // dim V
};

struct ArrowPlacement {
    int block_row = 0;  // 1-based copy-block coordinates inside N
    int block_col = 0;
};

/// Bookkeeping needed to decode a similarity of encoded pairs back into a
/// per-vertex matrix tuple.
struct PairLayout {
    Quiver quiver;
    DimensionVector dims;
    int copy_size = 0;                // dim V = sum of dims
    std::vector<CopyBlock> copies;    // m = arrow count + 1 entries
    std::vector<int> vertex_offsets;  // offsets of the vertex blocks inside V
    std::map<std::string, ArrowPlacement> arrow_blocks;

    int copy_count() const { return static_cast<int>(copies.size()); }
    int total_size() const { return copy_count() * copy_size; }
};

inline void validate(const PairLayout& layout) {
    std::set<double> scalars;
    for (const CopyBlock& c : layout.copies) {
        if (!scalars.insert(c.scalar).second)
            throw ShapeMismatch("copy scalars must be pairwise distinct");
        if (c.size != layout.copy_size) throw ShapeMismatch("copy size mismatch");
    }
    if (layout.arrow_blocks.size() != layout.quiver.arrows.size())
        throw UnknownEdge("layout must place every arrow exactly once");
    for (const auto& [id, place] : layout.arrow_blocks) {
        if (!layout.quiver.find_arrow(id)) throw UnknownEdge("layout places unknown arrow '" + id + "'");
        // identity links sit at (p, p+1); arrow blocks must not collide
        if (place.block_row + 1 == place.block_col)
            throw ShapeMismatch("arrow placement collides with an identity link");
    }
}

/// Encodes a quiver representation as a pair (M, N) such that two
/// representations are isomorphic iff their pairs are simultaneously similar.
///
/// With V the direct sum of the vertex spaces, k arrows and m = k+1:
///   M = diag(1*I_V, ..., m*I_V)
///   N carries the vertex marker E_0 = diag(1*I_{n_1}, ..., t*I_{n_t}) at
///   copy block (1,1), identity links at (p, p+1), and the p-th arrow matrix
///   embedded into the (head, tail) vertex sub-block of copy block (p+1, 1).
inline std::pair<MatrixPair, PairLayout> encode_pair(const QuiverRep& rep) {
    validate(rep);
    const int t = static_cast<int>(rep.dims.size());
    PairLayout layout;
    layout.quiver = rep.quiver;
    layout.dims = rep.dims;
    layout.vertex_offsets.resize(static_cast<std::size_t>(t));
    int n = 0;
    for (int v = 0; v < t; ++v) {
        layout.vertex_offsets[static_cast<std::size_t>(v)] = n;
        n += rep.dims[static_cast<std::size_t>(v)];
    }
    layout.copy_size = n;
    const int k = static_cast<int>(rep.quiver.arrows.size());
    const int m = k + 1;
    for (int p = 1; p <= m; ++p) layout.copies.push_back({p, static_cast<double>(p), n});

    MatrixPair pair;
    pair.m = CMatrix::Zero(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(m) * n);
    pair.n = CMatrix::Zero(pair.m.rows(), pair.m.cols());
    for (int p = 0; p < m; ++p)
        pair.m.block(p * n, p * n, n, n) =
            static_cast<double>(p + 1) * CMatrix::Identity(n, n);

    // E_0 marker at copy block (1,1)
    for (int v = 0; v < t; ++v) {
        const int off = layout.vertex_offsets[static_cast<std::size_t>(v)];
        const int nv = rep.dims[static_cast<std::size_t>(v)];
        pair.n.block(off, off, nv, nv) = static_cast<double>(v + 1) * CMatrix::Identity(nv, nv);
    }
    // identity links at (p, p+1)
    for (int p = 0; p + 1 < m; ++p)
        pair.n.block(p * n, (p + 1) * n, n, n) = CMatrix::Identity(n, n);
    // arrow embeddings at (p+1, 1)
    for (int p = 0; p < k; ++p) {
        const Arrow& a = rep.quiver.arrows[static_cast<std::size_t>(p)];
        const int oi = layout.vertex_offsets[static_cast<std::size_t>(a.tail)];
        const int oj = layout.vertex_offsets[static_cast<std::size_t>(a.head)];
        const CMatrix& mat = rep.matrices.at(a.id);
        pair.n.block((p + 1) * n + oj, oi, mat.rows(), mat.cols()) = mat;
        layout.arrow_blocks[a.id] = {p + 2, 1};
    }
    return {std::move(pair), std::move(layout)};
}

namespace detail {

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Stacked operator for {R : P R = R Q} in column-major vec coordinates.
inline CMatrix sylvester_operator(const CMatrix& p, const CMatrix& q) {
    const Eigen::Index n = p.rows();
    return kron(CMatrix::Identity(n, n), p) - kron(q.transpose(), CMatrix::Identity(n, n));
}

inline CMatrix unvec(const CVector& x, Eigen::Index rows, Eigen::Index cols) {
    return Eigen::Map<const CMatrix>(x.data(), rows, cols);
}

inline CVector vec(const CMatrix& m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
}

}  // namespace detail

/// Orthonormal basis (as vec(R) columns) of {R : M1 R = R M2, N1 R = R N2}.
inline CMatrix pair_intertwiner_basis(const MatrixPair& p1, const MatrixPair& p2) {
    if (p1.m.rows() != p2.m.rows())
        throw ShapeMismatch("pairs must have equal sizes");
    const Eigen::Index n = p1.m.rows();
    CMatrix op(2 * n * n, n * n);
    op.topRows(n * n) = detail::sylvester_operator(p1.m, p2.m);
    op.bottomRows(n * n) = detail::sylvester_operator(p1.n, p2.n);
    return nullspace(op);
}

/// Structured variant for encoded pairs sharing `layout`. M forces any
/// intertwiner to be block-diagonal with one block per copy, and the identity
/// links force the copies to agree, so the space is parametrized by a single
/// copy-sized matrix R0; columns of the result are vec(R0).
inline CMatrix pair_intertwiner_basis(const MatrixPair& p1, const MatrixPair& p2,
                                      const PairLayout& layout) {
    validate(layout);
    const int n = layout.copy_size;
    const int m = layout.copy_count();
    if (p1.m.rows() != layout.total_size() || p2.m.rows() != layout.total_size())
        throw ShapeMismatch("pairs do not match the layout");
    const int k = m - 1;
    CMatrix op((k + 1) * static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
    const CMatrix e0_1 = p1.n.block(0, 0, n, n);
    const CMatrix e0_2 = p2.n.block(0, 0, n, n);
    op.topRows(static_cast<Eigen::Index>(n) * n) = detail::sylvester_operator(e0_1, e0_2);
    int row = 1;
    for (const auto& [id, place] : layout.arrow_blocks) {
        const CMatrix b1 = p1.n.block((place.block_row - 1) * n, (place.block_col - 1) * n, n, n);
        const CMatrix b2 = p2.n.block((place.block_row - 1) * n, (place.block_col - 1) * n, n, n);
        op.middleRows(static_cast<Eigen::Index>(row) * n * n, static_cast<Eigen::Index>(n) * n) =
            detail::sylvester_operator(b1, b2);
        ++row;
    }
    return nullspace(op);
}

/// Replicates a copy-sized block along the diagonal, m times.
inline CMatrix assemble_copies(const CMatrix& r0, int copies) {
    const Eigen::Index n = r0.rows();
    CMatrix r = CMatrix::Zero(copies * n, copies * n);
    for (int p = 0; p < copies; ++p) r.block(p * n, p * n, n, n) = r0;
    return r;
}

namespace detail {

/// Draws Gaussian combinations of the basis until one clears the
/// invertibility threshold. Returns nullopt if no invertible element shows up
/// in 8 draws; ToleranceAmbiguous if a draw straddles the threshold band.
inline std::optional<CMatrix> sample_invertible(const CMatrix& basis, Eigen::Index side,
                                                std::uint64_t seed) {
    if (basis.cols() == 0) return std::nullopt;
    if (side == 0) return CMatrix(0, 0);
    Rng rng(seed);
    bool ambiguous = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const CVector g = detail::vec(random_gaussian(basis.cols(), 1, rng));
        const CMatrix candidate = detail::unvec(basis * g, side, side);
        switch (classify_invertibility(candidate)) {
            case Invertibility::Invertible: return candidate;
            case Invertibility::Ambiguous: ambiguous = true; break;
            case Invertibility::Singular: break;
        }
    }
    if (ambiguous)
        throw ToleranceAmbiguous("sampled intertwiners straddle the invertibility band");
    return std::nullopt;
}

inline void check_similarity(const MatrixPair& p1, const MatrixPair& p2, const CMatrix& r,
                             double tol) {
    const double scale = std::max(1.0, r.norm());
    const double rm = (p1.m * r - r * p2.m).norm();
    const double rn = (p1.n * r - r * p2.n).norm();
    if (rm > 100 * tol * scale * std::max(1.0, p1.m.norm()) ||
        rn > 100 * tol * scale * std::max(1.0, p1.n.norm()))
        throw NumericalError("sampled similarity fails its residual check");
}

}  // namespace detail

/// Searches for R with R^{-1} M1 R = M2 and R^{-1} N1 R = N2 by sampling a
/// generic element of the pair intertwiner space. General-purpose path.
inline std::optional<CMatrix> pairs_similar(const MatrixPair& p1, const MatrixPair& p2,
                                            std::uint64_t seed, double tol = kPairTol) {
    const CMatrix basis = pair_intertwiner_basis(p1, p2);
    auto r = detail::sample_invertible(basis, p1.m.rows(), seed);
    if (r) detail::check_similarity(p1, p2, *r, tol);
    return r;
}

/// Layout-aware path for encoded pairs; exact copy reduction keeps the
/// search space at one copy-sized matrix.
inline std::optional<CMatrix> pairs_similar(const MatrixPair& p1, const MatrixPair& p2,
                                            const PairLayout& layout, std::uint64_t seed,
                                            double tol = kPairTol) {
    const CMatrix basis = pair_intertwiner_basis(p1, p2, layout);
    auto r0 = detail::sample_invertible(basis, layout.copy_size, seed);
    if (!r0) return std::nullopt;
    CMatrix r = assemble_copies(*r0, layout.copy_count());
    detail::check_similarity(p1, p2, r, tol);
    return r;
}

/// Orthogonal projection of the identity onto the pair intertwiner space,
/// assembled to full size. The nearest-to-identity intertwiner of the pair;
/// not necessarily invertible.
inline CMatrix pair_project_identity(const MatrixPair& p1, const MatrixPair& p2,
                                     const PairLayout& layout) {
    const CMatrix basis = pair_intertwiner_basis(p1, p2, layout);
    const int n = layout.copy_size;
    const CVector id = detail::vec(CMatrix::Identity(n, n));
    const CVector proj = basis * (basis.adjoint() * id);
    return assemble_copies(detail::unvec(proj, n, n), layout.copy_count());
}

/// Splits a similarity R of encoded pairs into the per-vertex tuple (S_i).
/// Demands that R preserves the copy-block structure of M, that all copies
/// agree, and that the first copy is vertex-block-diagonal (E_0 markers).
/// Applied to a witness of pairs_similar(encode(A), encode(B)), the decoded
/// tuple is an isomorphism B -> A.
inline Isomorphism decode_similarity(const CMatrix& r, const PairLayout& layout,
                                     double tol = kPairTol) {
    const int n = layout.copy_size;
    const int m = layout.copy_count();
    if (r.rows() != layout.total_size() || r.cols() != layout.total_size())
        throw ShapeMismatch("similarity matrix does not match the layout");
    const double scale = std::max(r.norm(), 1e-300);

    double off_mass = 0.0;
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            if (p != q) off_mass += r.block(p * n, q * n, n, n).squaredNorm();
    if (std::sqrt(off_mass) > tol * scale)
        throw NotBlockDiagonal("similarity does not preserve the scalar blocks of M");

    for (int p = 0; p + 1 < m; ++p) {
        const double diff =
            (r.block(p * n, p * n, n, n) - r.block((p + 1) * n, (p + 1) * n, n, n)).norm();
        if (diff > tol * scale)
            throw CopiesDisagree("copies " + std::to_string(p + 1) + " and " +
                                 std::to_string(p + 2) + " differ by " + std::to_string(diff));
    }

    const CMatrix first = r.block(0, 0, n, n);
    double marker_off = first.squaredNorm();
    Isomorphism iso;
    for (std::size_t v = 0; v < layout.dims.size(); ++v) {
        const int off = layout.vertex_offsets[v];
        const int nv = layout.dims[v];
        iso.mats.push_back(first.block(off, off, nv, nv));
        marker_off -= iso.mats.back().squaredNorm();
    }
    if (std::sqrt(std::max(marker_off, 0.0)) > tol * scale)
        throw NotBlockDiagonal("similarity does not preserve the vertex markers of E_0");
    return iso;
}

}  // namespace birep
