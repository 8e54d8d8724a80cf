#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "birep/errors.hpp"

namespace birep {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Ratio of smallest to largest singular value below which a matrix counts
/// as singular.
inline constexpr double kInvertibilityRatio = 1e-9;

/// Default residual tolerance for returned isomorphisms.
inline constexpr double kIsoResidualTol = 1e-8;

/// Relative singular-value cutoff used when extracting numerical nullspaces.
inline constexpr double kNullspaceCutoff = 1e-10;

enum class Invertibility { Singular, Ambiguous, Invertible };

/// Classifies invertibility by the sigma_min/sigma_max ratio. The band
/// (ratio, 10*ratio) is reported as Ambiguous. Empty matrices are invertible.
inline Invertibility classify_invertibility(const CMatrix& m,
                                            double ratio = kInvertibilityRatio) {
    if (m.rows() != m.cols()) return Invertibility::Singular;
    if (m.rows() == 0) return Invertibility::Invertible;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smax == 0.0) return Invertibility::Singular;
    const double r = smin / smax;
    if (r <= ratio) return Invertibility::Singular;
    if (r < 10.0 * ratio) return Invertibility::Ambiguous;
    return Invertibility::Invertible;
}

inline bool is_invertible(const CMatrix& m, double ratio = kInvertibilityRatio) {
    return classify_invertibility(m, ratio) == Invertibility::Invertible;
}

inline CMatrix inverse(const CMatrix& m) {
    if (m.rows() == 0) return m;
    return m.partialPivLu().inverse();
}

/// Inverse transpose, the recurring building block of the doubling maps.
inline CMatrix inverse_transpose(const CMatrix& m) {
    return inverse(m).transpose();
}

inline double identity_distance(const CMatrix& m) {
    return (m - CMatrix::Identity(m.rows(), m.cols())).norm();
}

// --- deterministic randomness ---

/// splitmix64 mix, used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

/// Standard complex Gaussian entries (real and imaginary parts N(0, 1/2)).
inline CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = Complex(normal(rng), normal(rng)) * inv_sqrt2;
    return m;
}

/// Orthonormal basis (columns) of the numerical nullspace of `op`.
/// Singular vectors with sigma <= rel_tol * sigma_max are kept.
inline CMatrix nullspace(const CMatrix& op, double rel_tol = kNullspaceCutoff) {
    const Eigen::Index cols = op.cols();
    if (cols == 0) return CMatrix(0, 0);
    if (op.rows() == 0) return CMatrix::Identity(cols, cols);
    CMatrix v;
    Eigen::VectorXd sv;
    if (std::min(op.rows(), op.cols()) >= 16) {
        Eigen::BDCSVD<CMatrix> svd(op, Eigen::ComputeFullV);
        v = svd.matrixV();
        sv = svd.singularValues();
    } else {
        Eigen::JacobiSVD<CMatrix> svd(op, Eigen::ComputeFullV);
        v = svd.matrixV();
        sv = svd.singularValues();
    }
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = rel_tol * std::max(smax, 1e-300);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return v.rightCols(cols - rank);
}

}  // namespace birep
