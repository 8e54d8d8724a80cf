#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <vector>

#include "birep/linalg.hpp"

namespace birep {

/// Eigenvalues closer than this to the rotated branch cut abort primary_sqrt.
inline constexpr double kBranchCutMargin = 1e-8;
/// Minimal clearance a shared branch angle must give every eigenvalue.
inline constexpr double kCommonBranchMargin = 1e-6;
/// Number of candidate branch angles probed by blockwise_primary_sqrt.
inline constexpr int kBranchGrid = 64;
/// Default residual tolerance of the square-root kernels.
inline constexpr double kSqrtTol = 1e-10;
/// Minimal pairwise eigenvalue separation required by sqrt_poly_coeffs.
inline constexpr double kSpectrumSeparation = 1e-6;

/// A primary square root W of T: W^2 = T, WT = TW, and W applies one scalar
/// branch across the whole spectrum (hence W is a polynomial in T).
struct SqrtResult {
    CMatrix root;
    double branch_angle = 0.0;
    double residual = 0.0;     // ||W^2 - T||_F
    double commutation = 0.0;  // ||WT - TW||_F
};

/// Distance from z to the closed negative real axis {x <= 0, y = 0}.
inline double distance_to_cut(Complex z) {
    if (z.real() <= 0.0) return std::abs(z.imag());
    return std::abs(z);
}

namespace detail {

/// Square root of an upper triangular matrix with principal scalar roots on
/// the diagonal (recurrence over superdiagonals).
inline CMatrix sqrt_upper_triangular(const CMatrix& s) {
    const Eigen::Index n = s.rows();
    CMatrix w = CMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        w(j, j) = std::sqrt(s(j, j));
        for (Eigen::Index i = j - 1; i >= 0; --i) {
            Complex acc = s(i, j);
            for (Eigen::Index k = i + 1; k < j; ++k) acc -= w(i, k) * w(k, j);
            w(i, j) = acc / (w(i, i) + w(j, j));
        }
    }
    return w;
}

struct SchurForm {
    CMatrix u;  // unitary
    CMatrix t;  // upper triangular
};

inline SchurForm schur(const CMatrix& m) {
    Eigen::ComplexSchur<CMatrix> dec(m, /*computeU=*/true);
    if (dec.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
    return {dec.matrixU(), dec.matrixT()};
}

inline SqrtResult finish_sqrt(const CMatrix& t, const SchurForm& form, double theta,
                              double tol) {
    const Complex rot = std::polar(1.0, -theta);
    for (Eigen::Index i = 0; i < form.t.rows(); ++i) {
        const Complex lambda = rot * form.t(i, i);
        if (distance_to_cut(lambda) <= kBranchCutMargin)
            throw BranchCutHit("eigenvalue " + std::to_string(lambda.real()) + "+" +
                               std::to_string(lambda.imag()) +
                               "i lies within 1e-8 of the rotated branch cut");
    }
    const CMatrix wtri = sqrt_upper_triangular(rot * form.t);
    SqrtResult out;
    out.branch_angle = theta;
    out.root = std::polar(1.0, theta / 2.0) * (form.u * wtri * form.u.adjoint());
    out.residual = (out.root * out.root - t).norm();
    out.commutation = (out.root * t - t * out.root).norm();
    const double tnorm = t.norm();
    if (out.residual > tol * std::max(1.0, tnorm))
        throw NumericalError("square-root residual exceeds tolerance");
    if (out.commutation > tol * std::max(1.0, tnorm) * std::max(1.0, out.root.norm()))
        throw NumericalError("square-root commutation residual exceeds tolerance");
    return out;
}

}  // namespace detail

/// W = e^{i theta/2} * principal_sqrt(e^{-i theta} T). The default theta = 0
/// is the principal branch; rotate theta when the spectrum crosses the
/// negative reals.
inline SqrtResult primary_sqrt(const CMatrix& t, double theta = 0.0, double tol = kSqrtTol) {
    if (t.rows() != t.cols()) throw ShapeMismatch("square root needs a square matrix");
    if (t.rows() == 0) return SqrtResult{CMatrix(0, 0), theta, 0.0, 0.0};
    if (classify_invertibility(t) == Invertibility::Singular)
        throw SingularInput("matrix is numerically singular");
    return detail::finish_sqrt(t, detail::schur(t), theta, tol);
}

/// Square roots of several matrices under one shared branch angle, so that
/// the results jointly equal a single primary square root of the direct sum.
/// The angle is chosen from a 64-point grid, preferring angles near 0; fails
/// with NoCommonBranch when no grid angle clears every eigenvalue by 1e-6.
inline std::vector<SqrtResult> blockwise_primary_sqrt(const std::vector<CMatrix>& blocks,
                                                      double tol = kSqrtTol) {
    std::vector<detail::SchurForm> forms;
    std::vector<Complex> spectrum;
    for (const CMatrix& b : blocks) {
        if (b.rows() != b.cols()) throw ShapeMismatch("square root needs square matrices");
        if (b.rows() == 0) {
            forms.push_back({CMatrix(0, 0), CMatrix(0, 0)});
            continue;
        }
        if (classify_invertibility(b) == Invertibility::Singular)
            throw SingularInput("block is numerically singular");
        forms.push_back(detail::schur(b));
        for (Eigen::Index i = 0; i < b.rows(); ++i)
            spectrum.push_back(forms.back().t(i, i));
    }

    // Grid angles ordered by |theta|; first angle within 10% of the best
    // clearance wins, which keeps theta = 0 for spectra off the negative reals.
    std::vector<double> angles;
    angles.push_back(0.0);
    for (int g = 1; g <= kBranchGrid / 2; ++g) {
        const double step = 2.0 * std::numbers::pi * g / kBranchGrid;
        angles.push_back(step);
        if (g < kBranchGrid / 2) angles.push_back(-step);
    }
    auto clearance = [&spectrum](double theta) {
        const Complex rot = std::polar(1.0, -theta);
        double c = std::numeric_limits<double>::infinity();
        for (Complex z : spectrum) c = std::min(c, distance_to_cut(rot * z));
        return c;
    };
    double best = 0.0;
    for (double a : angles) best = std::max(best, clearance(a));
    if (!spectrum.empty() && best <= kCommonBranchMargin)
        throw NoCommonBranch("no grid angle clears every eigenvalue by 1e-6");
    double theta = 0.0;
    for (double a : angles) {
        if (clearance(a) >= 0.9 * best) {
            theta = a;
            break;
        }
    }

    std::vector<SqrtResult> out;
    out.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].rows() == 0) {
            out.push_back(SqrtResult{CMatrix(0, 0), theta, 0.0, 0.0});
            continue;
        }
        out.push_back(detail::finish_sqrt(blocks[i], forms[i], theta, tol));
    }
    return out;
}

/// Horner evaluation of a polynomial (coefficients in ascending degree) at a
/// square matrix.
inline CMatrix eval_poly(const std::vector<Complex>& coeffs, const CMatrix& t) {
    const Eigen::Index n = t.rows();
    CMatrix acc = CMatrix::Zero(n, n);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * t + *it * CMatrix::Identity(n, n);
    return acc;
}

/// Coefficients (ascending degree) of the Lagrange interpolant g with
/// g(lambda_k) = principal sqrt(lambda_k), so g(T) is the principal square
/// root as an explicit polynomial. Demonstration path for well-separated
/// spectra; defective or clustered inputs belong to primary_sqrt.
inline std::vector<Complex> sqrt_poly_coeffs(const CMatrix& t, double tol = 1e-8) {
    if (t.rows() != t.cols()) throw ShapeMismatch("square root needs a square matrix");
    if (t.rows() == 0) return {};
    if (classify_invertibility(t) == Invertibility::Singular)
        throw SingularInput("matrix is numerically singular");
    Eigen::ComplexSchur<CMatrix> dec(t, /*computeU=*/false);
    if (dec.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
    std::vector<Complex> nodes;
    for (Eigen::Index i = 0; i < t.rows(); ++i) nodes.push_back(dec.matrixT()(i, i));
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            if (std::abs(nodes[a] - nodes[b]) <= kSpectrumSeparation)
                throw SpectrumTooClustered("eigenvalues closer than 1e-6; use primary_sqrt");

    // Newton divided differences on (lambda_k, sqrt(lambda_k)), expanded to
    // monomial coefficients.
    std::vector<Complex> table;
    for (Complex z : nodes) table.push_back(std::sqrt(z));
    std::vector<Complex> newton;
    newton.push_back(table[0]);
    for (std::size_t level = 1; level < nodes.size(); ++level) {
        for (std::size_t i = 0; i + level < nodes.size(); ++i)
            table[i] = (table[i + 1] - table[i]) / (nodes[i + level] - nodes[i]);
        table.pop_back();
        newton.push_back(table[0]);
    }
    std::vector<Complex> coeffs{newton.back()};
    for (std::size_t k = newton.size() - 1; k-- > 0;) {
        coeffs.insert(coeffs.begin(), Complex(0.0));
        for (std::size_t d = 0; d + 1 < coeffs.size(); ++d)
            coeffs[d] -= nodes[k] * coeffs[d + 1];
        coeffs[0] += newton[k];
    }

    const CMatrix g = eval_poly(coeffs, t);
    if ((g * g - t).norm() > tol * std::max(1.0, t.norm()))
        throw NumericalError("interpolant fails g(T)^2 = T within tolerance");
    return coeffs;
}

}  // namespace birep
