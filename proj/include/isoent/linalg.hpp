// Dense complex linear algebra for small bipartite systems (per-subsystem
// dimension up to ~32): tensor products, partial traces, Hermitian
// eigendecompositions, SVD, and Haar-random unitaries. Everything is a pure
// function of its inputs; randomness enters only through explicit seeds.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace isoent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

// Joint dimensions above this are rejected by kron(); the library targets
// small dense operators only.
inline constexpr Eigen::Index kMaxJointDim = 4096;

/// Kronecker product a ⊗ b. Entry (i*p+k, j*q+l) = a(i,j)*b(k,l).
inline Matrix kron(const Matrix& a, const Matrix& b,
                   Eigen::Index max_dim = kMaxJointDim) {
    if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim) {
        throw std::invalid_argument(
            "kron: product dimension exceeds maximum of " +
            std::to_string(max_dim));
    }
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

/// Identity on a d-dimensional space.
inline Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

/// Marginal of a bipartite operator: traces out the complement of `keep`.
/// `rho` must be square with side dim_a * dim_b, basis ordered |i_A, j_B>
/// with the B index fastest.
inline Matrix partial_trace(const Matrix& rho, Eigen::Index dim_a,
                            Eigen::Index dim_b, Subsystem keep) {
    if (dim_a < 1 || dim_b < 1 || rho.rows() != rho.cols() ||
        rho.rows() != dim_a * dim_b) {
        throw std::invalid_argument(
            "partial_trace: operator side does not match dim_a * dim_b");
    }
    if (keep == Subsystem::A) {
        Matrix out = Matrix::Zero(dim_a, dim_a);
        for (Eigen::Index i = 0; i < dim_a; ++i)
            for (Eigen::Index j = 0; j < dim_a; ++j)
                for (Eigen::Index k = 0; k < dim_b; ++k)
                    out(i, j) += rho(i * dim_b + k, j * dim_b + k);
        return out;
    }
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (Eigen::Index k = 0; k < dim_b; ++k)
        for (Eigen::Index l = 0; l < dim_b; ++l)
            for (Eigen::Index i = 0; i < dim_a; ++i)
                out(k, l) += rho(i * dim_b + k, i * dim_b + l);
    return out;
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Satisfies H = V diag(lambda) V^dagger with V unitary.
struct Eigensystem {
    RealVector eigenvalues;  // descending
    Matrix eigenvectors;     // column k pairs with eigenvalues(k)
};

/// Decomposes h, symmetrizing first. Deviations from Hermiticity larger
/// than 1e-10 (max-entry) are treated as misuse, not roundoff.
inline Eigensystem hermitian_eig(const Matrix& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("hermitian_eig: matrix is not square");
    const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw std::invalid_argument(
            "hermitian_eig: input deviates from Hermitian by " +
            std::to_string(asym));
    const Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed");
    // Eigen returns ascending order; flip to descending.
    Eigensystem out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

/// Singular value decomposition m = u * diag(singular_values) * v^dagger,
/// singular values nonnegative and descending, u and v unitary.
struct SvdResult {
    Matrix u;
    RealVector singular_values;
    Matrix v;
};

inline SvdResult svd(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> solver(m,
                                    Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
/// triangular factor's diagonal phased to be real positive. Deterministic
/// for a fixed seed.
inline Matrix haar_unitary(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1)
        throw std::invalid_argument("haar_unitary: dimension must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
    }
    return q;
}

/// Max-entry deviation of u from unitarity, ||u^dagger u - I||_max.
inline double unitarity_residual(const Matrix& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()))
        .cwiseAbs()
        .maxCoeff();
}

}  // namespace isoent
