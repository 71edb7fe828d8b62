// Bipartite state types and canonical forms: pure states, density operators,
// Schmidt decomposition, the maximally entangled state, the isotropic family,
// twirling, and fidelity with the maximally entangled state.

#pragma once

#include <isoent/linalg.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace isoent {

class DensityOperator;

/// Unit-norm pure state of a d_A x d_B system. Amplitudes are stored with
/// the B index fastest: amplitude(i*d_B + j) multiplies |i_A, j_B>.
class PureBipartiteState {
  public:
    PureBipartiteState(Vector amplitudes, Eigen::Index dim_a,
                       Eigen::Index dim_b)
        : amplitudes_(std::move(amplitudes)), dim_a_(dim_a), dim_b_(dim_b) {
        if (dim_a_ < 1 || dim_b_ < 1 ||
            amplitudes_.size() != dim_a_ * dim_b_) {
            throw std::invalid_argument(
                "PureBipartiteState: amplitude count must equal d_A * d_B");
        }
        if (!amplitudes_.allFinite())
            throw std::invalid_argument(
                "PureBipartiteState: non-finite amplitude");
        const double norm = amplitudes_.norm();
        if (std::abs(norm - 1.0) > 1e-6)
            throw std::invalid_argument(
                "PureBipartiteState: amplitudes are not normalized");
        amplitudes_ /= norm;
    }

    const Vector& amplitudes() const { return amplitudes_; }
    Eigen::Index dim_a() const { return dim_a_; }
    Eigen::Index dim_b() const { return dim_b_; }
    Eigen::Index joint_dim() const { return dim_a_ * dim_b_; }

    /// d_A x d_B coefficient matrix M with M(i,j) = amplitude(i*d_B + j).
    Matrix coefficient_matrix() const {
        Matrix m(dim_a_, dim_b_);
        for (Eigen::Index i = 0; i < dim_a_; ++i)
            for (Eigen::Index j = 0; j < dim_b_; ++j)
                m(i, j) = amplitudes_(i * dim_b_ + j);
        return m;
    }

    DensityOperator to_density() const;

  private:
    Vector amplitudes_;
    Eigen::Index dim_a_;
    Eigen::Index dim_b_;
};

/// Mixed state of a d_A x d_B system: Hermitian, positive semidefinite,
/// unit trace. Stored exactly Hermitian (inputs are symmetrized after a
/// 1e-10 sanity bound).
class DensityOperator {
  public:
    DensityOperator(Matrix matrix, Eigen::Index dim_a, Eigen::Index dim_b)
        : matrix_(std::move(matrix)), dim_a_(dim_a), dim_b_(dim_b) {
        if (dim_a_ < 1 || dim_b_ < 1 || matrix_.rows() != matrix_.cols() ||
            matrix_.rows() != dim_a_ * dim_b_) {
            throw std::invalid_argument(
                "DensityOperator: matrix side must equal d_A * d_B");
        }
        if (!matrix_.allFinite())
            throw std::invalid_argument("DensityOperator: non-finite entry");
        const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
        if (asym > 1e-10)
            throw std::invalid_argument(
                "DensityOperator: not Hermitian (deviation " +
                std::to_string(asym) + ")");
        matrix_ = 0.5 * (matrix_ + matrix_.adjoint());
        const double tr = matrix_.trace().real();
        if (std::abs(tr - 1.0) > 1e-12)
            throw std::invalid_argument("DensityOperator: trace is not 1");
        Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_,
                                                     Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument(
                "DensityOperator: negative eigenvalue " +
                std::to_string(solver.eigenvalues().minCoeff()));
    }

    const Matrix& matrix() const { return matrix_; }
    Eigen::Index dim_a() const { return dim_a_; }
    Eigen::Index dim_b() const { return dim_b_; }
    Eigen::Index joint_dim() const { return dim_a_ * dim_b_; }

    /// tr(rho^2); 1 for pure states, 1/(d_A d_B) for the maximally mixed.
    double purity() const { return matrix_.squaredNorm(); }

    Matrix marginal(Subsystem keep) const {
        return partial_trace(matrix_, dim_a_, dim_b_, keep);
    }

  private:
    Matrix matrix_;
    Eigen::Index dim_a_;
    Eigen::Index dim_b_;
};

inline DensityOperator PureBipartiteState::to_density() const {
    return DensityOperator(amplitudes_ * amplitudes_.adjoint(), dim_a_,
                           dim_b_);
}

/// Squared Schmidt coefficients: nonnegative, descending, summing to 1.
/// Entries below 1e-12 are clamped to zero and the vector renormalized, so
/// square roots taken downstream never see spurious negatives.
class SchmidtVector {
  public:
    explicit SchmidtVector(RealVector mu) : mu_(std::move(mu)) {
        if (mu_.size() < 1)
            throw std::invalid_argument("SchmidtVector: empty");
        if (!mu_.allFinite() || mu_.minCoeff() < -1e-10)
            throw std::invalid_argument("SchmidtVector: invalid entry");
        const double sum = mu_.sum();
        if (std::abs(sum - 1.0) > 1e-8)
            throw std::invalid_argument("SchmidtVector: sum is not 1");
        for (Eigen::Index i = 0; i < mu_.size(); ++i)
            if (mu_(i) < 1e-12) mu_(i) = 0.0;
        mu_ /= mu_.sum();
        std::sort(mu_.data(), mu_.data() + mu_.size(),
                  std::greater<double>());
    }

    const RealVector& values() const { return mu_; }
    Eigen::Index size() const { return mu_.size(); }
    double operator[](Eigen::Index i) const { return mu_(i); }

  private:
    RealVector mu_;
};

/// Schmidt form of a pure state: |Psi> = sum_j sqrt(mu_j) (u_A e_j)(u_B e_j).
struct SchmidtDecomposition {
    SchmidtVector mu;
    Matrix u_a;
    Matrix u_b;

    PureBipartiteState reconstruct() const {
        const Eigen::Index da = u_a.rows();
        const Eigen::Index db = u_b.rows();
        Vector amp = Vector::Zero(da * db);
        for (Eigen::Index k = 0; k < mu.size(); ++k) {
            if (mu[k] <= 0.0) continue;
            const double c = std::sqrt(mu[k]);
            for (Eigen::Index i = 0; i < da; ++i)
                for (Eigen::Index j = 0; j < db; ++j)
                    amp(i * db + j) += c * u_a(i, k) * u_b(j, k);
        }
        return PureBipartiteState(std::move(amp), da, db);
    }
};

/// |Psi+> = (1/sqrt d) sum_j |e_j e_j> on a d x d system.
inline PureBipartiteState max_entangled(Eigen::Index d) {
    if (d < 2)
        throw std::invalid_argument("max_entangled: dimension must be >= 2");
    Vector amp = Vector::Zero(d * d);
    const double c = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index j = 0; j < d; ++j) amp(j * d + j) = c;
    return PureBipartiteState(std::move(amp), d, d);
}

/// <Psi+| rho |Psi+>, the fidelity with the maximally entangled state.
inline double fidelity_with_max_entangled(const DensityOperator& rho) {
    if (rho.dim_a() != rho.dim_b())
        throw std::invalid_argument(
            "fidelity_with_max_entangled: subsystems must have equal "
            "dimension");
    const Eigen::Index d = rho.dim_a();
    Complex sum = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            sum += rho.matrix()(i * d + i, j * d + j);
    return std::clamp(sum.real() / static_cast<double>(d), 0.0, 1.0);
}

/// rho_F = (1-F)/(d^2-1) (I - P+) + F P+, the isotropic state of fidelity F.
inline DensityOperator isotropic(Eigen::Index d, double fidelity) {
    if (d < 2)
        throw std::invalid_argument("isotropic: dimension must be >= 2");
    if (fidelity < -1e-12 || fidelity > 1.0 + 1e-12)
        throw std::domain_error("isotropic: fidelity outside [0, 1]");
    const double f = std::clamp(fidelity, 0.0, 1.0);
    const Vector plus = max_entangled(d).amplitudes();
    const Matrix proj = plus * plus.adjoint();
    const double dd = static_cast<double>(d * d);
    Matrix m = ((1.0 - f) / (dd - 1.0)) *
                   (Matrix::Identity(d * d, d * d) - proj) +
               f * proj;
    return DensityOperator(std::move(m), d, d);
}

/// Isotropic state held in closed form as (d, F); materialized on demand.
class IsotropicState {
  public:
    IsotropicState(Eigen::Index d, double fidelity)
        : d_(d), fidelity_(fidelity) {
        if (d_ < 2)
            throw std::invalid_argument(
                "IsotropicState: dimension must be >= 2");
        if (fidelity_ < -1e-12 || fidelity_ > 1.0 + 1e-12)
            throw std::domain_error("IsotropicState: fidelity outside [0, 1]");
        fidelity_ = std::clamp(fidelity_, 0.0, 1.0);
    }

    Eigen::Index dim() const { return d_; }
    double fidelity() const { return fidelity_; }
    DensityOperator materialize() const { return isotropic(d_, fidelity_); }

  private:
    Eigen::Index d_;
    double fidelity_;
};

/// Twirl of rho: the group average over U x U* conjugations projects any
/// two-qudit state onto the isotropic family with the same fidelity, so the
/// result is computed analytically from F(rho) -- no integration.
inline IsotropicState twirl(const DensityOperator& rho) {
    if (rho.dim_a() != rho.dim_b())
        throw std::invalid_argument(
            "twirl: subsystems must have equal dimension");
    return IsotropicState(rho.dim_a(), fidelity_with_max_entangled(rho));
}

/// Schmidt decomposition via SVD of the coefficient matrix.
inline SchmidtDecomposition schmidt_decompose(const PureBipartiteState& psi) {
    const SvdResult s = svd(psi.coefficient_matrix());
    const Eigen::Index d = std::min(psi.dim_a(), psi.dim_b());
    RealVector mu(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double sv = s.singular_values(k);
        mu(k) = sv * sv;
    }
    // M = U S V^dagger means |Psi> = sum_k s_k (U e_k) x (conj(V) e_k).
    return SchmidtDecomposition{SchmidtVector(std::move(mu)), s.u,
                                s.v.conjugate()};
}

/// Fidelity of the twirled pure state with Schmidt vector mu and local-basis
/// mismatch V: F(mu, V) = |sum_k sqrt(mu_k) V_kk|^2 / d.
inline double schmidt_fidelity(const SchmidtVector& mu, const Matrix& v) {
    const Eigen::Index d = mu.size();
    if (v.rows() != d || v.cols() != d)
        throw std::invalid_argument("schmidt_fidelity: side of V must match");
    if (unitarity_residual(v) > 1e-8)
        throw std::domain_error("schmidt_fidelity: V is not unitary");
    Complex sum = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) sum += std::sqrt(mu[k]) * v(k, k);
    return std::norm(sum) / static_cast<double>(d);
}

/// Isotropic states are separable exactly for F <= 1/d (boundary included).
inline bool is_isotropic_separable(Eigen::Index d, double fidelity) {
    if (d < 2)
        throw std::invalid_argument(
            "is_isotropic_separable: dimension must be >= 2");
    if (fidelity < -1e-12 || fidelity > 1.0 + 1e-12)
        throw std::domain_error(
            "is_isotropic_separable: fidelity outside [0, 1]");
    return fidelity <= 1.0 / static_cast<double>(d) + 1e-12;
}

}  // namespace isoent
