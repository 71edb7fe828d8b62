#include <isoent/linalg.hpp>

#include <doctest.h>

#include "test_helpers.hpp"

using namespace isoent;
using test_helpers::random_density_matrix;
using test_helpers::random_hermitian;
using test_helpers::random_matrix;

TEST_CASE("kron: identity and forced diagonal cases") {
    const Matrix i2 = identity(2);
    CHECK((kron(i2, i2) - identity(4)).cwiseAbs().maxCoeff() == 0.0);

    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    Matrix b = Matrix::Zero(2, 2);
    b(1, 1) = 1.0;
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK((kron(a, b) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kron: random pair against the index formula") {
    std::mt19937_64 rng(11);
    const Matrix a = random_matrix(rng, 2, 2);
    const Matrix b = random_matrix(rng, 2, 2);
    const Matrix k = kron(a, b);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            for (Eigen::Index p = 0; p < 2; ++p)
                for (Eigen::Index q = 0; q < 2; ++q)
                    CHECK(std::abs(k(i * 2 + p, j * 2 + q) -
                                   a(i, j) * b(p, q)) == 0.0);
}

TEST_CASE("kron: rejects oversized products") {
    const Matrix big = Matrix::Identity(70, 70);
    CHECK_THROWS_AS((void)kron(big, big), std::invalid_argument);
}

TEST_CASE("partial_trace: product state factorizes") {
    std::mt19937_64 rng(12);
    const Matrix rho_a = random_density_matrix(rng, 3);
    const Matrix rho_b = random_density_matrix(rng, 2);
    const Matrix joint = kron(rho_a, rho_b);
    CHECK((partial_trace(joint, 3, 2, Subsystem::A) - rho_a)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((partial_trace(joint, 3, 2, Subsystem::B) - rho_b)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("partial_trace: maximally entangled marginal is maximally mixed") {
    Vector plus = Vector::Zero(4);
    plus(0) = plus(3) = 1.0 / std::sqrt(2.0);
    const Matrix rho = plus * plus.adjoint();
    const Matrix marginal = partial_trace(rho, 2, 2, Subsystem::A);
    CHECK((marginal - 0.5 * identity(2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial_trace: random input against the index-summation oracle") {
    std::mt19937_64 rng(13);
    const Matrix rho = random_density_matrix(rng, 6);  // 3 x 2 split
    const Matrix got_a = partial_trace(rho, 3, 2, Subsystem::A);
    const Matrix got_b = partial_trace(rho, 3, 2, Subsystem::B);

    Matrix want_a = Matrix::Zero(3, 3);
    Matrix want_b = Matrix::Zero(2, 2);
    for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 3; ++j)
            for (Eigen::Index k = 0; k < 2; ++k)
                want_a(i, j) += rho(i * 2 + k, j * 2 + k);
    for (Eigen::Index k = 0; k < 2; ++k)
        for (Eigen::Index l = 0; l < 2; ++l)
            for (Eigen::Index i = 0; i < 3; ++i)
                want_b(k, l) += rho(i * 2 + k, i * 2 + l);

    CHECK((got_a - want_a).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((got_b - want_b).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(got_a.trace().real() - 1.0) <= 1e-12);
    CHECK(std::abs(got_b.trace().real() - 1.0) <= 1e-12);
}

TEST_CASE("partial_trace: dimension mismatch is rejected") {
    const Matrix rho = Matrix::Identity(6, 6) / 6.0;
    CHECK_THROWS_AS((void)partial_trace(rho, 2, 2, Subsystem::A),
                    std::invalid_argument);
}

TEST_CASE("partial_trace preserves unit trace over either subsystem") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix rho = random_density_matrix(rng, 12);  // 4 x 3
        for (Subsystem keep : {Subsystem::A, Subsystem::B}) {
            const Matrix marginal = partial_trace(rho, 4, 3, keep);
            CHECK(std::abs(marginal.trace().real() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("purity of random density matrices stays in [1/d, 1]") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix rho = random_density_matrix(rng, 8);
        const double purity = rho.squaredNorm();
        CHECK(purity >= 1.0 / 8.0 - 1e-12);
        CHECK(purity <= 1.0 + 1e-12);
    }
}

TEST_CASE("hermitian_eig: diagonal and identity cases") {
    Matrix d3 = Matrix::Zero(3, 3);
    d3(0, 0) = 3.0;
    d3(1, 1) = 1.0;
    d3(2, 2) = 2.0;
    const Eigensystem eig = hermitian_eig(d3);
    CHECK(eig.eigenvalues(0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(eig.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eig.eigenvalues(2) == doctest::Approx(1.0).epsilon(1e-14));

    const Eigensystem id = hermitian_eig(identity(5));
    for (int k = 0; k < 5; ++k) CHECK(id.eigenvalues(k) == 1.0);
}

TEST_CASE("hermitian_eig: residual and reconstruction oracles") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix h = random_hermitian(rng, 6);
        h /= h.cwiseAbs().maxCoeff();  // scale to max-entry 1
        const Eigensystem eig = hermitian_eig(h);
        for (Eigen::Index k = 0; k < 6; ++k) {
            const Vector residual = h * eig.eigenvectors.col(k) -
                                    eig.eigenvalues(k) *
                                        eig.eigenvectors.col(k);
            CHECK(residual.cwiseAbs().maxCoeff() <= 1e-10);
        }
        const Matrix recon = eig.eigenvectors *
                             eig.eigenvalues.asDiagonal() *
                             eig.eigenvectors.adjoint();
        CHECK((recon - h).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(unitarity_residual(eig.eigenvectors) <= 1e-10);
        for (Eigen::Index k = 1; k < 6; ++k)
            CHECK(eig.eigenvalues(k) <= eig.eigenvalues(k - 1));
    }
}

TEST_CASE("hermitian_eig: rejects non-square and non-Hermitian input") {
    CHECK_THROWS_AS((void)hermitian_eig(Matrix::Zero(2, 3)),
                    std::invalid_argument);
    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 1) = 1.0;  // deviates from Hermitian by 1
    CHECK_THROWS_AS((void)hermitian_eig(skew), std::invalid_argument);
}

TEST_CASE("svd: diagonal and rank-one cases") {
    Matrix d2 = Matrix::Zero(2, 2);
    d2(0, 0) = 2.0;
    d2(1, 1) = 1.0;
    const SvdResult s = svd(d2);
    CHECK(s.singular_values(0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.singular_values(1) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(17);
    const Matrix u = random_matrix(rng, 3, 1);
    const Matrix v = random_matrix(rng, 4, 1);
    const SvdResult r1 = svd(u * v.adjoint());
    CHECK(r1.singular_values(0) ==
          doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));
    for (Eigen::Index k = 1; k < r1.singular_values.size(); ++k)
        CHECK(r1.singular_values(k) <= 1e-12);
}

TEST_CASE("svd: random 3x4 reconstruction") {
    std::mt19937_64 rng(18);
    const Matrix m = random_matrix(rng, 3, 4);
    const SvdResult s = svd(m);
    Matrix sigma = Matrix::Zero(3, 4);
    for (Eigen::Index k = 0; k < 3; ++k) sigma(k, k) = s.singular_values(k);
    CHECK((s.u * sigma * s.v.adjoint() - m).cwiseAbs().maxCoeff() <= 1e-10);
    for (Eigen::Index k = 1; k < 3; ++k)
        CHECK(s.singular_values(k) <= s.singular_values(k - 1));
}

TEST_CASE("svd and hermitian_eig agree on Hermitian PSD spectra") {
    std::mt19937_64 rng(19);
    const Matrix rho = random_density_matrix(rng, 5);
    const SvdResult s = svd(rho);
    const Eigensystem eig = hermitian_eig(rho);
    for (Eigen::Index k = 0; k < 5; ++k)
        CHECK(std::abs(s.singular_values(k) - eig.eigenvalues(k)) <= 1e-10);
}

TEST_CASE("haar_unitary: scalar case, determinism, unitarity sweep") {
    const Matrix u1 = haar_unitary(1, 5);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) <= 1e-14);

    CHECK((haar_unitary(4, 99) - haar_unitary(4, 99)).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK((haar_unitary(4, 99) - haar_unitary(4, 98)).cwiseAbs().maxCoeff() >
          1e-3);

    for (Eigen::Index d = 1; d <= 32; ++d)
        CHECK(unitarity_residual(haar_unitary(d, 1000 + d)) <= 1e-10);

    CHECK_THROWS_AS((void)haar_unitary(0, 1), std::invalid_argument);
}

TEST_CASE("haar_unitary: Monte-Carlo average of U X U^dagger vanishes for "
          "traceless X") {
    Matrix x = Matrix::Zero(3, 3);
    x(0, 0) = 1.0;
    x(1, 1) = -0.5;
    x(2, 2) = -0.5;
    x(0, 1) = Complex(0.2, 0.1);
    x(1, 0) = std::conj(x(0, 1));

    const int samples = 10000;
    Eigen::MatrixXd mean_re = Eigen::MatrixXd::Zero(3, 3);
    Eigen::MatrixXd mean_im = Eigen::MatrixXd::Zero(3, 3);
    Eigen::MatrixXd m2_re = Eigen::MatrixXd::Zero(3, 3);
    Eigen::MatrixXd m2_im = Eigen::MatrixXd::Zero(3, 3);
    for (int k = 0; k < samples; ++k) {
        const Matrix u = haar_unitary(3, 20000 + k);
        const Matrix conj = u * x * u.adjoint();
        mean_re += conj.real();
        mean_im += conj.imag();
        m2_re += conj.real().cwiseAbs2();
        m2_im += conj.imag().cwiseAbs2();
    }
    mean_re /= samples;
    mean_im /= samples;
    m2_re /= samples;
    m2_im /= samples;
    for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) {
            const double sig_re = std::sqrt(
                std::max(0.0, m2_re(i, j) - mean_re(i, j) * mean_re(i, j)) /
                samples);
            const double sig_im = std::sqrt(
                std::max(0.0, m2_im(i, j) - mean_im(i, j) * mean_im(i, j)) /
                samples);
            CHECK(std::abs(mean_re(i, j)) <= 3.0 * sig_re + 1e-12);
            CHECK(std::abs(mean_im(i, j)) <= 3.0 * sig_im + 1e-12);
        }
}
