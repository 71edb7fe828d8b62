// Independent numerical verification of the closed forms: direct
// constrained minimization over Schmidt vectors, discrete lower convex
// envelopes, convex-roof upper bounds from ensemble optimization, and the
// Wootters two-qubit concurrence formula.
//
// All stochastic routines take explicit seeds and return identical results
// for identical seeds; restarts combine by minimum.

#pragma once

#include <isoent/iso_closed_form.hpp>

#include <utility>

namespace isoent {

struct ConstrainedMinResult {
    double fidelity = 0.0;
    int d = 0;
    double minimum = 0.0;
    SchmidtVector argmin;
    int restarts_used = 0;
    bool converged = false;
};

namespace detail {

// Projects z onto {x >= 0, sum x = s, ||x||_2 = 1}. On a support of size p
// the plane-sphere intersection is a (p-2)-sphere of radius sqrt(1 - s^2/p)
// centered at s/p; coordinates driven negative are retired one at a time,
// keeping the support large enough that the set stays nonempty (p >= s^2).
inline RealVector project_constraint(const RealVector& z, double s) {
    const Eigen::Index n = z.size();
    std::vector<bool> active(n, true);
    Eigen::Index p = n;
    RealVector x = RealVector::Zero(n);
    while (true) {
        const double center = s / p;
        const double radius =
            std::sqrt(std::max(0.0, 1.0 - s * s / p));
        double mean = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (active[i]) mean += z(i);
        mean /= p;
        double ynorm2 = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (active[i]) {
                const double y = z(i) - mean;
                ynorm2 += y * y;
            }
        const double ynorm = std::sqrt(ynorm2);
        if (radius == 0.0 || ynorm < 1e-150) {
            // Center of the sphere, or a degenerate direction: fall back to
            // a fixed tangent direction so the result stays deterministic.
            const double dirnorm =
                std::sqrt(std::max(1.0, (p - 1.0) * (p - 1.0) + (p - 1.0)));
            bool first = true;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!active[i]) continue;
                const double dir = first ? (p - 1.0) : -1.0;
                first = false;
                x(i) = center + ((radius == 0.0 || p < 2)
                                     ? 0.0
                                     : radius * dir / dirnorm);
            }
        } else {
            for (Eigen::Index i = 0; i < n; ++i)
                x(i) = active[i]
                           ? center + radius * (z(i) - mean) / ynorm
                           : 0.0;
        }
        Eigen::Index worst = -1;
        double worst_val = -1e-15;
        for (Eigen::Index i = 0; i < n; ++i)
            if (active[i] && x(i) < worst_val) {
                worst = i;
                worst_val = x(i);
            }
        if (worst < 0) break;
        if (p - 1.0 < s * s) break;  // cannot shrink further; accept clamp
        active[worst] = false;
        --p;
    }
    for (Eigen::Index i = 0; i < n; ++i) x(i) = std::max(0.0, x(i));
    return x;
}

// Gradient component tangent to the constraint set at x, restricted to the
// coordinates that are strictly positive.
inline RealVector tangent_gradient(const RealVector& x,
                                   const RealVector& grad) {
    const Eigen::Index n = x.size();
    std::vector<Eigen::Index> sup;
    for (Eigen::Index i = 0; i < n; ++i)
        if (x(i) > 0.0) sup.push_back(i);
    RealVector t = RealVector::Zero(n);
    if (sup.size() < 2) return t;
    const double p = static_cast<double>(sup.size());
    double gdot1 = 0.0, xdot1 = 0.0;
    for (Eigen::Index i : sup) {
        gdot1 += grad(i);
        xdot1 += x(i);
    }
    // Subtract the components along the two constraint normals, ones and x,
    // orthonormalized on the support.
    RealVector x_perp = RealVector::Zero(n);
    double xp_norm2 = 0.0;
    for (Eigen::Index i : sup) {
        x_perp(i) = x(i) - (xdot1 / p);
        xp_norm2 += x_perp(i) * x_perp(i);
    }
    for (Eigen::Index i : sup) t(i) = grad(i) - (gdot1 / p);
    if (xp_norm2 > 1e-28) {
        double tdotxp = 0.0;
        for (Eigen::Index i : sup) tdotxp += t(i) * x_perp(i);
        for (Eigen::Index i : sup)
            t(i) -= (tdotxp / xp_norm2) * x_perp(i);
    }
    return t;
}

struct PgdOutcome {
    double value = 0.0;
    RealVector x;
};

// Projected gradient descent with step halving for the branch objective
// 2(1 - sum x^4) on the constraint set; stops at projected-gradient norm
// <= 1e-10 or 10^4 iterations.
inline PgdOutcome projected_descent(RealVector start, double s) {
    const auto objective = [](const RealVector& x) {
        return 2.0 * (1.0 - x.array().pow(4).sum());
    };
    RealVector x = project_constraint(start, s);
    double val = objective(x);
    double alpha = 0.1;
    for (int iter = 0; iter < 10000; ++iter) {
        const RealVector grad = -8.0 * x.array().pow(3);
        const RealVector tg = tangent_gradient(x, grad);
        const double tg_norm = tg.norm();
        if (tg_norm <= 1e-10) break;
        bool accepted = false;
        while (alpha > 1e-16) {
            const RealVector xn = project_constraint(x - alpha * grad, s);
            const double vn = objective(xn);
            if (vn <= val - 1e-4 * alpha * tg_norm * tg_norm) {
                x = xn;
                val = vn;
                alpha = std::min(2.0 * alpha, 1.0);
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;
    }
    return {val, std::move(x)};
}

}  // namespace detail

/// Minimum of C^2(mu) over Schmidt vectors with (sum_k sqrt(mu_k))^2 / d = F,
/// by random-restart projected local search on x = sqrt(mu). Deterministic
/// given the seed; `converged` reports whether the running best was stable
/// (within 1e-8) across the final three restarts.
inline ConstrainedMinResult min_tangle_at_F(int d, double fidelity,
                                            int restarts = 32,
                                            std::uint64_t seed = 0) {
    if (d < 2)
        throw std::invalid_argument(
            "min_tangle_at_F: dimension must be >= 2");
    if (restarts < 1)
        throw std::invalid_argument("min_tangle_at_F: restarts must be >= 1");
    const double f = detail::clamp_fidelity(
        fidelity, 1.0 / d, 1.0,
        "min_tangle_at_F: fidelity outside [1/d, 1]");
    const double s = std::sqrt(f * d);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = std::numeric_limits<double>::infinity();
    RealVector best_x = RealVector::Zero(d);
    std::vector<double> best_after;
    best_after.reserve(restarts);
    for (int r = 0; r < restarts; ++r) {
        RealVector start(d);
        for (int i = 0; i < d; ++i) start(i) = std::abs(gauss(rng));
        const detail::PgdOutcome out = detail::projected_descent(start, s);
        if (out.value < best) {
            best = out.value;
            best_x = out.x;
        }
        best_after.push_back(best);
    }
    const int window = std::min(3, restarts);
    const bool converged =
        best_after[restarts - window] - best_after[restarts - 1] <= 1e-8;

    RealVector mu(d);
    for (int i = 0; i < d; ++i) mu(i) = best_x(i) * best_x(i);
    return {f, d, best, SchmidtVector(std::move(mu)), restarts, converged};
}

/// Lower convex envelope of points sorted by strictly increasing F, as a
/// piecewise-linear curve through a subset of the input points. The result
/// is convex, lies on or below the input, and is idempotent.
inline PiecewiseCurve convex_envelope(
    const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("convex_envelope: need >= 3 points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i - 1].first < points[i].first))
            throw std::invalid_argument(
                "convex_envelope: points must be sorted with distinct F");
    std::vector<std::pair<double, double>> hull;
    const auto cross = [](const std::pair<double, double>& o,
                          const std::pair<double, double>& a,
                          const std::pair<double, double>& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    for (const auto& p : points) {
        while (hull.size() >= 2 &&
               cross(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0.0)
            hull.pop_back();
        hull.push_back(p);
    }
    std::vector<CurveSegment> segments;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const auto& [x0, y0] = hull[i - 1];
        const auto& [x1, y1] = hull[i];
        const double slope = (y1 - y0) / (x1 - x0);
        segments.push_back({x0, x1, SegmentKind::Linear, slope,
                            y0 - slope * x0});
    }
    return PiecewiseCurve(0, Measure::Tangle, std::move(segments));
}

struct EnsembleDecomposition {
    std::vector<double> weights;
    std::vector<PureBipartiteState> states;
};

/// Ensemble of rho generated from its eigendecomposition by a matrix with
/// orthonormal columns: |Psi~_j> = sum_k conj(mix_jk) sqrt(lambda_k) |e_k>,
/// p_j = <Psi~_j|Psi~_j>. Every ensemble of rho arises this way.
inline EnsembleDecomposition ensemble_from_isometry(const DensityOperator& rho,
                                                    const Matrix& mix) {
    const Eigensystem eig = hermitian_eig(rho.matrix());
    Eigen::Index rank = 0;
    while (rank < eig.eigenvalues.size() && eig.eigenvalues(rank) > 1e-12)
        ++rank;
    if (mix.cols() != rank)
        throw std::invalid_argument(
            "ensemble_from_isometry: column count must equal rank(rho)");
    if (mix.rows() < rank)
        throw std::invalid_argument(
            "ensemble_from_isometry: need at least rank(rho) rows");
    const double residual =
        (mix.adjoint() * mix - Matrix::Identity(rank, rank))
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-8)
        throw std::domain_error(
            "ensemble_from_isometry: mix does not have orthonormal columns");

    Matrix w(rho.joint_dim(), rank);
    for (Eigen::Index k = 0; k < rank; ++k)
        w.col(k) = std::sqrt(eig.eigenvalues(k)) * eig.eigenvectors.col(k);
    const Matrix unnormalized = w * mix.adjoint();  // column j is |Psi~_j>

    EnsembleDecomposition out;
    for (Eigen::Index j = 0; j < mix.rows(); ++j) {
        const double p = unnormalized.col(j).squaredNorm();
        out.weights.push_back(p);
        if (p > 1e-30) {
            out.states.emplace_back(unnormalized.col(j) / std::sqrt(p),
                                    rho.dim_a(), rho.dim_b());
        } else {
            Vector e0 = Vector::Zero(rho.joint_dim());
            e0(0) = 1.0;
            out.states.emplace_back(std::move(e0), rho.dim_a(), rho.dim_b());
        }
    }
    return out;
}

namespace detail {

// Thin orthonormal factor of z (rows >= cols), with the triangular factor's
// diagonal phased real positive so the map is continuous almost everywhere.
inline Matrix thin_orthonormal(const Matrix& z) {
    const Eigen::Index rows = z.rows();
    const Eigen::Index cols = z.cols();
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < cols; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

// Average measure of the ensemble generated by the orthonormalization of z.
// w holds sqrt(lambda_k)-scaled eigenvectors of the target state.
inline double ensemble_average(const Matrix& z, const Matrix& w,
                               Eigen::Index dim_a, Eigen::Index dim_b,
                               Measure measure) {
    const Matrix q = thin_orthonormal(z);
    const Matrix unnormalized = w * q.adjoint();
    const Eigen::Index small = std::min(dim_a, dim_b);
    double avg = 0.0;
    Matrix coeff(dim_a, dim_b);
    for (Eigen::Index j = 0; j < unnormalized.cols(); ++j) {
        const double p = unnormalized.col(j).squaredNorm();
        if (p <= 1e-30) continue;
        for (Eigen::Index i = 0; i < dim_a; ++i)
            for (Eigen::Index k = 0; k < dim_b; ++k)
                coeff(i, k) = unnormalized(i * dim_b + k, j);
        Matrix gram(small, small);
        if (dim_a <= dim_b)
            gram = coeff * coeff.adjoint();
        else
            gram = coeff.transpose() * coeff.conjugate();
        const double tangle =
            std::max(0.0, 2.0 * (1.0 - gram.squaredNorm() / (p * p)));
        avg += (measure == Measure::Tangle) ? p * tangle
                                            : p * std::sqrt(tangle);
    }
    return avg;
}

}  // namespace detail

/// Upper bound on the convex-roof tangle or concurrence of rho: minimum
/// average measure over ensembles of size M, optimized by derivative-free
/// coordinate descent with a shrinking step over the isometry parameters.
/// Deterministic given the seed and monotone nonincreasing in `restarts`.
inline double roof_upper_bound(const DensityOperator& rho, Measure measure,
                               int ensemble_size, int restarts = 8,
                               std::uint64_t seed = 0) {
    if (measure == Measure::Eof)
        throw std::invalid_argument(
            "roof_upper_bound: measure must be concurrence or tangle");
    if (restarts < 1)
        throw std::invalid_argument("roof_upper_bound: restarts must be >= 1");
    const Eigensystem eig = hermitian_eig(rho.matrix());
    Eigen::Index rank = 0;
    while (rank < eig.eigenvalues.size() && eig.eigenvalues(rank) > 1e-12)
        ++rank;
    if (ensemble_size < rank)
        throw std::domain_error(
            "roof_upper_bound: ensemble size below rank(rho)");
    if (rank == 1) {
        const PureBipartiteState psi(eig.eigenvectors.col(0), rho.dim_a(),
                                     rho.dim_b());
        const double tangle = pure_tangle(psi);
        return (measure == Measure::Tangle) ? tangle : std::sqrt(tangle);
    }

    Matrix w(rho.joint_dim(), rank);
    for (Eigen::Index k = 0; k < rank; ++k)
        w.col(k) = std::sqrt(eig.eigenvalues(k)) * eig.eigenvectors.col(k);

    const auto objective = [&](const Matrix& z) {
        return detail::ensemble_average(z, w, rho.dim_a(), rho.dim_b(),
                                        measure);
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < restarts; ++restart) {
        Matrix z(ensemble_size, rank);
        for (Eigen::Index i = 0; i < z.rows(); ++i)
            for (Eigen::Index j = 0; j < z.cols(); ++j)
                z(i, j) = Complex(gauss(rng), gauss(rng));
        double val = objective(z);
        double step = 0.5;
        long evals = 0;
        const long budget = 400000;
        while (step > 5e-5 && evals < budget) {
            bool improved = false;
            for (Eigen::Index i = 0; i < z.rows() && evals < budget; ++i) {
                for (Eigen::Index j = 0; j < z.cols() && evals < budget;
                     ++j) {
                    for (int part = 0; part < 2; ++part) {
                        const Complex delta = (part == 0)
                                                  ? Complex(step, 0.0)
                                                  : Complex(0.0, step);
                        for (int sign : {+1, -1}) {
                            z(i, j) += double(sign) * delta;
                            const double v = objective(z);
                            ++evals;
                            if (v < val - 1e-13) {
                                val = v;
                                improved = true;
                                break;
                            }
                            z(i, j) -= double(sign) * delta;
                        }
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::min(best, val);
    }
    return best;
}

/// Wootters concurrence of a two-qubit state: max(0, l1 - l2 - l3 - l4)
/// with l_i the descending square roots of the eigenvalues of rho rho~,
/// rho~ = (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
inline double wootters_concurrence(const DensityOperator& rho) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw std::invalid_argument(
            "wootters_concurrence: requires a two-qubit state");
    Matrix sigma_y(2, 2);
    sigma_y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    const Matrix yy = kron(sigma_y, sigma_y);
    const Matrix rho_tilde = yy * rho.matrix().conjugate() * yy;

    const Eigensystem eig = hermitian_eig(rho.matrix());
    Matrix sqrt_rho = Matrix::Zero(4, 4);
    for (Eigen::Index k = 0; k < 4; ++k) {
        const double lam = std::max(0.0, eig.eigenvalues(k));
        sqrt_rho += std::sqrt(lam) * eig.eigenvectors.col(k) *
                    eig.eigenvectors.col(k).adjoint();
    }
    // Same spectrum as rho rho~, but Hermitian and PSD, so the symmetric
    // eigensolver applies.
    const Matrix m = sqrt_rho * rho_tilde * sqrt_rho;
    const Eigensystem meig = hermitian_eig(m);
    double c = 0.0;
    for (Eigen::Index k = 0; k < 4; ++k) {
        const double l = std::sqrt(std::max(0.0, meig.eigenvalues(k)));
        c += (k == 0) ? l : -l;
    }
    return std::max(0.0, c);
}

}  // namespace isoent
