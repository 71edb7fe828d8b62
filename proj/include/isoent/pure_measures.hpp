// Entanglement measures on bipartite pure states: I-concurrence, tangle,
// and the entropy of entanglement (pure-state entanglement of formation).
// All entropies use base-2 logarithms.

#pragma once

#include <isoent/states.hpp>

namespace isoent {

enum class Measure { Concurrence, Tangle, Eof };

inline const char* measure_name(Measure m) {
    switch (m) {
        case Measure::Concurrence: return "concurrence";
        case Measure::Tangle: return "tangle";
        case Measure::Eof: return "eof";
    }
    return "?";
}

/// H2(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 := 0.
inline double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

namespace detail {

// Marginal of the smaller subsystem, computed from the coefficient matrix
// without forming the joint density operator.
inline Matrix small_marginal(const PureBipartiteState& psi) {
    const Matrix m = psi.coefficient_matrix();
    if (psi.dim_a() <= psi.dim_b()) return m * m.adjoint();
    return m.transpose() * m.conjugate();
}

}  // namespace detail

/// Tangle (squared concurrence) of a pure state: 2 [1 - tr(rho_A^2)].
inline double pure_tangle(const PureBipartiteState& psi) {
    const Matrix marginal = detail::small_marginal(psi);
    return std::max(0.0, 2.0 * (1.0 - marginal.squaredNorm()));
}

/// I-concurrence of a pure state: sqrt(2 [1 - tr(rho_A^2)]). Zero exactly
/// for product states; sqrt(2(d-1)/d) for maximally entangled ones.
inline double pure_concurrence(const PureBipartiteState& psi) {
    return std::sqrt(pure_tangle(psi));
}

/// Tangle from the squared Schmidt coefficients: 2 (1 - sum mu_j^2), which
/// also equals 4 sum_{j<k} mu_j mu_k.
inline double tangle_from_schmidt(const SchmidtVector& mu) {
    return std::max(0.0, 2.0 * (1.0 - mu.values().squaredNorm()));
}

/// Entropy of entanglement: von Neumann entropy of the marginal, base 2.
inline double pure_eof(const PureBipartiteState& psi) {
    const Eigensystem eig = hermitian_eig(detail::small_marginal(psi));
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
        const double p = eig.eigenvalues(k);
        if (p > 0.0) entropy -= p * std::log2(p);
    }
    return std::max(0.0, entropy);
}

}  // namespace isoent
