// Closed forms for isotropic states in dimension d: the constrained-minimum
// branches (n, m), the single-extremization curve C^2(F) and its first two
// F-derivatives, the inflection point, and the convex-hull constructions
// giving the tangle, concurrence, and entanglement-of-formation curves.
//
// A branch (n, m) is the extremum family whose Schmidt vector has n entries
// equal to gamma^2, m entries equal to delta^2, and the rest zero, subject to
//     n gamma^2 + m delta^2 = 1,      n gamma + m delta = sqrt(F d),
// with gamma >= delta >= 0. All branch quantities come from the explicit
// radical solution of these constraints; the cubic stationarity condition is
// used only as a residual check in the tests.

#pragma once

#include <isoent/piecewise_curve.hpp>

namespace isoent {

struct ExtremumBranch {
    int n = 1;  // count of gamma^2 coefficients, n >= 1
    int m = 0;  // count of delta^2 coefficients, m >= 0, n + m <= d
    int d = 2;
};

struct BranchSolution {
    ExtremumBranch branch;
    double fidelity = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double w = 0.0;  // sqrt((1-F)/F)
};

namespace detail {

inline void validate_branch(const ExtremumBranch& b) {
    if (b.d < 2)
        throw std::invalid_argument("branch: dimension must be >= 2");
    if (b.n < 1)
        throw std::invalid_argument("branch: n must be >= 1");
    if (b.m < 0 || b.n + b.m > b.d)
        throw std::invalid_argument("branch: need 0 <= m and n + m <= d");
}

// Upper-sign solution of the branch constraints; n and m are treated as
// continuous. Requires n <= fd <= n + m (m > 0) or fd == n (m == 0).
struct GammaDelta {
    double gamma;
    double delta;
};

inline GammaDelta gamma_delta(double n, double m, double fd) {
    const double s = std::sqrt(fd);
    if (m <= 0.0) return {std::sqrt(1.0 / n), 0.0};
    const double radicand = n * m * (n + m - fd);
    const double root = std::sqrt(std::max(0.0, radicand));
    const double gamma = (n * s + root) / (n * (n + m));
    const double delta = (s - n * gamma) / m;
    return {gamma, std::max(0.0, delta)};
}

// Clamps fidelity into [lo, hi], allowing 1e-12 of roundoff slack outside.
inline double clamp_fidelity(double f, double lo, double hi,
                             const char* what) {
    if (f < lo - 1e-12 || f > hi + 1e-12) throw std::domain_error(what);
    return std::clamp(f, lo, hi);
}

}  // namespace detail

/// Branch extremum coefficients at fidelity F. Domain: n <= F d <= n + m;
/// a pure-gamma branch (m = 0) exists only at F d = n.
inline BranchSolution branch_solution(const ExtremumBranch& b,
                                      double fidelity) {
    detail::validate_branch(b);
    const double d = static_cast<double>(b.d);
    const double f = detail::clamp_fidelity(
        fidelity, b.n / d, (b.n + b.m) / d,
        "branch_solution: fidelity outside [n/d, (n+m)/d]");
    const double fd = f * d;
    if (b.m == 0 && std::abs(fd - b.n) > 1e-9)
        throw std::domain_error("branch_solution: m = 0 requires F d = n");
    const auto [gamma, delta] = detail::gamma_delta(b.n, b.m, fd);
    const double w = std::sqrt(std::max(0.0, (1.0 - f) / f));
    return {b, f, gamma, delta, w};
}

/// C^2_nm(F) = 2 (1 - n gamma^4 - m delta^4).
inline double branch_tangle(const ExtremumBranch& b, double fidelity) {
    const BranchSolution s = branch_solution(b, fidelity);
    const double g2 = s.gamma * s.gamma;
    const double d2 = s.delta * s.delta;
    return 2.0 * (1.0 - b.n * g2 * g2 - b.m * d2 * d2);
}

/// C_nm(F) = sqrt(C^2_nm(F)), the concurrence extremum of the same branch.
inline double branch_concurrence(const ExtremumBranch& b, double fidelity) {
    return std::sqrt(std::max(0.0, branch_tangle(b, fidelity)));
}

/// Branch tangle with n, m continuous; supports derivative checks against
/// the closed-form partials.
inline double branch_tangle_continuous(double n, double m, int d,
                                       double fidelity) {
    if (d < 2) throw std::invalid_argument("branch: dimension must be >= 2");
    if (n < 1.0 - 1e-12 || m < -1e-12 || n + m > d + 1e-12)
        throw std::invalid_argument("branch: need 1 <= n and n + m <= d");
    const double fd = detail::clamp_fidelity(
        fidelity * d, n, n + m,
        "branch_tangle_continuous: fidelity outside [n/d, (n+m)/d]");
    const auto [gamma, delta] = detail::gamma_delta(n, m, fd);
    const double g2 = gamma * gamma;
    const double d2 = delta * delta;
    return 2.0 * (1.0 - n * g2 * g2 - m * d2 * d2);
}

/// 2(d-1)/d, the tangle of a maximally entangled pure state.
inline double max_tangle(int d) {
    return 2.0 * (d - 1.0) / static_cast<double>(d);
}

/// C^2(F): the minimum over branches, attained at (n, m) = (1, d-1).
/// Defined for 1/d <= F <= 1; monotonically increasing.
inline double csquared(double fidelity, int d) {
    if (d < 2) throw std::invalid_argument("csquared: dimension must be >= 2");
    const double f =
        detail::clamp_fidelity(fidelity, 1.0 / d, 1.0,
                               "csquared: fidelity outside [1/d, 1]");
    if (f == 1.0) return max_tangle(d);  // uniform vector, exact endpoint
    const auto [gamma, delta] =
        detail::gamma_delta(1.0, d - 1.0, f * d);
    const double g2 = gamma * gamma;
    const double d2 = delta * delta;
    return 2.0 * (1.0 - g2 * g2 - (d - 1.0) * d2 * d2);
}

/// dC^2/dF = 4 sqrt(d/F) gamma delta (gamma + delta), written out in terms
/// of F and w = sqrt((1-F)/F). Nonnegative on [1/d, 1]; zero only at F = 1/d.
inline double csquared_dF(double fidelity, int d) {
    if (d < 2)
        throw std::invalid_argument("csquared_dF: dimension must be >= 2");
    const double f =
        detail::clamp_fidelity(fidelity, 1.0 / d, 1.0,
                               "csquared_dF: fidelity outside [1/d, 1]");
    const double w = std::sqrt(std::max(0.0, (1.0 - f) / f));
    const double s = std::sqrt(d - 1.0);
    return 8.0 * f / d * (1.0 + w * s) * (1.0 - w / s) *
           (1.0 + 0.5 * w * (s - 1.0 / s));
}

namespace detail {

// d^2C^2/dF^2 parameterized by w, for d >= 3. The polynomial factor has a
// single positive root, at which the curve turns from convex to concave.
inline double csquared_d2F_at_w(int d, double w) {
    const double s = std::sqrt(d - 1.0);
    const double poly = 1.0 +
                        (2.0 / 3.0) * ((d * d - 8.0 * d + 8.0) /
                                       ((d - 2.0) * s)) * w -
                        2.0 * w * w - w * w * w * w / 3.0;
    return -(6.0 / w) * ((d - 2.0) / (d * s)) * poly;
}

}  // namespace detail

/// d^2C^2/dF^2 on the open interval (1/d, 1). Identically 8 for d = 2; for
/// d >= 3 positive near the separability boundary and negative near F = 1.
inline double csquared_d2F(double fidelity, int d) {
    if (d < 2)
        throw std::invalid_argument("csquared_d2F: dimension must be >= 2");
    if (fidelity <= 1.0 / d || fidelity >= 1.0)
        throw std::domain_error("csquared_d2F: fidelity outside (1/d, 1)");
    if (d == 2) return 8.0;
    const double w = std::sqrt((1.0 - fidelity) / fidelity);
    return detail::csquared_d2F_at_w(d, w);
}

/// The unique F* in (1/d, 1) where d^2C^2/dF^2 changes sign, located by
/// bisection in w to |dw| <= 1e-12. No inflection exists for d = 2.
inline double inflection_point(int d) {
    if (d < 2)
        throw std::invalid_argument(
            "inflection_point: dimension must be >= 2");
    if (d == 2)
        throw std::domain_error(
            "inflection_point: d = 2 curve is globally convex");
    double lo = 1e-12;                  // concave side (F near 1)
    double hi = std::sqrt(d - 1.0);     // convex side (F near 1/d)
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (detail::csquared_d2F_at_w(d, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double w = 0.5 * (lo + hi);
    return 1.0 / (1.0 + w * w);
}

/// Tangent point of the hull construction, F_t = 4(d-1)/d^2.
inline double tangent_fidelity(int d) {
    return 4.0 * (d - 1.0) / (static_cast<double>(d) * d);
}

/// Slope of the hull's linear segment, 2d/(d-1).
inline double tangent_slope(int d) { return 2.0 * d / (d - 1.0); }

/// Tangle at the tangent point, 2(2d-3)/(d(d-1)).
inline double tangent_value(int d) {
    return 2.0 * (2.0 * d - 3.0) / (static_cast<double>(d) * (d - 1.0));
}

/// Re-derives the tangent point numerically by solving
///     dC^2/dF = [2(d-1)/d - C^2(F)] / (1 - F)
/// on (1/d, F*). Cross-checks the closed form 4(d-1)/d^2; for d = 2 the
/// tangent point is F = 1 and there is nothing to solve.
inline double solve_tangent_fidelity(int d) {
    if (d < 2)
        throw std::invalid_argument(
            "solve_tangent_fidelity: dimension must be >= 2");
    if (d == 2) return 1.0;
    const double target = max_tangle(d);
    const auto mismatch = [&](double f) {
        return csquared_dF(f, d) * (1.0 - f) + csquared(f, d) - target;
    };
    double lo = 1.0 / d;     // mismatch < 0
    double hi = inflection_point(d);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mismatch(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Tangle of the isotropic state as a function of F: zero up to the
/// separability boundary, C^2(F) up to the tangent point, then the tangent
/// line into (1, 2(d-1)/d). For d = 2 the tangent point is F = 1 and the
/// curve is (2F-1)^2 on [1/2, 1].
inline PiecewiseCurve tangle_curve(int d) {
    if (d < 2)
        throw std::invalid_argument("tangle_curve: dimension must be >= 2");
    const double lo = 1.0 / d;
    std::vector<CurveSegment> segments;
    segments.push_back({0.0, lo, SegmentKind::Zero, 0.0, 0.0});
    if (d == 2) {
        segments.push_back({lo, 1.0, SegmentKind::ClosedForm, 0.0, 0.0});
    } else {
        const double ft = tangent_fidelity(d);
        const double slope = tangent_slope(d);
        segments.push_back({lo, ft, SegmentKind::ClosedForm, 0.0, 0.0});
        segments.push_back(
            {ft, 1.0, SegmentKind::Linear, slope, max_tangle(d) - slope});
    }
    return PiecewiseCurve(d, Measure::Tangle, std::move(segments),
                          [d](double f) { return csquared(f, d); });
}

/// Concurrence of the isotropic state: C(F) is concave on [1/d, 1], so the
/// hull is the straight line from (1/d, 0) to (1, sqrt(2(d-1)/d)).
inline PiecewiseCurve concurrence_curve(int d) {
    if (d < 2)
        throw std::invalid_argument(
            "concurrence_curve: dimension must be >= 2");
    const double lo = 1.0 / d;
    const double slope = std::sqrt(2.0 * d / (d - 1.0));
    std::vector<CurveSegment> segments;
    segments.push_back({0.0, lo, SegmentKind::Zero, 0.0, 0.0});
    segments.push_back(
        {lo, 1.0, SegmentKind::Linear, slope, -slope / d});
    return PiecewiseCurve(d, Measure::Concurrence, std::move(segments));
}

/// E(F) = H2(gamma^2) + (1 - gamma^2) log2(d-1) with gamma from the
/// (1, d-1) branch; the function whose hull gives the entanglement of
/// formation. E(1/d) = 0 and E(1) = log2 d.
inline double eof_curve_point(double fidelity, int d) {
    if (d < 2)
        throw std::invalid_argument(
            "eof_curve_point: dimension must be >= 2");
    const double f =
        detail::clamp_fidelity(fidelity, 1.0 / d, 1.0,
                               "eof_curve_point: fidelity outside [1/d, 1]");
    const auto [gamma, delta] = detail::gamma_delta(1.0, d - 1.0, f * d);
    (void)delta;
    const double g2 = std::min(1.0, gamma * gamma);
    const double tail = (d > 2) ? (1.0 - g2) * std::log2(d - 1.0) : 0.0;
    return binary_entropy(g2) + tail;
}

/// Entanglement of formation of the isotropic state: zero up to 1/d, E(F)
/// up to the shared tangent point 4(d-1)/d^2, then the tangent line into
/// (1, log2 d). For d = 2 there is no linear segment.
inline PiecewiseCurve eof_iso_curve(int d) {
    if (d < 2)
        throw std::invalid_argument("eof_iso_curve: dimension must be >= 2");
    const double lo = 1.0 / d;
    std::vector<CurveSegment> segments;
    segments.push_back({0.0, lo, SegmentKind::Zero, 0.0, 0.0});
    if (d == 2) {
        segments.push_back({lo, 1.0, SegmentKind::ClosedForm, 0.0, 0.0});
    } else {
        const double ft = tangent_fidelity(d);
        const double slope = d * std::log2(d - 1.0) / (d - 2.0);
        segments.push_back({lo, ft, SegmentKind::ClosedForm, 0.0, 0.0});
        segments.push_back({ft, 1.0, SegmentKind::Linear, slope,
                            std::log2(static_cast<double>(d)) - slope});
    }
    return PiecewiseCurve(d, Measure::Eof, std::move(segments),
                          [d](double f) { return eof_curve_point(f, d); });
}

/// Partial derivatives of C^2_nm with n, m treated as continuous:
///   dC^2/dn = 2 gamma^2 [gamma^2 - 2 delta (gamma + delta)]
///   dC^2/dm = 2 delta^2 [delta^2 - 2 gamma (gamma + delta)] <= -6 delta^4
///   dC^2/du = -(1/2)(gamma + delta)(gamma - delta)^3 <= 0,   u = m - n.
/// These forms are polynomial in gamma, delta and stay finite on the whole
/// parallelogram; dC^2/du vanishes exactly on the boundary n + m = F d.
struct BranchPartials {
    double dn = 0.0;
    double dm = 0.0;
    double du = 0.0;
};

inline BranchPartials branch_partials(const ExtremumBranch& b,
                                      double fidelity) {
    const BranchSolution s = branch_solution(b, fidelity);
    const double g = s.gamma;
    const double e = s.delta;
    const double diff = g - e;
    return {2.0 * g * g * (g * g - 2.0 * e * (g + e)),
            2.0 * e * e * (e * e - 2.0 * g * (g + e)),
            -0.5 * (g + e) * diff * diff * diff};
}

/// Derivatives of the branch coefficients themselves with respect to n, m.
/// These have (gamma - delta) denominators and are genuinely singular on the
/// boundary n + m = F d, where gamma = delta.
struct CoefficientPartials {
    double dgamma_dn = 0.0;
    double ddelta_dn = 0.0;
    double dgamma_dm = 0.0;
    double ddelta_dm = 0.0;
};

inline CoefficientPartials coefficient_partials(const ExtremumBranch& b,
                                                double fidelity) {
    if (b.m < 1)
        throw std::invalid_argument("coefficient_partials: m must be >= 1");
    const BranchSolution s = branch_solution(b, fidelity);
    const double g = s.gamma;
    const double e = s.delta;
    const double diff = g - e;
    if (diff < 1e-12)
        throw std::domain_error(
            "coefficient_partials: singular at gamma == delta");
    const double n = b.n;
    const double m = b.m;
    return {(2.0 * g * e - g * g) / (2.0 * n * diff),
            -g * g / (2.0 * m * diff),
            e * e / (2.0 * n * diff),
            -(2.0 * g * e - e * e) / (2.0 * m * diff)};
}

}  // namespace isoent
