// Named verification suites behind the `verify` CLI subcommand. Each check
// reports its measured deviation against a pinned tolerance; a report passes
// only if every check does. The oracle and roof suites are seeded and
// deterministic per seed.

#pragma once

#include <isoent/plot.hpp>
#include <isoent/roof_oracle.hpp>

#include <chrono>
#include <functional>

namespace isoent {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const {
        for (const VerifyCheck& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

inline void run_check(VerifyReport& report, std::string name,
                      double tolerance,
                      const std::function<double()>& deviation) {
    VerifyCheck check;
    check.name = std::move(name);
    check.tolerance = tolerance;
    const auto start = std::chrono::steady_clock::now();
    try {
        check.deviation = deviation();
        check.passed = check.deviation <= tolerance;
    } catch (const std::exception&) {
        check.deviation = std::numeric_limits<double>::infinity();
        check.passed = false;
    }
    check.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    report.checks.push_back(std::move(check));
}

// Samples of fn on a step grid over [lo, 1], with F = 1 included exactly.
template <typename Fn>
std::vector<std::pair<double, double>> sample_closed_unit(double lo,
                                                          double step,
                                                          Fn&& fn) {
    std::vector<std::pair<double, double>> pts;
    for (int k = 0;; ++k) {
        double f = lo + k * step;
        if (f >= 1.0) f = 1.0;
        pts.emplace_back(f, fn(f));
        if (f == 1.0) break;
    }
    return pts;
}

// Minimum branch tangle over every admissible (n, m) at fidelity f.
inline double min_over_branches(int d, double f) {
    double best = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= d; ++n) {
        for (int m = 0; n + m <= d; ++m) {
            const double fd = f * d;
            if (m == 0 && std::abs(fd - n) > 1e-9) continue;
            if (fd < n - 1e-12 || fd > n + m + 1e-12) continue;
            best = std::min(best, branch_tangle({n, m, d}, f));
        }
    }
    return best;
}

}  // namespace detail

inline VerifyReport verify_closed_form() {
    VerifyReport report;
    detail::run_check(report, "C2(8/9, d=3) == 1", 1e-12, [] {
        return std::abs(csquared(8.0 / 9.0, 3) - 1.0);
    });
    detail::run_check(report, "dC2/dF(8/9, d=3) == 3", 1e-12, [] {
        return std::abs(csquared_dF(8.0 / 9.0, 3) - 3.0);
    });
    detail::run_check(report, "tangle curve d=3 breakpoints {1/3, 8/9}",
                      1e-12, [] {
                          const auto bp = tangle_curve(3).breakpoints();
                          if (bp.size() != 2) return 1.0;
                          return std::max(std::abs(bp[0] - 1.0 / 3.0),
                                          std::abs(bp[1] - 8.0 / 9.0));
                      });
    detail::run_check(report, "tangle(F=1, d=3) == 4/3", 1e-12, [] {
        return std::abs(tangle_curve(3)(1.0) - 4.0 / 3.0);
    });
    detail::run_check(report, "eof(F=1, d=3) == log2(3)", 1e-12, [] {
        return std::abs(eof_iso_curve(3)(1.0) - std::log2(3.0));
    });
    detail::run_check(
        report, "tangent point/value/slope closed forms, d=3..10", 1e-12,
        [] {
            double dev = 0.0;
            for (int d = 3; d <= 10; ++d) {
                const PiecewiseCurve curve = tangle_curve(d);
                const auto& segs = curve.segments();
                const double ft = tangent_fidelity(d);
                dev = std::max(dev, std::abs(segs[2].f_lo - ft));
                dev = std::max(dev,
                               std::abs(curve(ft) - tangent_value(d)));
                dev = std::max(dev,
                               std::abs(segs[2].slope - tangent_slope(d)));
                dev = std::max(dev, std::abs(curve(1.0) - max_tangle(d)));
            }
            return dev;
        });
    detail::run_check(report, "two-qubit tangle == (2F-1)^2 on [1/2, 1]",
                      1e-10, [] {
                          const PiecewiseCurve curve = tangle_curve(2);
                          double dev = 0.0;
                          for (int k = 50; k <= 100; ++k) {
                              const double f = k / 100.0;
                              const double t = 2.0 * f - 1.0;
                              dev = std::max(dev,
                                             std::abs(curve(f) - t * t));
                          }
                          return dev;
                      });
    detail::run_check(report, "two-qubit d2C2/dF2 == 8 on (1/2, 1)", 1e-12,
                      [] {
                          double dev = 0.0;
                          for (int k = 51; k < 100; ++k)
                              dev = std::max(
                                  dev,
                                  std::abs(csquared_d2F(k / 100.0, 2) - 8.0));
                          return dev;
                      });
    detail::run_check(report, "dC2/dF >= 0 on [1/d, 1], d=2..16", 1e-12, [] {
        double worst = 0.0;
        for (int d = 2; d <= 16; ++d) {
            const double lo = 1.0 / d;
            for (int k = 0; k <= 1000; ++k) {
                const double f = lo + (1.0 - lo) * k / 1000.0;
                worst = std::max(worst, -csquared_dF(f, d));
            }
        }
        return worst;
    });
    detail::run_check(
        report, "single sign change of d2C2/dF2, d=3..10", 0.5, [] {
            int bad = 0;
            for (int d = 3; d <= 10; ++d) {
                int changes = 0;
                double prev = 0.0;
                bool have_prev = false;
                const double wmax = std::sqrt(d - 1.0);
                for (int k = 1; k < 1000; ++k) {
                    const double w = wmax * k / 1000.0;
                    const double v = detail::csquared_d2F_at_w(d, w);
                    if (have_prev && prev * v < 0.0) ++changes;
                    prev = v;
                    have_prev = true;
                }
                if (changes != 1) ++bad;
            }
            return static_cast<double>(bad);
        });
    detail::run_check(report, "asymptotic tangle |tau - 2F| at d=10^4", 2e-3,
                      [] {
                          const PiecewiseCurve curve = tangle_curve(10000);
                          double dev = 0.0;
                          for (int k = 0; k <= 1000; ++k) {
                              const double f = k / 1000.0;
                              dev = std::max(dev,
                                             std::abs(curve(f) - 2.0 * f));
                          }
                          return dev;
                      });
    detail::run_check(
        report, "asymptotic concurrence |C - sqrt(2) F| at d=10^4", 1e-3,
        [] {
            const PiecewiseCurve curve = concurrence_curve(10000);
            double dev = 0.0;
            for (int k = 10; k <= 1000; ++k) {
                const double f = k / 1000.0;
                dev = std::max(dev,
                               std::abs(curve(f) - std::sqrt(2.0) * f));
            }
            return dev;
        });
    return report;
}

inline VerifyReport verify_oracle(std::uint64_t seed) {
    VerifyReport report;
    detail::run_check(
        report, "constrained minimization matches C2(F), d=2..6", 1e-6,
        [seed] {
            double dev = 0.0;
            std::uint64_t run = 0;
            for (int d = 2; d <= 6; ++d) {
                for (double f = 1.0 / d; f <= 1.0 + 1e-9; f += 0.05) {
                    const double ff = std::min(f, 1.0);
                    const ConstrainedMinResult r =
                        min_tangle_at_F(d, ff, 32, seed + 7919 * run++);
                    dev = std::max(dev,
                                   std::abs(r.minimum - csquared(ff, d)));
                }
            }
            return dev;
        });
    detail::run_check(
        report, "vertex branch (1, d-1) is the branch minimum, d=2..6",
        1e-12, [] {
            double dev = 0.0;
            for (int d = 2; d <= 6; ++d) {
                for (int k = 0; k <= 100; ++k) {
                    const double f =
                        1.0 / d + (1.0 - 1.0 / d) * k / 100.0;
                    dev = std::max(dev, std::abs(csquared(f, d) -
                                                 detail::min_over_branches(
                                                     d, f)));
                }
            }
            return dev;
        });
    detail::run_check(
        report, "envelope of C2 samples reproduces the tangle curve, d=3..6",
        1e-4, [] {
            double dev = 0.0;
            for (int d = 3; d <= 6; ++d) {
                const auto pts = detail::sample_closed_unit(
                    1.0 / d, 1e-3,
                    [d](double f) { return csquared(f, d); });
                const PiecewiseCurve env = convex_envelope(pts);
                const PiecewiseCurve hull = tangle_curve(d);
                for (std::size_t k = 0; k < pts.size(); ++k)
                    dev = std::max(dev, std::abs(env(pts[k].first) -
                                                 hull(pts[k].first)));
            }
            return dev;
        });
    detail::run_check(
        report,
        "envelope of C(F) samples reproduces the concurrence line, d=3..6",
        1e-4, [] {
            double dev = 0.0;
            for (int d = 3; d <= 6; ++d) {
                const auto pts =
                    detail::sample_closed_unit(1.0 / d, 1e-3, [d](double f) {
                        return std::sqrt(std::max(0.0, csquared(f, d)));
                    });
                const PiecewiseCurve env = convex_envelope(pts);
                const PiecewiseCurve line = concurrence_curve(d);
                for (std::size_t k = 0; k < pts.size(); ++k)
                    dev = std::max(dev, std::abs(env(pts[k].first) -
                                                 line(pts[k].first)));
            }
            return dev;
        });
    detail::run_check(report, "detected envelope breakpoint near 8/9, d=3",
                      2e-3, [] {
                          const auto pts = detail::sample_closed_unit(
                              1.0 / 3.0, 1e-3,
                              [](double f) { return csquared(f, 3); });
                          const PiecewiseCurve env = convex_envelope(pts);
                          // Last interior joint marks the start of the
                          // straight stretch into (1, 4/3).
                          const auto bp = env.breakpoints();
                          if (bp.empty()) return 1.0;
                          return std::abs(bp.back() - 8.0 / 9.0);
                      });
    return report;
}

inline VerifyReport verify_roof(std::uint64_t seed) {
    VerifyReport report;
    detail::run_check(
        report, "ensemble tangle bound matches (2F-1)^2, d=2, M=8", 1e-3,
        [seed] {
            double dev = 0.0;
            int k = 0;
            for (double f : {0.6, 0.75, 0.9}) {
                const double bound = roof_upper_bound(
                    isotropic(2, f), Measure::Tangle, 8, 8, seed + 131 * k++);
                const double expected = (2.0 * f - 1.0) * (2.0 * f - 1.0);
                dev = std::max(dev, std::abs(bound - expected));
            }
            return dev;
        });
    detail::run_check(
        report, "ensemble concurrence bound matches 2F-1, d=2, M=8", 1e-3,
        [seed] {
            double dev = 0.0;
            int k = 0;
            for (double f : {0.6, 0.75, 0.9}) {
                const double bound =
                    roof_upper_bound(isotropic(2, f), Measure::Concurrence, 8,
                                     8, seed + 977 * k++);
                dev = std::max(dev, std::abs(bound - (2.0 * f - 1.0)));
            }
            return dev;
        });
    detail::run_check(report, "separable isotropic(2, 0.4) bound vanishes",
                      1e-6, [seed] {
                          return roof_upper_bound(isotropic(2, 0.4),
                                                  Measure::Tangle, 8, 8,
                                                  seed + 4243);
                      });
    detail::run_check(
        report, "wootters concurrence matches the d=2 curve", 1e-10, [] {
            const PiecewiseCurve curve = concurrence_curve(2);
            double dev = 0.0;
            for (int k = 0; k <= 100; ++k) {
                const double f = k / 100.0;
                dev = std::max(dev, std::abs(wootters_concurrence(
                                                 isotropic(2, f)) -
                                             curve(f)));
            }
            return dev;
        });
    return report;
}

inline VerifyReport verify_all(std::uint64_t seed) {
    VerifyReport all = verify_closed_form();
    for (VerifyReport part : {verify_oracle(seed), verify_roof(seed)})
        for (VerifyCheck& c : part.checks) all.checks.push_back(std::move(c));
    return all;
}

inline std::string format_report(const VerifyReport& report) {
    std::string out;
    std::size_t width = 4;
    for (const VerifyCheck& c : report.checks)
        width = std::max(width, c.name.size());
    char line[256];
    std::snprintf(line, sizeof(line), "%-*s  %-6s  %-12s  %-12s  %s\n",
                  static_cast<int>(width), "check", "status", "deviation",
                  "tolerance", "time");
    out += line;
    for (const VerifyCheck& c : report.checks) {
        std::snprintf(line, sizeof(line),
                      "%-*s  %-6s  %-12.3e  %-12.3e  %.2fs\n",
                      static_cast<int>(width), c.name.c_str(),
                      c.passed ? "pass" : "FAIL", c.deviation, c.tolerance,
                      c.seconds);
        out += line;
    }
    out += report.all_passed() ? "overall: pass\n" : "overall: FAIL\n";
    return out;
}

}  // namespace isoent
