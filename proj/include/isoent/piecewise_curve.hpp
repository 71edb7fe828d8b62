// Piecewise curve over the fidelity axis: contiguous segments that are
// identically zero, a closed-form function, or a straight line. Used for
// tangle/concurrence/EoF curves of isotropic states and for convex
// envelopes of sampled data.

#pragma once

#include <isoent/pure_measures.hpp>

#include <functional>
#include <vector>

namespace isoent {

enum class SegmentKind { Zero, ClosedForm, Linear };

struct CurveSegment {
    double f_lo = 0.0;
    double f_hi = 0.0;
    SegmentKind kind = SegmentKind::Zero;
    double slope = 0.0;      // Linear: value = slope * F + intercept
    double intercept = 0.0;
};

class PiecewiseCurve {
  public:
    using Evaluator = std::function<double(double)>;

    PiecewiseCurve(int d, Measure measure, std::vector<CurveSegment> segments,
                   Evaluator closed_form = {})
        : d_(d),
          measure_(measure),
          segments_(std::move(segments)),
          closed_form_(std::move(closed_form)) {
        if (segments_.empty())
            throw std::invalid_argument("PiecewiseCurve: no segments");
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const CurveSegment& s = segments_[i];
            if (!(s.f_lo < s.f_hi))
                throw std::invalid_argument(
                    "PiecewiseCurve: empty or reversed segment");
            if (i > 0 && segments_[i - 1].f_hi != s.f_lo)
                throw std::invalid_argument(
                    "PiecewiseCurve: segments are not contiguous");
            if (s.kind == SegmentKind::ClosedForm && !closed_form_)
                throw std::invalid_argument(
                    "PiecewiseCurve: closed-form segment without evaluator");
        }
    }

    /// Evaluate at F. Segment boundaries resolve to the left segment;
    /// continuity at the joints makes the choice unobservable in practice.
    double operator()(double f) const {
        if (f < segments_.front().f_lo || f > segments_.back().f_hi)
            throw std::domain_error("PiecewiseCurve: F outside curve domain");
        for (const CurveSegment& s : segments_) {
            if (f <= s.f_hi) return evaluate(s, f);
        }
        return evaluate(segments_.back(), f);
    }

    int dim() const { return d_; }
    Measure measure() const { return measure_; }
    const std::vector<CurveSegment>& segments() const { return segments_; }

    double domain_lo() const { return segments_.front().f_lo; }
    double domain_hi() const { return segments_.back().f_hi; }

    /// Interior joints between segments.
    std::vector<double> breakpoints() const {
        std::vector<double> out;
        for (std::size_t i = 1; i < segments_.size(); ++i)
            out.push_back(segments_[i].f_lo);
        return out;
    }

  private:
    double evaluate(const CurveSegment& s, double f) const {
        switch (s.kind) {
            case SegmentKind::Zero: return 0.0;
            case SegmentKind::Linear: return s.slope * f + s.intercept;
            case SegmentKind::ClosedForm: return closed_form_(f);
        }
        return 0.0;
    }

    int d_;
    Measure measure_;
    std::vector<CurveSegment> segments_;
    Evaluator closed_form_;
};

}  // namespace isoent
