#include "lsdg/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace lsdg {

double ExponentialSegment::value(double t) const {
    const double d = anchor - t;
    double v = anchor_value + d * (slope + d * (quad + d * (cub + d * (quart + d * quint))));
    if (amp != 0.0) v += amp * std::expm1(rate * d);
    if (amp2 != 0.0) v += amp2 * std::expm1(rate2 * d);
    return v;
}

double ExponentialSegment::derivative(double t) const {
    const double d = anchor - t;
    // d/dt = -d/dd
    double g =
        slope + d * (2.0 * quad + d * (3.0 * cub + d * (4.0 * quart + d * 5.0 * quint)));
    if (amp != 0.0) g += amp * rate * std::exp(rate * d);
    if (amp2 != 0.0) g += amp2 * rate2 * std::exp(rate2 * d);
    return -g;
}

ExponentialSegment ExponentialSegment::reanchored(double new_anchor) const {
    const double d = anchor - new_anchor;  // old offset of the new anchor
    ExponentialSegment s = *this;
    s.anchor = new_anchor;
    s.anchor_value = value(new_anchor);
    s.amp = amp * std::exp(rate * d);
    s.amp2 = amp2 * std::exp(rate2 * d);
    // binomial re-expansion of the polynomial part around the new anchor
    s.slope = slope + d * (2.0 * quad + d * (3.0 * cub + d * (4.0 * quart + d * 5.0 * quint)));
    s.quad = quad + d * (3.0 * cub + d * (6.0 * quart + d * 10.0 * quint));
    s.cub = cub + d * (4.0 * quart + d * 10.0 * quint);
    s.quart = quart + d * 5.0 * quint;
    s.quint = quint;
    return s;
}

ExponentialSegment ExponentialSegment::scaled(double factor) const {
    ExponentialSegment s = *this;
    s.anchor_value *= factor;
    s.amp *= factor;
    s.amp2 *= factor;
    s.slope *= factor;
    s.quad *= factor;
    s.cub *= factor;
    s.quart *= factor;
    s.quint *= factor;
    return s;
}

PiecewiseCoefficient::PiecewiseCoefficient(std::vector<ExponentialSegment> segments,
                                           std::vector<CoefficientJump> jumps)
    : segments_(std::move(segments)), jumps_(std::move(jumps)) {
    if (segments_.empty()) throw std::invalid_argument("piecewise coefficient needs segments");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (!(segments_[i].t_start < segments_[i].t_end)) {
            throw std::invalid_argument("segment has non-positive length");
        }
        if (i > 0 && segments_[i].t_start != segments_[i - 1].t_end) {
            throw std::invalid_argument("segments do not tile the interval");
        }
    }
    for (const auto& j : jumps_) {
        const bool on_boundary =
            std::any_of(segments_.begin(), segments_.end(),
                        [&](const ExponentialSegment& s) { return s.t_start == j.instant; });
        if (!on_boundary) {
            throw std::invalid_argument("jump at " + std::to_string(j.instant) +
                                        " is not on a segment boundary");
        }
    }
}

double PiecewiseCoefficient::t_begin() const { return segments_.front().t_start; }
double PiecewiseCoefficient::t_end() const { return segments_.back().t_end; }

std::size_t PiecewiseCoefficient::segment_index(double t, Side side) const {
    // Side::left wants the segment with t_start < t <= t_end,
    // Side::right wants t_start <= t < t_end; clamp at the extremes.
    std::size_t lo = 0;
    std::size_t hi = segments_.size();
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (segments_[mid].t_start < t) {
            lo = mid;
        } else if (segments_[mid].t_start == t && side == Side::right) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

double PiecewiseCoefficient::value(double t, Side side) const {
    return segments_[segment_index(t, side)].value(t);
}

double PiecewiseCoefficient::derivative(double t, Side side) const {
    return segments_[segment_index(t, side)].derivative(t);
}

std::vector<double> PiecewiseCoefficient::breakpoints() const {
    std::vector<double> out;
    for (std::size_t i = 1; i < segments_.size(); ++i) out.push_back(segments_[i].t_start);
    return out;
}

PiecewiseCoefficient PiecewiseCoefficient::scaled(double factor) const {
    std::vector<ExponentialSegment> segs;
    segs.reserve(segments_.size());
    for (const auto& s : segments_) segs.push_back(s.scaled(factor));
    std::vector<CoefficientJump> jumps;
    jumps.reserve(jumps_.size());
    for (const auto& j : jumps_) {
        jumps.push_back({j.instant, j.left_value * factor, j.right_value * factor});
    }
    return PiecewiseCoefficient(std::move(segs), std::move(jumps));
}

PiecewiseCoefficient PiecewiseCoefficient::shifted_on(double t0, double t1, double delta) const {
    if (!(t0 < t1)) throw std::invalid_argument("shifted_on needs t0 < t1");
    std::vector<ExponentialSegment> segs;
    for (const auto& s : segments_) {
        // split at t0/t1 where they fall strictly inside the segment
        std::vector<double> cuts = {s.t_start, s.t_end};
        for (double c : {t0, t1}) {
            if (c > s.t_start && c < s.t_end) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            ExponentialSegment piece = s;
            piece.t_start = cuts[i];
            piece.t_end = cuts[i + 1];
            if (piece.t_start >= t0 && piece.t_end <= t1) piece.anchor_value += delta;
            segs.push_back(piece);
        }
    }
    std::vector<CoefficientJump> jumps = jumps_;
    if (delta != 0.0) {
        for (double c : {t0, t1}) {
            if (c <= t_begin() || c >= t_end()) continue;
            const double before = value(c, Side::left) + (c == t1 ? delta : 0.0);
            const double after = value(c, Side::right) + (c == t0 ? delta : 0.0);
            jumps.push_back({c, before, after});
        }
        std::sort(jumps.begin(), jumps.end(),
                  [](const CoefficientJump& a, const CoefficientJump& b) {
                      return a.instant < b.instant;
                  });
    }
    return PiecewiseCoefficient(std::move(segs), std::move(jumps));
}

}  // namespace lsdg
