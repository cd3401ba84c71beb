#include "lsdg/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsdg/errors.hpp"

namespace lsdg {

namespace {

void check_instants(std::span<const double> instants, double horizon) {
    double previous = -1.0;
    for (double t : instants) {
        if (!(t > 0.0 && t < horizon)) {
            throw std::invalid_argument("impulse instant " + std::to_string(t) +
                                        " is not interior to (0, " + std::to_string(horizon) + ")");
        }
        if (!(t > previous)) {
            throw std::invalid_argument("impulse instants must be strictly increasing");
        }
        previous = t;
    }
}

// Backward solution of y' = -A y - w with y(horizon) = terminal and the jump
// y(tau-) = y(tau+) + jump_size at each instant.
PiecewiseCoefficient solve_terminal_family(double A, bool zero_drift, double w, double terminal,
                                           double jump_size, std::span<const double> instants,
                                           double horizon) {
    std::vector<ExponentialSegment> segments;
    std::vector<CoefficientJump> jumps;
    double anchor = horizon;
    double anchor_value = terminal;
    for (int i = static_cast<int>(instants.size()); i >= 0; --i) {
        ExponentialSegment s;
        s.t_start = (i == 0) ? 0.0 : instants[i - 1];
        s.t_end = anchor;
        s.anchor = anchor;
        s.anchor_value = anchor_value;
        if (zero_drift) {
            s.slope = w;
        } else {
            s.amp = anchor_value + w / A;  // anchor_value - (-w/A)
            s.rate = A;
        }
        segments.push_back(s);
        if (i > 0) {
            const double tau = s.t_start;
            const double right = s.value(tau);
            const double left = right + jump_size;
            jumps.push_back({tau, left, right});
            anchor = tau;
            anchor_value = left;
        }
    }
    std::reverse(segments.begin(), segments.end());
    std::reverse(jumps.begin(), jumps.end());
    return PiecewiseCoefficient(std::move(segments), std::move(jumps));
}

// Below this |A| * segment-length, the offset integrands are integrated via
// ODE-derivative Taylor coefficients instead of the e^{A sigma}/e^{2A sigma}
// closed form, whose coefficients carry w/A-scale cancellations.
constexpr double kOffsetSeriesThreshold = 0.02;

struct OffsetCoefficients {
    double slope = 0.0, quad = 0.0, cub = 0.0, quart = 0.0, quint = 0.0;
    double amp = 0.0, amp2 = 0.0;
};

// Coefficients of beta(t) = beta_end - int_0^sigma f a(s) b(s) ds for one
// segment, where a and b solve a' = A a + w (in sigma = t_end - t) and are
// given re-anchored at the segment end.
OffsetCoefficients integrate_product(double A, bool zero_drift, double f,
                                     const ExponentialSegment& a, double wa,
                                     const ExponentialSegment& b, double wb, double length) {
    OffsetCoefficients out;
    if (zero_drift) {
        // affine factors: (a0 + wa s)(b0 + wb s)
        const double c0 = f * a.anchor_value * b.anchor_value;
        const double c1 = f * (a.anchor_value * wb + wa * b.anchor_value);
        const double c2 = f * wa * wb;
        out.slope = -c0;
        out.quad = -c1 / 2.0;
        out.cub = -c2 / 3.0;
        return out;
    }
    if (std::abs(A) * length < kOffsetSeriesThreshold) {
        // Taylor in sigma from the ODEs: all coefficients are O(1) products of
        // segment values, free of w/A pieces.
        const double av = a.anchor_value;
        const double bv = b.anchor_value;
        const double ua = A * av + wa;
        const double ub = A * bv + wb;
        const double g0 = av * bv;
        const double g1 = ua * bv + av * ub;
        const double g2 = A * ua * bv + 2.0 * ua * ub + A * av * ub;
        const double g3 = A * A * ua * bv + 6.0 * A * ua * ub + A * A * av * ub;
        const double g4 = A * A * A * ua * bv + 14.0 * A * A * ua * ub + A * A * A * av * ub;
        out.slope = -f * g0;
        out.quad = -f * g1 / 2.0;
        out.cub = -f * g2 / 6.0;
        out.quart = -f * g3 / 24.0;
        out.quint = -f * g4 / 120.0;
        return out;
    }
    // exponential closed form: the product is c0 + c1 e^{A sigma} + c2 e^{2A sigma}
    const double c0 = f * a.base() * b.base();
    const double c1 = f * (a.base() * b.amp + a.amp * b.base());
    const double c2 = f * a.amp * b.amp;
    out.slope = -c0;
    out.amp = -c1 / A;
    out.amp2 = -c2 / (2.0 * A);
    return out;
}

}  // namespace

PiecewiseCoefficient solve_lambda2(const GameParameters& p) {
    validate_params(p);
    return solve_terminal_family(p.A, drift_is_zero(p), p.w2, p.s2, 0.0, {}, p.T);
}

PiecewiseCoefficient solve_lambda1(const GameParameters& p, std::span<const double> instants) {
    validate_params(p);
    check_instants(instants, p.T);
    return solve_terminal_family(p.A, drift_is_zero(p), p.w1, p.s1, p.q1, instants, p.T);
}

PiecewiseCoefficient solve_alpha1(const GameParameters& p, std::span<const double> instants) {
    return solve_lambda1(p, instants);
}

PiecewiseCoefficient solve_m1(const GameParameters& p, std::span<const double> instants) {
    return solve_lambda1(p, instants);
}

PiecewiseCoefficient solve_alpha2(const GameParameters& p) { return solve_lambda2(p); }

PiecewiseCoefficient solve_m2(const GameParameters& p) { return solve_lambda2(p); }

OffsetPair solve_offsets(const GameParameters& p, const PiecewiseCoefficient& alpha1,
                         const PiecewiseCoefficient& alpha2, const ImpulseSchedule& sched) {
    validate_params(p);
    if (alpha1.jumps().size() != static_cast<std::size_t>(sched.k())) {
        throw std::invalid_argument("alpha1 jumps do not match the schedule");
    }
    for (int i = 0; i < sched.k(); ++i) {
        if (alpha1.jumps()[i].instant != sched.action(i).instant) {
            throw std::invalid_argument("alpha1 jump instants do not match the schedule");
        }
    }
    if (alpha2.segments().size() != 1) {
        throw std::invalid_argument("alpha2 must be a single segment");
    }

    const bool zero_drift = drift_is_zero(p);
    const double A = p.A;
    std::vector<ExponentialSegment> segs1, segs2;
    std::vector<CoefficientJump> jumps1, jumps2;
    double b1_value = 0.0;  // beta1(T) = 0
    double b2_value = 0.0;  // beta2(T) = 0

    const auto& a1segs = alpha1.segments();
    for (int i = static_cast<int>(a1segs.size()) - 1; i >= 0; --i) {
        const double b = a1segs[i].t_end;
        const double length = b - a1segs[i].t_start;
        const ExponentialSegment a1 = a1segs[i].reanchored(b);
        const ExponentialSegment a2 = alpha2.segments().front().reanchored(b);

        ExponentialSegment s1, s2;
        s1.t_start = s2.t_start = a1segs[i].t_start;
        s1.t_end = s2.t_end = b;
        s1.anchor = s2.anchor = b;
        s1.anchor_value = b1_value;
        s2.anchor_value = b2_value;

        const OffsetCoefficients o1 = integrate_product(
            A, zero_drift, p.B * p.B / (2.0 * p.R1), a1, p.w1, a1, p.w1, length);
        const OffsetCoefficients o2 =
            integrate_product(A, zero_drift, p.B * p.B / p.R1, a1, p.w1, a2, p.w2, length);
        auto apply = [&](ExponentialSegment& s, const OffsetCoefficients& o) {
            s.slope = o.slope;
            s.quad = o.quad;
            s.cub = o.cub;
            s.quart = o.quart;
            s.quint = o.quint;
            s.amp = o.amp;
            s.amp2 = o.amp2;
            if (o.amp != 0.0) s.rate = A;
            if (o.amp2 != 0.0) s.rate2 = 2.0 * A;
        };
        apply(s1, o1);
        apply(s2, o2);

        segs1.push_back(s1);
        segs2.push_back(s2);

        if (i > 0) {
            const double tau = a1segs[i].t_start;
            const double v = sched.action(i - 1).level;
            const double a1_right = alpha1.value(tau, Side::right);
            const double a2_at = alpha2.value(tau);

            const double r1 = s1.value(tau);
            const double l1 = r1 + a1_right * p.Q * v;
            jumps1.push_back({tau, l1, r1});
            b1_value = l1;

            const double r2 = s2.value(tau);
            const double l2 = r2 - a2_at * a2_at * p.Q * p.Q / (2.0 * p.P2) + p.C;
            jumps2.push_back({tau, l2, r2});
            b2_value = l2;
        }
    }

    std::reverse(segs1.begin(), segs1.end());
    std::reverse(segs2.begin(), segs2.end());
    std::reverse(jumps1.begin(), jumps1.end());
    std::reverse(jumps2.begin(), jumps2.end());
    return {PiecewiseCoefficient(std::move(segs1), std::move(jumps1)),
            PiecewiseCoefficient(std::move(segs2), std::move(jumps2))};
}

}  // namespace lsdg
