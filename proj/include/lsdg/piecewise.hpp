#pragma once

#include <cstddef>
#include <vector>

namespace lsdg {

/// Which one-sided limit to take at a discontinuity.
enum class Side { left, right };

/// One smooth piece of a piecewise coefficient, expressed around a reference
/// time `anchor` (normally the right end of the piece). With d = anchor - t:
///
///   value(t) = anchor_value + amp (e^{rate d} - 1) + amp2 (e^{rate2 d} - 1)
///              + slope d + quad d^2 + cub d^3 + quart d^4 + quint d^5
///
/// which equals base + amp e^{rate d} + amp2 e^{rate2 d} + polynomial with
/// base = anchor_value - amp - amp2. Storing the anchor value keeps terminal
/// and jump conditions exact and the evaluation stable as rate -> 0.
///
/// Costate/value-slope pieces use only (anchor_value, amp, rate), or the
/// affine fallback (anchor_value, slope) under zero drift. Integrated offsets
/// also use the second exponential (rate2 = 2A) or, for small |A| segments,
/// the higher polynomial terms.
struct ExponentialSegment {
    double t_start = 0.0;
    double t_end = 0.0;
    double anchor = 0.0;
    double anchor_value = 0.0;
    double amp = 0.0;
    double rate = 0.0;
    double amp2 = 0.0;
    double rate2 = 0.0;
    double slope = 0.0;
    double quad = 0.0;
    double cub = 0.0;
    double quart = 0.0;
    double quint = 0.0;

    /// Constant term of the expanded form.
    double base() const { return anchor_value - amp - amp2; }

    double value(double t) const;
    double derivative(double t) const;

    /// Same function re-expressed around a new reference time.
    ExponentialSegment reanchored(double new_anchor) const;

    /// The function multiplied by a constant.
    ExponentialSegment scaled(double factor) const;
};

/// Left/right values astride a discontinuity.
struct CoefficientJump {
    double instant = 0.0;
    double left_value = 0.0;
    double right_value = 0.0;
};

/// A scalar function of time on [t_begin, t_end] built from contiguous
/// exponential-affine segments separated by jump instants.
///
/// Each segment's formula extends continuously to its own right end, so
/// evaluating the segment ending at a jump instant yields the left limit and
/// the segment starting there yields the right limit. Evaluation at a jump
/// instant returns the left limit unless the right side is requested.
class PiecewiseCoefficient {
public:
    PiecewiseCoefficient() = default;

    /// Segments must tile an interval without gaps; jumps must sit on interior
    /// segment boundaries. Throws std::invalid_argument on malformed input.
    PiecewiseCoefficient(std::vector<ExponentialSegment> segments,
                         std::vector<CoefficientJump> jumps);

    double t_begin() const;
    double t_end() const;

    double value(double t, Side side = Side::left) const;
    double operator()(double t) const { return value(t, Side::left); }
    double derivative(double t, Side side = Side::left) const;

    const std::vector<ExponentialSegment>& segments() const { return segments_; }
    const std::vector<CoefficientJump>& jumps() const { return jumps_; }

    /// Interior segment boundaries (jump instants and smooth joins).
    std::vector<double> breakpoints() const;

    /// The whole function multiplied by a constant (jumps included).
    PiecewiseCoefficient scaled(double factor) const;

    /// Adds a constant on [t0, t1], splitting segments at the endpoints.
    /// Introduces jump records at t0 and t1 when delta != 0.
    PiecewiseCoefficient shifted_on(double t0, double t1, double delta) const;

private:
    std::size_t segment_index(double t, Side side) const;

    std::vector<ExponentialSegment> segments_;
    std::vector<CoefficientJump> jumps_;
};

}  // namespace lsdg
