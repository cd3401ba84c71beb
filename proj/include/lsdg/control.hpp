#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "lsdg/piecewise.hpp"

namespace lsdg {

/// Player-1 control u(t) on [0, T].
///
/// Two flavors: exponential-affine segments (the equilibrium case, propagated
/// exactly by the simulator) or an arbitrary callable (integrated with RK4).
class Control {
public:
    static Control from_coefficient(PiecewiseCoefficient pc) {
        Control c;
        c.coef_ = std::move(pc);
        return c;
    }

    static Control from_function(std::function<double(double)> f) {
        Control c;
        c.fn_ = std::move(f);
        return c;
    }

    static Control zero(double horizon) { return constant(0.0, horizon); }

    static Control constant(double value, double horizon);

    /// True when the control is carried as exponential-affine segments.
    bool is_exponential() const { return coef_.has_value(); }

    double value(double t, Side side = Side::left) const {
        return coef_ ? coef_->value(t, side) : fn_(t);
    }

    /// Requires is_exponential().
    const PiecewiseCoefficient& coefficient() const { return *coef_; }

private:
    Control() = default;

    std::optional<PiecewiseCoefficient> coef_;
    std::function<double(double)> fn_;
};

}  // namespace lsdg
