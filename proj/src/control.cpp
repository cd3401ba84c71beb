#include "lsdg/control.hpp"

namespace lsdg {

Control Control::constant(double value, double horizon) {
    ExponentialSegment s;
    s.t_start = 0.0;
    s.t_end = horizon;
    s.anchor = horizon;
    s.base = value;
    return from_coefficient(PiecewiseCoefficient({s}, {}));
}

}  // namespace lsdg
