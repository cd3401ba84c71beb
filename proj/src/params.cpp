#include "lsdg/params.hpp"

#include <cmath>

#include "lsdg/errors.hpp"

namespace lsdg {

GameParameters validate_params(const GameParameters& p) {
    const struct {
        const char* name;
        double value;
    } fields[] = {{"A", p.A},   {"B", p.B},   {"Q", p.Q},   {"w1", p.w1}, {"R1", p.R1},
                  {"q1", p.q1}, {"s1", p.s1}, {"w2", p.w2}, {"P2", p.P2}, {"C", p.C},
                  {"s2", p.s2}, {"T", p.T},   {"x0", p.x0}};
    for (const auto& f : fields) {
        if (!std::isfinite(f.value)) throw SignViolation(f.name);
    }
    if (!(p.R1 < 0.0)) throw SignViolation("R1");
    if (!(p.P2 < 0.0)) throw SignViolation("P2");
    if (!(p.C < 0.0)) throw SignViolation("C");
    if (!(p.T > 0.0)) throw SignViolation("T");
    if (p.B == 0.0) throw ZeroCoefficient("B");
    if (p.Q == 0.0) throw ZeroCoefficient("Q");
    return p;
}

}  // namespace lsdg
