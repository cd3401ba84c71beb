#include "lsdg/schedule.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace lsdg {

ImpulseSchedule::ImpulseSchedule(std::vector<ImpulseAction> actions, double horizon)
    : actions_(std::move(actions)) {
    double previous = -1.0;
    for (const auto& a : actions_) {
        if (!(a.instant >= 0.0 && a.instant <= horizon)) {
            throw std::invalid_argument("impulse instant " + std::to_string(a.instant) +
                                        " outside [0, " + std::to_string(horizon) + "]");
        }
        if (!(a.instant > previous)) {
            throw std::invalid_argument("impulse instants must be strictly increasing");
        }
        previous = a.instant;
    }
}

std::vector<double> ImpulseSchedule::instants() const {
    std::vector<double> out;
    out.reserve(actions_.size());
    for (const auto& a : actions_) out.push_back(a.instant);
    return out;
}

}  // namespace lsdg
