#pragma once

#include <cstddef>
#include <vector>

namespace lsdg {

/// One impulse: the instant it fires and its level v.
struct ImpulseAction {
    double instant = 0.0;
    double level = 0.0;
};

/// An ordered list of impulses with strictly increasing instants in [0, T].
class ImpulseSchedule {
public:
    ImpulseSchedule() = default;

    /// Validates 0 <= instant <= horizon and strict ordering; throws
    /// std::invalid_argument otherwise (duplicates are rejected).
    ImpulseSchedule(std::vector<ImpulseAction> actions, double horizon);

    int k() const { return static_cast<int>(actions_.size()); }
    bool empty() const { return actions_.empty(); }
    const std::vector<ImpulseAction>& actions() const { return actions_; }
    const ImpulseAction& action(std::size_t i) const { return actions_.at(i); }
    std::vector<double> instants() const;

private:
    std::vector<ImpulseAction> actions_;
};

}  // namespace lsdg
