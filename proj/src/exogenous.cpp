#include "lsdg/exogenous.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsdg/errors.hpp"

namespace lsdg {

namespace {

void check_exogenous_instants(std::span<const double> instants, double horizon) {
    double previous = -1.0;
    for (double t : instants) {
        if (!(t > 0.0 && t < horizon)) {
            throw std::invalid_argument("exogenous instants must be interior to (0, T)");
        }
        if (!(t > previous)) {
            throw std::invalid_argument("exogenous instants must be strictly increasing");
        }
        previous = t;
    }
}

ExogenousSolution solve_exogenous(const GameParameters& p, std::span<const double> instants,
                                  EquilibriumKind kind) {
    validate_params(p);
    check_exogenous_instants(instants, p.T);

    ExogenousSolution sol;
    sol.kind = kind;
    sol.coeff1 = solve_lambda1(p, instants);
    sol.coeff2 = solve_lambda2(p);

    std::vector<ImpulseAction> actions;
    actions.reserve(instants.size());
    for (double tau : instants) {
        actions.push_back({tau, -p.Q * sol.coeff2.value(tau) / p.P2});
    }
    sol.schedule = ImpulseSchedule(std::move(actions), p.T);

    sol.u = sol.coeff1.scaled(-p.B / p.R1);
    if (kind == EquilibriumKind::feedback) {
        OffsetPair offsets = solve_offsets(p, sol.coeff1, sol.coeff2, sol.schedule);
        sol.offset1 = std::move(offsets.beta1);
        sol.offset2 = std::move(offsets.beta2);
    }

    const Control u = Control::from_coefficient(sol.u);
    const Trajectory traj = simulate_trajectory(p, u, sol.schedule);
    sol.payoffs = evaluate_payoffs(p, traj, u, sol.schedule);
    return sol;
}

}  // namespace

ExogenousSolution solve_exogenous_olne(const GameParameters& p, std::span<const double> instants) {
    return solve_exogenous(p, instants, EquilibriumKind::open_loop);
}

ExogenousSolution solve_exogenous_fne(const GameParameters& p, std::span<const double> instants) {
    return solve_exogenous(p, instants, EquilibriumKind::feedback);
}

CoincidenceReport check_coincidence(const GameParameters& p, std::span<const double> instants) {
    const ExogenousSolution ol = solve_exogenous_olne(p, instants);
    const ExogenousSolution fb = solve_exogenous_fne(p, instants);

    CoincidenceReport report;
    const int samples_per_segment = 128;
    for (std::size_t i = 0; i < ol.u.segments().size(); ++i) {
        const auto& seg = ol.u.segments()[i];
        for (int j = 0; j <= samples_per_segment; ++j) {
            const double t = seg.t_start + (seg.t_end - seg.t_start) * j / samples_per_segment;
            const Side side = (j == 0) ? Side::right : Side::left;
            const double d = std::abs(ol.u.value(t, side) - fb.u.value(t, side));
            report.max_control_deviation = std::max(report.max_control_deviation, d);
        }
    }
    for (int i = 0; i < ol.schedule.k(); ++i) {
        const double d = std::abs(ol.schedule.action(i).level - fb.schedule.action(i).level);
        report.max_level_deviation = std::max(report.max_level_deviation, d);
    }
    report.max_deviation = std::max(report.max_control_deviation, report.max_level_deviation);
    return report;
}

}  // namespace lsdg
