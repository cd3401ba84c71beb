#pragma once

#include <optional>
#include <span>

#include "lsdg/coefficients.hpp"
#include "lsdg/params.hpp"
#include "lsdg/piecewise.hpp"
#include "lsdg/schedule.hpp"
#include "lsdg/trajectory.hpp"

namespace lsdg {

enum class EquilibriumKind { open_loop, feedback };

/// Equilibrium when the impulse instants are externally given.
///
/// For the open-loop solution coeff1/coeff2 are the costates lambda1/lambda2;
/// for the feedback solution they are the value-function slopes m1/m2 and the
/// integrated offsets n1/n2 are filled in as well. An empty instant list is
/// accepted and yields the impulse-free baseline.
struct ExogenousSolution {
    EquilibriumKind kind = EquilibriumKind::open_loop;
    ImpulseSchedule schedule;            ///< given instants, computed levels
    PiecewiseCoefficient u;              ///< player-1 control, -B coeff1 / R1
    PiecewiseCoefficient coeff1;         ///< lambda1 or m1
    PiecewiseCoefficient coeff2;         ///< lambda2 or m2
    std::optional<PiecewiseCoefficient> offset1;  ///< n1 (feedback only)
    std::optional<PiecewiseCoefficient> offset2;  ///< n2 (feedback only)
    PayoffPair payoffs;
};

/// Open-loop equilibrium: u = -B lambda1 / R1, v_i = -Q lambda2(tau_i) / P2.
/// lambda2 is continuous, so its value at tau_i needs no side distinction.
ExogenousSolution solve_exogenous_olne(const GameParameters& p, std::span<const double> instants);

/// Feedback equilibrium: identical formulas with m1, m2 in place of the
/// costates, plus the n1/n2 offsets so that V_i(t, x) = m_i(t) x + n_i(t).
ExogenousSolution solve_exogenous_fne(const GameParameters& p, std::span<const double> instants);

/// Sup-norm agreement between the open-loop and feedback solutions.
struct CoincidenceReport {
    double max_control_deviation = 0.0;
    double max_level_deviation = 0.0;
    double max_deviation = 0.0;
};

CoincidenceReport check_coincidence(const GameParameters& p, std::span<const double> instants);

}  // namespace lsdg
