#pragma once

#include <span>

#include "lsdg/params.hpp"
#include "lsdg/piecewise.hpp"
#include "lsdg/schedule.hpp"

namespace lsdg {

/// Player-2 costate: single segment on [0, T], no jumps, terminal value s2.
/// Closed form -w2/A + (s2 + w2/A) e^{A(T-t)}, or w2 (T-t) + s2 when A = 0.
PiecewiseCoefficient solve_lambda2(const GameParameters& p);

/// Player-1 costate: terminal value s1, backward recursion segment by segment
/// with the jump lambda1(tau-) = lambda1(tau+) + q1 at each given instant.
/// Instants must be strictly increasing and lie inside (0, T).
PiecewiseCoefficient solve_lambda1(const GameParameters& p, std::span<const double> instants);

/// The feedback value-function slopes satisfy the same terminal-value ODEs and
/// jump updates as the costates, so these are aliases of the solvers above.
PiecewiseCoefficient solve_alpha1(const GameParameters& p, std::span<const double> instants);
PiecewiseCoefficient solve_m1(const GameParameters& p, std::span<const double> instants);
PiecewiseCoefficient solve_alpha2(const GameParameters& p);
PiecewiseCoefficient solve_m2(const GameParameters& p);

/// Integrated value-function offsets, solved backward from 0 at T with exact
/// per-segment antiderivatives:
///   beta1' = B^2 alpha1^2 / (2 R1),  jump  beta1(tau-) = beta1(tau+) + alpha1(tau+) Q v
///   beta2' = B^2 alpha1 alpha2 / R1, jump  beta2(tau-) = beta2(tau+) - alpha2(tau)^2 Q^2/(2 P2) + C
struct OffsetPair {
    PiecewiseCoefficient beta1;
    PiecewiseCoefficient beta2;
};

/// alpha1's jump instants must match the schedule. Throws std::invalid_argument
/// when they do not.
OffsetPair solve_offsets(const GameParameters& p, const PiecewiseCoefficient& alpha1,
                         const PiecewiseCoefficient& alpha2, const ImpulseSchedule& sched);

}  // namespace lsdg
