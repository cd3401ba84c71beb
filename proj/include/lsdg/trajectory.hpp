#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lsdg/control.hpp"
#include "lsdg/params.hpp"
#include "lsdg/schedule.hpp"

namespace lsdg {

/// Tag for each trajectory sample: a plain grid point, or one of the two
/// one-sided limits recorded at an impulse instant.
enum class SampleSide { interior, left, right };

/// Simulated state path on a time grid. Every impulse instant contributes two
/// samples (left limit, then right limit); quadrature never crosses them.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<SampleSide> side;

    /// Inclusive sample-index ranges of maximal smooth spans. Spans are split
    /// at impulse instants and at control segment boundaries, and carry a
    /// uniform time step internally.
    std::vector<std::pair<std::size_t, std::size_t>> spans;

    /// Sample index of the left limit of each impulse, in schedule order.
    std::vector<std::size_t> jump_left_index;

    double final_state() const { return x.back(); }
};

/// Both players' total payoffs.
struct PayoffPair {
    double J1 = 0.0;
    double J2 = 0.0;
};

/// Integrates xdot = A x + B u(t) between impulses and applies
/// x(tau+) = x(tau-) + Q v at each impulse. Exponential-affine controls are
/// propagated exactly (variation of constants per step); generic callables use
/// a fixed-step classic RK4 with n_steps per span.
/// Throws NonFiniteState if the state overflows.
Trajectory simulate_trajectory(const GameParameters& p, const Control& u,
                               const ImpulseSchedule& sched, int n_steps = 1000);

/// Evaluates
///   J1 = int (w1 x + R1 u^2 / 2) dt + sum q1 x(tau-) + s1 x(T)
///   J2 = int w2 x dt + sum (C + P2 v^2 / 2) + s2 x(T)
/// by composite Simpson on the trajectory grid, span by span (never across a
/// jump). Throws GridTooCoarse if any span has fewer than 3 samples.
PayoffPair evaluate_payoffs(const GameParameters& p, const Trajectory& traj,
                            const Control& u, const ImpulseSchedule& sched);

}  // namespace lsdg
