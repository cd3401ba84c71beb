#pragma once

#include <limits>

#include "lsdg/params.hpp"
#include "lsdg/piecewise.hpp"
#include "lsdg/schedule.hpp"
#include "lsdg/trajectory.hpp"

namespace lsdg {

/// Parameter combination (P2/R1)(B/Q)^2 entering the open-loop impulse-regime
/// inequalities; strictly positive since P2 and R1 are both negative.
double delta(const GameParameters& p);

/// Impulse regimes of the endogenous open-loop equilibrium. Cases a-d are the
/// four sign patterns of (A, q1) with the double inequality on A s2 + w2;
/// a0_no_impulse covers A = 0, where no interior impulse can occur.
enum class OlneCase { a0_no_impulse, case_a, case_b, case_c, case_d, none };

const char* to_string(OlneCase c);

/// Classification result with signed distances to the regime boundaries
/// (positive margins mean the double inequality holds strictly).
struct OlneRegime {
    OlneCase label = OlneCase::none;
    double margin_lower = std::numeric_limits<double>::quiet_NaN();
    double margin_upper = std::numeric_limits<double>::quiet_NaN();
    double drift_combo = std::numeric_limits<double>::quiet_NaN();  ///< A s2 + w2
    double delta_value = std::numeric_limits<double>::quiet_NaN();

    bool admits_impulse() const {
        return label != OlneCase::a0_no_impulse && label != OlneCase::none;
    }
};

/// Evaluates the four double inequalities with strict comparisons. A = 0 maps
/// to a0_no_impulse; q1 = 0 or no case holding maps to none. Throws
/// BoundaryDegenerate when a margin sits within 1e-10 (relative) of zero,
/// i.e. the impulse instant would touch 0 or T.
OlneRegime classify_olne_regime(const GameParameters& p);

/// Open-loop equilibrium with endogenous timing: at most one impulse.
struct OlneSolution {
    int k = 0;
    ImpulseSchedule schedule;
    PiecewiseCoefficient u;
    double lambda2_at_tau = std::numeric_limits<double>::quiet_NaN();
    PayoffPair payoffs;
    OlneRegime regime;
};

/// If a regime case holds: tau = T - ln(delta q1 / (A s2 + w2)) / A with level
/// v = Q w2 / (P2 A) - B^2 q1 / (A Q R1), and the player-1 control carries the
/// q1 e^{A(tau - t)} correction before tau. Otherwise the impulse-free
/// solution with k = 0. The level is cross-checked against -Q lambda2(tau)/P2.
OlneSolution solve_endogenous_olne(const GameParameters& p);

/// Residual of player 2's Hamiltonian continuity condition at tau:
///   -((w2 + A lambda2(tau)) Q^2 / P2 - B^2 q1 / R1) lambda2(tau).
/// Zero at equilibrium impulse instants.
double hamiltonian_continuity_residual(const GameParameters& p, double tau);

}  // namespace lsdg
