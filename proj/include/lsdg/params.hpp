#pragma once

namespace lsdg {

/// All scalar constants of the two-player linear-state impulse game.
///
/// Player 1 steers the state continuously through u(t) with gain B; player 2
/// shifts the state by Q*v at each impulse. Sign conventions: R1, P2 and C are
/// strictly negative (concave control cost, concave impulse cost, fixed cost
/// per impulse), T is strictly positive, and B, Q must be nonzero.
struct GameParameters {
    double A = 0.0;    ///< state drift coefficient (1/time)
    double B = 1.0;    ///< player-1 control gain
    double Q = 1.0;    ///< impulse gain
    double w1 = 0.0;   ///< player-1 running state weight
    double R1 = -1.0;  ///< player-1 control cost coefficient, < 0
    double q1 = 0.0;   ///< player-1 lump payoff coefficient at impulse instants
    double s1 = 0.0;   ///< player-1 salvage slope
    double w2 = 0.0;   ///< player-2 running state weight
    double P2 = -1.0;  ///< player-2 quadratic impulse cost coefficient, < 0
    double C = -1.0;   ///< player-2 fixed impulse cost, < 0
    double s2 = 0.0;   ///< player-2 salvage slope
    double T = 1.0;    ///< horizon length, > 0
    double x0 = 0.0;   ///< initial state
};

/// Checks the sign conventions above and returns p unchanged.
/// Throws SignViolation naming the offending field, or ZeroCoefficient for B or Q.
GameParameters validate_params(const GameParameters& p);

/// Drift magnitude below which the A = 0 closed forms are used.
/// The closed forms are continuous in A; thresholding avoids the w/A terms.
inline constexpr double kDriftZeroTolerance = 1e-12;

/// True when the game should be treated as driftless.
inline bool drift_is_zero(const GameParameters& p) {
    return p.A > -kDriftZeroTolerance && p.A < kDriftZeroTolerance;
}

}  // namespace lsdg
