#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lsdg/params.hpp"
#include "lsdg/piecewise.hpp"
#include "lsdg/schedule.hpp"
#include "lsdg/trajectory.hpp"

namespace lsdg {

/// Stopping threshold gamma = sqrt(2 P2 C / Q^2) on the value-function slope
/// alpha2; strictly positive since P2 C > 0.
double gamma(const GameParameters& p);

/// Candidate impulse instants: tau1 solves alpha2(t) = +gamma, tau2 solves
/// alpha2(t) = -gamma. A candidate is present only when its formula is
/// well defined and the instant is strictly interior to (0, T).
struct FneCandidates {
    std::optional<double> tau1;
    std::optional<double> tau2;
};

/// Throws BoundaryDegenerate when a candidate falls within 1e-10 of 0 or T,
/// or when alpha2 is constant at distance within tolerance of +-gamma.
FneCandidates fne_candidate_times(const GameParameters& p);

/// Impulse levels at the candidates, from the intervention-operator maximizer
/// v = -Q alpha2(t) / P2: level1 = -Q gamma / P2, level2 = +Q gamma / P2.
struct FneLevels {
    std::optional<double> level1;
    std::optional<double> level2;
};

FneLevels fne_impulse_levels(const GameParameters& p, const FneCandidates& candidates);

enum class FneImpulseCase { none, tau1_only, tau2_only, two_impulses };

const char* to_string(FneImpulseCase c);

/// One strict inequality of the regime system; value > 0 means it holds.
struct InequalityMargin {
    std::string name;
    double value = 0.0;
};

/// Feedback impulse regime: count, which candidates are interior, their order,
/// and the margins of the inequality system that decides it. The inequality
/// route is cross-checked against direct interiority of the candidate times.
struct FneRegime {
    int count = 0;
    bool tau1_interior = false;
    bool tau2_interior = false;
    bool tau1_first = true;  ///< tau1 before tau2 (sign of w2 + A s2, or w2 when A = 0)
    FneImpulseCase label = FneImpulseCase::none;
    std::string case_label;
    std::vector<InequalityMargin> margins;
};

/// Throws BoundaryDegenerate near regime boundaries and
/// InconsistentClassification if the two classification routes disagree.
FneRegime classify_fne_regime(const GameParameters& p);

/// Feedback equilibrium with endogenous timing: at most two impulses.
struct FneSolution {
    int k = 0;
    ImpulseSchedule schedule;  ///< instants sorted ascending
    PiecewiseCoefficient u;
    PiecewiseCoefficient alpha1, beta1;  ///< V1(t,x) = alpha1 x + beta1
    PiecewiseCoefficient alpha2, beta2;  ///< V2(t,x) = alpha2 x + beta2
    PayoffPair payoffs;
    FneRegime regime;
    double gamma_value = std::numeric_limits<double>::quiet_NaN();
};

FneSolution solve_endogenous_fne(const GameParameters& p);

/// V2(t, x) = alpha2(t) x + beta2(t) (left values at jump instants).
double evaluate_value2(const GameParameters& p, const FneSolution& sol, double t, double x);

/// Intervention operator R V2(t,x) = max_v { P2 v^2/2 + C + V2(t, x + Q v) }
/// evaluated in closed form: C - Q^2 alpha2(t)^2 / (2 P2) + V2(t, x).
double apply_R_operator(const GameParameters& p, const FneSolution& sol, double t, double x);

}  // namespace lsdg
