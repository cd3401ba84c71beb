#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsdg/control.hpp"
#include "lsdg/fne.hpp"
#include "lsdg/olne.hpp"
#include "lsdg/params.hpp"
#include "lsdg/schedule.hpp"

namespace lsdg {

/// Resolution of the player-2 best-response grid search.
struct GridSpec {
    int time_points = 200;       ///< interior instants i T / n, i = 1..n-1
    int level_points = 200;      ///< levels -V + 2V j / m, j = 0..m
    double level_bound = 0.0;    ///< V; <= 0 selects 2 max(|optimal level scale|, 1)
    int sim_steps = 64;          ///< integrator steps per span inside the search
    int pair_time_points = 32;   ///< k = 2 search resolution (instants)
    int pair_level_points = 16;  ///< k = 2 search resolution (levels per impulse)
};

/// Result of the exhaustive schedule search against a fixed time control.
struct BestResponse2Result {
    double best_J2 = -std::numeric_limits<double>::infinity();
    ImpulseSchedule best_schedule;
    int best_k = 0;
    std::array<double, 3> best_by_k{-std::numeric_limits<double>::infinity(),
                                    -std::numeric_limits<double>::infinity(),
                                    -std::numeric_limits<double>::infinity()};
    double cell_dt = 0.0;
    double cell_dv = 0.0;
    /// Half-cell movement bound from the observed J2 slopes on the k = 1 grid.
    double cell_size_bound = 0.0;
    double level_bound_used = 0.0;
};

/// Exhaustive search over k in {0..k_max}, instants on a uniform interior time
/// grid and levels on a uniform grid of [-V, V] (ordered instant pairs for
/// k = 2), holding player 1's realized time control fixed. Returns the maximal
/// J2 and its schedule. This is an open-loop-style check; feedback optimality
/// is verified through the QVI residuals instead.
BestResponse2Result best_response_player2(const GameParameters& p, const Control& u, int k_max,
                                          const GridSpec& grid = {});

/// Player-1 concavity check: J1 under u_star plus +-eps rectangular bumps on
/// n_basis sub-intervals (eps in {1e-2, 1e-3}), impulse schedule fixed.
struct BestResponse1Result {
    double base_J1 = 0.0;
    double max_improvement = -std::numeric_limits<double>::infinity();
    /// Largest |observed - expected| where expected = R1 eps^2 width / 2.
    double max_drop_mismatch = 0.0;
};

BestResponse1Result best_response_player1(const GameParameters& p, const ImpulseSchedule& sched,
                                          const Control& u_star, int n_basis);

/// Pointwise quasi-variational-inequality residuals of a feedback solution.
struct QviSample {
    double t = 0.0;
    double x = 0.0;
    double hjb_residual = 0.0;
    double obstacle_gap = 0.0;  ///< V2 - R V2
    double complementarity = 0.0;
};

struct QviViolation {
    double t = 0.0;
    double x = 0.0;
    std::string what;
};

struct QviScanReport {
    std::vector<QviSample> samples;
    double max_abs_hjb_in_band = 0.0;   ///< over times with |alpha2| <= gamma
    double min_gap_in_band = std::numeric_limits<double>::infinity();
    double max_abs_complementarity = 0.0;
    double max_terminal_residual = 0.0;
    double max_value_matching_residual = 0.0;  ///< |V2 - R V2| at equilibrium instants
    std::vector<QviViolation> violations;
};

/// Flags, beyond 1e-8: HJB-equality failures inside the band, positive HJB
/// residuals anywhere, negative obstacle gaps (these occur where |alpha2|
/// exceeds gamma and are reported, not repaired), and complementarity
/// products. Terminal residuals V2(T,x) - s2 x are recorded exactly.
QviScanReport qvi_residual_scan(const GameParameters& p, const FneSolution& sol,
                                std::span<const double> t_grid, std::span<const double> x_grid);

/// Side-by-side endogenous equilibria with the qualitative comparison case:
/// 1 when w2 < 0 and s2 < 0, 2 when w2 > 0 and s2 > 0, 0 otherwise.
struct ComparisonReport {
    OlneSolution olne;
    FneSolution fne;
    int k_ol = 0;
    int k_fb = 0;
    int section_case = 0;
};

ComparisonReport compare_equilibria(const GameParameters& p);

/// One named oracle check of a verification suite.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the selected oracle suite ("exogenous", "olne", "fne" or "all").
/// Random draws (exogenous instants when none are supplied) come from the
/// given seed, so runs are reproducible.
std::vector<CheckResult> run_verification_suite(const GameParameters& p,
                                                const std::optional<std::vector<double>>& instants,
                                                const std::string& suite, std::uint64_t seed);

}  // namespace lsdg
