#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsdg/exogenous.hpp"
#include "lsdg/fne.hpp"
#include "lsdg/olne.hpp"
#include "lsdg/params.hpp"
#include "lsdg/trajectory.hpp"
#include "lsdg/verify.hpp"

namespace lsdg {

using Json = nlohmann::ordered_json;

/// Parsed configuration: the thirteen-field params object plus the optional
/// instants array used by the exogenous modes.
struct CliConfig {
    GameParameters params;
    std::optional<std::vector<double>> instants;
};

/// Strict parse: exactly the thirteen documented field names, all numeric;
/// unknown fields are rejected with ConfigError.
GameParameters params_from_json(const Json& j);
Json params_to_json(const GameParameters& p);

CliConfig load_config(const std::string& path);

Json coefficient_to_json(const PiecewiseCoefficient& pc);
Json solution_to_json(const ExogenousSolution& sol);
Json solution_to_json(const OlneSolution& sol);
Json solution_to_json(const FneSolution& sol);
Json checks_to_json(const std::vector<CheckResult>& checks);

/// CSV `t,x,side` with side in {interior,left,right}.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// CSV `t,value,side`, sampling each segment and adding both sides at jumps.
void write_coefficient_csv(std::ostream& os, const PiecewiseCoefficient& pc,
                           int samples_per_segment = 64);

/// CSV `t,alpha2,gamma,neg_gamma` for plotting the stopping band.
void write_alpha2_band_csv(std::ostream& os, const GameParameters& p, int samples = 256);

/// CSV `t,x,hjb_residual,obstacle_gap,complementarity`.
void write_qvi_scan_csv(std::ostream& os, const QviScanReport& report);

/// Inclusive uniform range, parsed from "min:max:n". n = 0 yields no points.
struct SweepRange {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;

    static SweepRange parse(const std::string& text);
    double at(int i) const;
};

/// CSV `w2,s2,regime_label,k` over the (w2, s2) grid, classified with the same
/// functions the solvers use. Boundary-degenerate cells carry label
/// "degenerate" and k = -1. mode is "olne" or "fne".
void run_sweep_csv(std::ostream& os, const GameParameters& base, const SweepRange& w2_range,
                   const SweepRange& s2_range, const std::string& mode);

}  // namespace lsdg
