#include "lsdg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "lsdg/coefficients.hpp"
#include "lsdg/errors.hpp"

namespace lsdg {

namespace {

// shortest exact decimal form, stable across runs
std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* side_name(SampleSide s) {
    switch (s) {
        case SampleSide::interior: return "interior";
        case SampleSide::left: return "left";
        case SampleSide::right: return "right";
    }
    return "interior";
}

}  // namespace

GameParameters params_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("params must be an object");
    static constexpr const char* kFields[] = {"A",  "B",  "Q",  "w1", "R1", "q1", "s1",
                                              "w2", "P2", "C",  "s2", "T",  "x0"};
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* f : kFields) {
            if (key == f) known = true;
        }
        if (!known) throw ConfigError("unknown params field: " + key);
        if (!value.is_number()) throw ConfigError("params field " + key + " must be a number");
    }
    GameParameters p;
    auto get = [&](const char* name) {
        if (!j.contains(name)) throw ConfigError(std::string("missing params field: ") + name);
        return j.at(name).get<double>();
    };
    p.A = get("A");
    p.B = get("B");
    p.Q = get("Q");
    p.w1 = get("w1");
    p.R1 = get("R1");
    p.q1 = get("q1");
    p.s1 = get("s1");
    p.w2 = get("w2");
    p.P2 = get("P2");
    p.C = get("C");
    p.s2 = get("s2");
    p.T = get("T");
    p.x0 = get("x0");
    return validate_params(p);
}

Json params_to_json(const GameParameters& p) {
    return Json{{"A", p.A},   {"B", p.B},   {"Q", p.Q},   {"w1", p.w1}, {"R1", p.R1},
                {"q1", p.q1}, {"s1", p.s1}, {"w2", p.w2}, {"P2", p.P2}, {"C", p.C},
                {"s2", p.s2}, {"T", p.T},   {"x0", p.x0}};
}

CliConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    if (!doc.contains("params")) throw ConfigError("config needs a params object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "params" && key != "instants") {
            throw ConfigError("unknown config field: " + key);
        }
    }

    CliConfig cfg;
    cfg.params = params_from_json(doc.at("params"));
    if (doc.contains("instants")) {
        if (!doc.at("instants").is_array()) throw ConfigError("instants must be an array");
        std::vector<double> instants;
        for (const auto& v : doc.at("instants")) {
            if (!v.is_number()) throw ConfigError("instants entries must be numbers");
            instants.push_back(v.get<double>());
        }
        cfg.instants = std::move(instants);
    }
    return cfg;
}

Json coefficient_to_json(const PiecewiseCoefficient& pc) {
    Json segments = Json::array();
    for (const auto& s : pc.segments()) {
        segments.push_back(Json{{"t_start", s.t_start},
                                {"t_end", s.t_end},
                                {"anchor", s.anchor},
                                {"base", s.base()},
                                {"amp", s.amp},
                                {"rate", s.rate},
                                {"amp2", s.amp2},
                                {"rate2", s.rate2},
                                {"slope", s.slope},
                                {"quad", s.quad},
                                {"cub", s.cub},
                                {"quart", s.quart},
                                {"quint", s.quint}});
    }
    Json jumps = Json::array();
    for (const auto& j : pc.jumps()) {
        jumps.push_back(
            Json{{"instant", j.instant}, {"left", j.left_value}, {"right", j.right_value}});
    }
    return Json{{"segments", std::move(segments)}, {"jumps", std::move(jumps)}};
}

namespace {

Json schedule_to_json(const ImpulseSchedule& sched) {
    Json arr = Json::array();
    for (const auto& a : sched.actions()) {
        arr.push_back(Json{{"instant", a.instant}, {"level", a.level}});
    }
    return arr;
}

Json payoffs_to_json(const PayoffPair& payoffs) {
    return Json{{"J1", payoffs.J1}, {"J2", payoffs.J2}};
}

}  // namespace

Json solution_to_json(const ExogenousSolution& sol) {
    Json out{{"kind", sol.kind == EquilibriumKind::open_loop ? "exogenous-olne" : "exogenous-fne"},
             {"k", sol.schedule.k()},
             {"schedule", schedule_to_json(sol.schedule)},
             {"control", coefficient_to_json(sol.u)},
             {"payoffs", payoffs_to_json(sol.payoffs)}};
    if (sol.kind == EquilibriumKind::open_loop) {
        out["costates"] = Json{{"lambda1", coefficient_to_json(sol.coeff1)},
                               {"lambda2", coefficient_to_json(sol.coeff2)}};
    } else {
        Json coeffs{{"m1", coefficient_to_json(sol.coeff1)},
                    {"m2", coefficient_to_json(sol.coeff2)}};
        if (sol.offset1) coeffs["n1"] = coefficient_to_json(*sol.offset1);
        if (sol.offset2) coeffs["n2"] = coefficient_to_json(*sol.offset2);
        out["value_coefficients"] = std::move(coeffs);
    }
    return out;
}

Json solution_to_json(const OlneSolution& sol) {
    Json regime{{"label", to_string(sol.regime.label)},
                {"margin_lower", sol.regime.margin_lower},
                {"margin_upper", sol.regime.margin_upper},
                {"drift_combo", sol.regime.drift_combo},
                {"delta", sol.regime.delta_value}};
    return Json{{"kind", "olne"},
                {"k", sol.k},
                {"schedule", schedule_to_json(sol.schedule)},
                {"control", coefficient_to_json(sol.u)},
                {"lambda2_at_tau", sol.lambda2_at_tau},
                {"payoffs", payoffs_to_json(sol.payoffs)},
                {"regime", std::move(regime)}};
}

Json solution_to_json(const FneSolution& sol) {
    Json margins = Json::array();
    for (const auto& m : sol.regime.margins) {
        margins.push_back(Json{{"name", m.name}, {"value", m.value}});
    }
    Json regime{{"label", to_string(sol.regime.label)},
                {"case", sol.regime.case_label},
                {"tau1_interior", sol.regime.tau1_interior},
                {"tau2_interior", sol.regime.tau2_interior},
                {"tau1_first", sol.regime.tau1_first},
                {"margins", std::move(margins)}};
    return Json{{"kind", "fne"},
                {"k", sol.k},
                {"gamma", sol.gamma_value},
                {"schedule", schedule_to_json(sol.schedule)},
                {"control", coefficient_to_json(sol.u)},
                {"payoffs", payoffs_to_json(sol.payoffs)},
                {"value_coefficients", Json{{"alpha1", coefficient_to_json(sol.alpha1)},
                                            {"beta1", coefficient_to_json(sol.beta1)},
                                            {"alpha2", coefficient_to_json(sol.alpha2)},
                                            {"beta2", coefficient_to_json(sol.beta2)}}},
                {"regime", std::move(regime)}};
}

Json checks_to_json(const std::vector<CheckResult>& checks) {
    Json arr = Json::array();
    bool all_passed = true;
    for (const auto& c : checks) {
        arr.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        if (!c.passed) all_passed = false;
    }
    return Json{{"passed", all_passed}, {"checks", std::move(arr)}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,x,side\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        os << fmt_double(traj.t[i]) << ',' << fmt_double(traj.x[i]) << ','
           << side_name(traj.side[i]) << '\n';
    }
}

void write_coefficient_csv(std::ostream& os, const PiecewiseCoefficient& pc,
                           int samples_per_segment) {
    os << "t,value,side\n";
    for (const auto& seg : pc.segments()) {
        const bool jump_at_start =
            std::any_of(pc.jumps().begin(), pc.jumps().end(),
                        [&](const CoefficientJump& j) { return j.instant == seg.t_start; });
        if (jump_at_start) {
            os << fmt_double(seg.t_start) << ',' << fmt_double(pc.value(seg.t_start, Side::left))
               << ",left\n";
            os << fmt_double(seg.t_start) << ',' << fmt_double(pc.value(seg.t_start, Side::right))
               << ",right\n";
        }
        const int start = jump_at_start ? 1 : 0;
        for (int i = start; i <= samples_per_segment; ++i) {
            const double t = seg.t_start + (seg.t_end - seg.t_start) * i / samples_per_segment;
            os << fmt_double(t) << ',' << fmt_double(seg.value(t)) << ",interior\n";
        }
    }
}

void write_alpha2_band_csv(std::ostream& os, const GameParameters& p, int samples) {
    const PiecewiseCoefficient alpha2 = solve_alpha2(validate_params(p));
    const double g = gamma(p);
    os << "t,alpha2,gamma,neg_gamma\n";
    for (int i = 0; i <= samples; ++i) {
        const double t = p.T * i / samples;
        os << fmt_double(t) << ',' << fmt_double(alpha2.value(t)) << ',' << fmt_double(g) << ','
           << fmt_double(-g) << '\n';
    }
}

void write_qvi_scan_csv(std::ostream& os, const QviScanReport& report) {
    os << "t,x,hjb_residual,obstacle_gap,complementarity\n";
    for (const auto& s : report.samples) {
        os << fmt_double(s.t) << ',' << fmt_double(s.x) << ',' << fmt_double(s.hjb_residual) << ','
           << fmt_double(s.obstacle_gap) << ',' << fmt_double(s.complementarity) << '\n';
    }
}

SweepRange SweepRange::parse(const std::string& text) {
    SweepRange r;
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw ConfigError("range must be min:max:n, got " + text);
    }
    try {
        r.lo = std::stod(text.substr(0, first));
        r.hi = std::stod(text.substr(first + 1, second - first - 1));
        r.n = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw ConfigError("range must be min:max:n, got " + text);
    }
    if (r.n < 0) throw ConfigError("range count must be non-negative");
    return r;
}

double SweepRange::at(int i) const {
    if (n <= 1) return lo;
    return lo + (hi - lo) * i / (n - 1);
}

void run_sweep_csv(std::ostream& os, const GameParameters& base, const SweepRange& w2_range,
                   const SweepRange& s2_range, const std::string& mode) {
    if (mode != "olne" && mode != "fne") throw ConfigError("sweep mode must be olne or fne");
    if (w2_range.n > 2000 || s2_range.n > 2000) {
        throw ConfigError("sweep resolution is limited to 2000x2000");
    }
    os << "w2,s2,regime_label,k\n";
    for (int i = 0; i < w2_range.n; ++i) {
        for (int j = 0; j < s2_range.n; ++j) {
            GameParameters p = base;
            p.w2 = w2_range.at(i);
            p.s2 = s2_range.at(j);
            std::string label;
            int k = 0;
            try {
                if (mode == "olne") {
                    const OlneRegime r = classify_olne_regime(p);
                    label = to_string(r.label);
                    k = r.admits_impulse() ? 1 : 0;
                } else {
                    const FneRegime r = classify_fne_regime(p);
                    label = to_string(r.label);
                    k = r.count;
                }
            } catch (const BoundaryDegenerate&) {
                label = "degenerate";
                k = -1;
            }
            os << fmt_double(p.w2) << ',' << fmt_double(p.s2) << ',' << label << ',' << k << '\n';
        }
    }
}

}  // namespace lsdg
