#include "lsdg/fne.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "lsdg/coefficients.hpp"
#include "lsdg/errors.hpp"

namespace lsdg {

double gamma(const GameParameters& p) {
    return std::sqrt(2.0 * p.P2 * p.C / (p.Q * p.Q));
}

const char* to_string(FneImpulseCase c) {
    switch (c) {
        case FneImpulseCase::none: return "none";
        case FneImpulseCase::tau1_only: return "tau1-only";
        case FneImpulseCase::tau2_only: return "tau2-only";
        case FneImpulseCase::two_impulses: return "two-impulse";
    }
    return "none";
}

namespace {

// Admits a raw candidate time: interior, boundary-degenerate, or absent.
std::optional<double> admit_candidate(double t, double horizon, const char* which) {
    const double tol = 1e-10 * std::max(1.0, horizon);
    if (!std::isfinite(t)) return std::nullopt;
    if (std::abs(t) <= tol || std::abs(t - horizon) <= tol) {
        throw BoundaryDegenerate(std::string(which) + " candidate within tolerance of 0 or T");
    }
    if (t > tol && t < horizon - tol) return t;
    return std::nullopt;
}

void check_constant_alpha2(double constant, double g) {
    if (std::abs(std::abs(constant) - g) <= 1e-10 * std::max(1.0, g)) {
        throw BoundaryDegenerate("alpha2 is constant at distance ~0 from the stopping threshold");
    }
}

}  // namespace

FneCandidates fne_candidate_times(const GameParameters& p) {
    validate_params(p);
    const double g = gamma(p);
    FneCandidates out;

    if (drift_is_zero(p)) {
        if (p.w2 == 0.0) {
            check_constant_alpha2(p.s2, g);
            return out;
        }
        out.tau1 = admit_candidate(p.T - (g - p.s2) / p.w2, p.T, "tau1");
        out.tau2 = admit_candidate(p.T + (g + p.s2) / p.w2, p.T, "tau2");
        return out;
    }

    const double S = p.w2 + p.A * p.s2;
    if (S == 0.0) {
        check_constant_alpha2(-p.w2 / p.A, g);
        return out;
    }
    const double arg1 = (p.w2 + p.A * g) / S;
    if (arg1 > 0.0) {
        out.tau1 = admit_candidate(p.T - std::log(arg1) / p.A, p.T, "tau1");
    }
    const double arg2 = (p.w2 - p.A * g) / S;
    if (arg2 > 0.0) {
        out.tau2 = admit_candidate(p.T - std::log(arg2) / p.A, p.T, "tau2");
    }
    return out;
}

FneLevels fne_impulse_levels(const GameParameters& p, const FneCandidates& candidates) {
    const double g = gamma(p);
    FneLevels out;
    // v = -Q alpha2 / P2 with alpha2 = +gamma at tau1 and -gamma at tau2.
    if (candidates.tau1) out.level1 = -p.Q * g / p.P2;
    if (candidates.tau2) out.level2 = p.Q * g / p.P2;
    return out;
}

FneRegime classify_fne_regime(const GameParameters& p) {
    validate_params(p);
    const double g = gamma(p);
    const FneCandidates cands = fne_candidate_times(p);

    FneRegime r;
    const char* drift_case = nullptr;
    if (drift_is_zero(p)) {
        drift_case = "A=0";
        r.tau1_first = p.w2 > 0.0;
        r.margins = {
            {"tau1.gt0", (p.T * p.w2 + p.s2 - g) * p.w2},
            {"tau1.ltT", (g - p.s2) * p.w2},
            {"tau2.gt0", (p.T * p.w2 + p.s2 + g) * p.w2},
            {"tau2.ltT", -(g + p.s2) * p.w2},
        };
    } else {
        const double S = p.w2 + p.A * p.s2;
        r.tau1_first = S > 0.0;
        if (p.A > 0.0) {
            drift_case = "A>0";
            const double e = std::exp(-p.A * p.T);
            const double growth = p.w2 * (1.0 - e) + p.A * p.s2;
            r.margins = {
                {"tau1.domain", (p.w2 + p.A * g) * S},
                {"tau1.gt0", (growth - p.A * g * e) * S},
                {"tau1.ltT", (g - p.s2) * S},
                {"tau2.domain", (p.w2 - p.A * g) * S},
                {"tau2.gt0", (growth + p.A * g * e) * S},
                {"tau2.ltT", -(g + p.s2) * S},
            };
        } else {
            drift_case = "A<0";
            const double e = std::exp(p.A * p.T);
            const double growth = p.w2 * (e - 1.0) + p.A * p.s2 * e;
            r.margins = {
                {"tau1.domain", (p.w2 + p.A * g) * S},
                {"tau1.gt0", -(growth - p.A * g) * S},
                {"tau1.ltT", (g - p.s2) * S},
                {"tau2.domain", (p.w2 - p.A * g) * S},
                {"tau2.gt0", -(growth + p.A * g) * S},
                {"tau2.ltT", -(g + p.s2) * S},
            };
        }
    }

    auto all_hold = [&](const char* prefix) {
        bool any = false;
        for (const auto& m : r.margins) {
            if (m.name.rfind(prefix, 0) == 0) {
                any = true;
                if (!(m.value > 0.0)) return false;
            }
        }
        return any;
    };
    const bool ineq1 = all_hold("tau1");
    const bool ineq2 = all_hold("tau2");

    r.tau1_interior = cands.tau1.has_value();
    r.tau2_interior = cands.tau2.has_value();
    if (ineq1 != r.tau1_interior || ineq2 != r.tau2_interior) {
        throw InconsistentClassification(
            "inequality route (tau1 " + std::to_string(ineq1) + ", tau2 " + std::to_string(ineq2) +
            ") vs direct interiority (tau1 " + std::to_string(r.tau1_interior) + ", tau2 " +
            std::to_string(r.tau2_interior) + ")");
    }

    r.count = (r.tau1_interior ? 1 : 0) + (r.tau2_interior ? 1 : 0);
    if (r.count == 2) {
        r.label = FneImpulseCase::two_impulses;
    } else if (r.tau1_interior) {
        r.label = FneImpulseCase::tau1_only;
    } else if (r.tau2_interior) {
        r.label = FneImpulseCase::tau2_only;
    } else {
        r.label = FneImpulseCase::none;
    }
    r.case_label = std::string(to_string(r.label)) + "/" + drift_case;
    return r;
}

FneSolution solve_endogenous_fne(const GameParameters& p) {
    validate_params(p);
    FneSolution sol;
    sol.gamma_value = gamma(p);
    sol.regime = classify_fne_regime(p);

    const FneCandidates cands = fne_candidate_times(p);
    const FneLevels levels = fne_impulse_levels(p, cands);

    std::vector<ImpulseAction> actions;
    if (cands.tau1) actions.push_back({*cands.tau1, *levels.level1});
    if (cands.tau2) actions.push_back({*cands.tau2, *levels.level2});
    std::sort(actions.begin(), actions.end(),
              [](const ImpulseAction& a, const ImpulseAction& b) { return a.instant < b.instant; });
    sol.k = static_cast<int>(actions.size());
    sol.schedule = ImpulseSchedule(std::move(actions), p.T);

    const std::vector<double> instants = sol.schedule.instants();
    sol.alpha1 = solve_alpha1(p, instants);
    sol.alpha2 = solve_alpha2(p);
    OffsetPair offsets = solve_offsets(p, sol.alpha1, sol.alpha2, sol.schedule);
    sol.beta1 = std::move(offsets.beta1);
    sol.beta2 = std::move(offsets.beta2);

    sol.u = sol.alpha1.scaled(-p.B / p.R1);
    const Control u = Control::from_coefficient(sol.u);
    const Trajectory traj = simulate_trajectory(p, u, sol.schedule);
    sol.payoffs = evaluate_payoffs(p, traj, u, sol.schedule);
    return sol;
}

double evaluate_value2(const GameParameters& p, const FneSolution& sol, double t, double x) {
    (void)p;
    return sol.alpha2.value(t) * x + sol.beta2.value(t);
}

double apply_R_operator(const GameParameters& p, const FneSolution& sol, double t, double x) {
    const double a2 = sol.alpha2.value(t);
    return p.C - p.Q * p.Q * a2 * a2 / (2.0 * p.P2) + evaluate_value2(p, sol, t, x);
}

}  // namespace lsdg
