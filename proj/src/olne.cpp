#include "lsdg/olne.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lsdg/coefficients.hpp"
#include "lsdg/errors.hpp"

namespace lsdg {

double delta(const GameParameters& p) {
    const double ratio = p.B / p.Q;
    return (p.P2 / p.R1) * ratio * ratio;
}

const char* to_string(OlneCase c) {
    switch (c) {
        case OlneCase::a0_no_impulse: return "A0-no-impulse";
        case OlneCase::case_a: return "a";
        case OlneCase::case_b: return "b";
        case OlneCase::case_c: return "c";
        case OlneCase::case_d: return "d";
        case OlneCase::none: return "none";
    }
    return "none";
}

OlneRegime classify_olne_regime(const GameParameters& p) {
    validate_params(p);
    OlneRegime r;
    r.delta_value = delta(p);
    r.drift_combo = p.A * p.s2 + p.w2;
    if (drift_is_zero(p)) {
        r.label = OlneCase::a0_no_impulse;
        return r;
    }
    if (p.q1 == 0.0) {
        r.label = OlneCase::none;
        return r;
    }

    const double qd = p.q1 * r.delta_value;
    const double qde = qd * std::exp(-p.A * p.T);
    // The double inequality is lo < A s2 + w2 < hi with the bounds ordered by
    // the sign pattern of (A, q1).
    OlneCase candidate;
    double lo, hi;
    if (p.A > 0.0 && p.q1 > 0.0) {
        candidate = OlneCase::case_a;
        lo = qde;
        hi = qd;
    } else if (p.A > 0.0 && p.q1 < 0.0) {
        candidate = OlneCase::case_b;
        lo = qd;
        hi = qde;
    } else if (p.A < 0.0 && p.q1 > 0.0) {
        candidate = OlneCase::case_c;
        lo = qd;
        hi = qde;
    } else {
        candidate = OlneCase::case_d;
        lo = qde;
        hi = qd;
    }

    const double S = r.drift_combo;
    r.margin_lower = S - lo;
    r.margin_upper = hi - S;
    const double scale =
        std::max({1.0, std::abs(lo), std::abs(hi), std::abs(S)});
    if (std::abs(r.margin_lower) < 1e-10 * scale || std::abs(r.margin_upper) < 1e-10 * scale) {
        throw BoundaryDegenerate("open-loop regime margin within tolerance of zero (case " +
                                 std::string(to_string(candidate)) + ")");
    }
    r.label = (r.margin_lower > 0.0 && r.margin_upper > 0.0) ? candidate : OlneCase::none;
    return r;
}

OlneSolution solve_endogenous_olne(const GameParameters& p) {
    validate_params(p);
    OlneSolution sol;
    sol.regime = classify_olne_regime(p);

    if (!sol.regime.admits_impulse()) {
        sol.k = 0;
        const PiecewiseCoefficient lambda1 = solve_lambda1(p, {});
        sol.u = lambda1.scaled(-p.B / p.R1);
        const Control u = Control::from_coefficient(sol.u);
        const Trajectory traj = simulate_trajectory(p, u, sol.schedule);
        sol.payoffs = evaluate_payoffs(p, traj, u, sol.schedule);
        return sol;
    }

    const double S = sol.regime.drift_combo;
    const double tau = p.T - std::log(sol.regime.delta_value * p.q1 / S) / p.A;
    const double v = p.Q * p.w2 / (p.P2 * p.A) - p.B * p.B * p.q1 / (p.A * p.Q * p.R1);
    sol.lambda2_at_tau =
        (p.B * p.B * p.q1 * p.P2 - p.w2 * p.Q * p.Q * p.R1) / (p.R1 * p.A * p.Q * p.Q);

    // The level formula and the costate identity v = -Q lambda2(tau)/P2 are two
    // routes to the same number; disagreement indicates an implementation bug.
    const PiecewiseCoefficient lambda2 = solve_lambda2(p);
    const double v_from_costate = -p.Q * lambda2.value(tau) / p.P2;
    if (std::abs(v - v_from_costate) > 1e-10 * std::max(1.0, std::abs(v))) {
        throw InconsistentClassification("open-loop impulse level mismatch: " +
                                         std::to_string(v) + " vs " +
                                         std::to_string(v_from_costate));
    }

    sol.k = 1;
    sol.schedule = ImpulseSchedule({{tau, v}}, p.T);
    const std::vector<double> instants{tau};
    const PiecewiseCoefficient lambda1 = solve_lambda1(p, instants);
    sol.u = lambda1.scaled(-p.B / p.R1);
    const Control u = Control::from_coefficient(sol.u);
    const Trajectory traj = simulate_trajectory(p, u, sol.schedule);
    sol.payoffs = evaluate_payoffs(p, traj, u, sol.schedule);
    return sol;
}

double hamiltonian_continuity_residual(const GameParameters& p, double tau) {
    validate_params(p);
    const PiecewiseCoefficient lambda2 = solve_lambda2(p);
    const double l2 = lambda2.value(tau);
    return -((p.w2 + p.A * l2) * p.Q * p.Q / p.P2 - p.B * p.B * p.q1 / p.R1) * l2;
}

}  // namespace lsdg
