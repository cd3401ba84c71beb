#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lsdg/exogenous.hpp"
#include "lsdg/fne.hpp"
#include "lsdg/olne.hpp"
#include "lsdg/verify.hpp"
#include "oracles.hpp"

using namespace lsdg;

namespace {

GameParameters shared_instance() {
    GameParameters p;
    p.A = 0.5;
    p.B = 1.0;
    p.Q = 1.0;
    p.R1 = -1.0;
    p.P2 = -1.0;
    p.q1 = 1.25;
    p.w1 = 1.0;
    p.s1 = 1.0;
    p.w2 = 1.0;
    p.s2 = 0.0;
    p.C = -0.125;
    p.T = 1.0;
    p.x0 = 0.0;
    return p;
}

}  // namespace

TEST_CASE("best response search: trivial cases") {
    SUBCASE("no benefit means no impulse") {
        GameParameters p = shared_instance();
        p.w2 = 0.0;
        p.s2 = 0.0;
        GridSpec grid;
        grid.time_points = 40;
        grid.level_points = 40;
        const BestResponse2Result r =
            best_response_player2(p, Control::zero(p.T), 1, grid);
        CHECK(r.best_k == 0);
        CHECK(r.best_schedule.empty());
    }

    SUBCASE("k_max = 0 returns the no-impulse payoff") {
        GameParameters p = shared_instance();
        const BestResponse2Result r = best_response_player2(p, Control::zero(p.T), 0);
        CHECK(r.best_k == 0);
        const Control u = Control::zero(p.T);
        const Trajectory traj = simulate_trajectory(p, u, ImpulseSchedule{}, 64);
        CHECK(r.best_J2 == doctest::Approx(evaluate_payoffs(p, traj, u, ImpulseSchedule{}).J2)
                               .epsilon(1e-12));
    }
}

TEST_CASE("level-only refinement walks toward the analytic level") {
    // at a fixed instant the level objective is an exact quadratic, so nested
    // level grids approach the analytic optimum monotonically
    GameParameters p = shared_instance();
    const std::vector<double> instants{0.5};
    const ExogenousSolution sol = solve_exogenous_olne(p, instants);
    const Control u = Control::from_coefficient(sol.u);
    const double analytic = sol.schedule.action(0).level;

    double previous_error = 1e300;
    for (int m : {16, 32, 64, 128}) {
        double best = -1e300;
        double best_v = 0.0;
        for (int j = 0; j <= m; ++j) {
            const double v = -2.0 + 4.0 * j / m;
            const ImpulseSchedule sched({{0.5, v}}, p.T);
            const Trajectory traj = simulate_trajectory(p, u, sched, 200);
            const double J = evaluate_payoffs(p, traj, u, sched).J2;
            if (J > best) {
                best = J;
                best_v = v;
            }
        }
        const double error = std::abs(best_v - analytic);
        CHECK(error <= previous_error + 1e-15);
        CHECK(error <= 4.0 / m);  // within one cell
        previous_error = error;
    }
}

TEST_CASE("player-1 bump check distinguishes optimal from suboptimal controls") {
    GameParameters p = shared_instance();

    SUBCASE("equilibrium control cannot be improved") {
        const OlneSolution sol = solve_endogenous_olne(p);
        const BestResponse1Result r =
            best_response_player1(p, sol.schedule, Control::from_coefficient(sol.u), 8);
        CHECK(r.max_improvement <= 1e-12);
        CHECK(r.max_drop_mismatch <= 1e-9);
    }

    SUBCASE("zero control is optimal when player 1 has no stakes") {
        GameParameters q = shared_instance();
        q.w1 = 0.0;
        q.s1 = 0.0;
        q.q1 = 0.0;
        const BestResponse1Result r =
            best_response_player1(q, ImpulseSchedule{}, Control::zero(q.T), 6);
        CHECK(r.max_improvement <= 1e-12);
    }

    SUBCASE("a shifted control is improvable") {
        const OlneSolution sol = solve_endogenous_olne(p);
        const Control shifted =
            Control::from_coefficient(sol.u.shifted_on(0.0, p.T, 0.1));
        const BestResponse1Result r = best_response_player1(p, sol.schedule, shifted, 8);
        CHECK(r.max_improvement > 1e-6);
    }
}

TEST_CASE("QVI residual scan on the one-impulse instance") {
    GameParameters p = shared_instance();
    p.q1 = 1.0;
    const FneSolution sol = solve_endogenous_fne(p);

    std::vector<double> t_grid, x_grid;
    for (int i = 0; i <= 200; ++i) t_grid.push_back(p.T * i / 200.0);
    for (int i = 0; i <= 8; ++i) x_grid.push_back(-2.0 + 0.5 * i);

    const QviScanReport scan = qvi_residual_scan(p, sol, t_grid, x_grid);
    CHECK(scan.max_abs_hjb_in_band <= 1e-8);
    CHECK(scan.max_abs_complementarity <= 1e-8);
    CHECK(scan.max_terminal_residual == 0.0);
    CHECK(scan.max_value_matching_residual <= 1e-10);
    CHECK(scan.min_gap_in_band >= -1e-12);

    // the documented defect region: before the first crossing |alpha2| > gamma
    // and the obstacle inequality fails; the scan flags it without repair
    const double tau = sol.schedule.action(0).instant;
    bool obstacle_found = false;
    for (const auto& v : scan.violations) {
        if (v.what == "obstacle") {
            obstacle_found = true;
            CHECK(v.t < tau);
        } else {
            CHECK(v.what == "obstacle");  // nothing else may be flagged here
        }
    }
    CHECK(obstacle_found);

    // sign of the gap outside the band matches -C + Q^2 alpha2^2/(2 P2)
    const double a2_at_0 = sol.alpha2.value(0.0);
    REQUIRE(std::abs(a2_at_0) > sol.gamma_value);
    CHECK(-p.C + p.Q * p.Q * a2_at_0 * a2_at_0 / (2.0 * p.P2) < 0.0);
}

TEST_CASE("terminal QVI residual is exact at T") {
    const FneSolution sol = solve_endogenous_fne(shared_instance());
    const GameParameters p = shared_instance();
    for (double x : {-3.0, 0.0, 1.7}) {
        CHECK(sol.alpha2.value(p.T) * x + sol.beta2.value(p.T) == p.s2 * x);
    }
}

TEST_CASE("equilibria comparison") {
    SUBCASE("A = 0: no open-loop impulse, but a feedback impulse") {
        GameParameters p = shared_instance();
        p.A = 0.0;
        const ComparisonReport rep = compare_equilibria(p);
        CHECK(rep.k_ol == 0);
        CHECK(rep.k_fb >= 1);
    }

    SUBCASE("q1 moves the open-loop instant but not the feedback instant") {
        GameParameters p = shared_instance();
        const ComparisonReport base = compare_equilibria(p);
        REQUIRE(base.k_ol == 1);
        REQUIRE(base.k_fb == 1);

        GameParameters q = p;
        q.q1 = 1.3;
        const ComparisonReport moved = compare_equilibria(q);
        REQUIRE(moved.k_ol == 1);
        CHECK(moved.olne.schedule.action(0).instant !=
              base.olne.schedule.action(0).instant);
        CHECK(moved.fne.schedule.action(0).instant ==
              base.fne.schedule.action(0).instant);
        // with q1 = 1.3 the two equilibria disagree on timing
        CHECK(moved.olne.schedule.action(0).instant !=
              moved.fne.schedule.action(0).instant);
    }

    SUBCASE("section cases label the shared-sign quadrants") {
        GameParameters p = shared_instance();
        p.w2 = -1.0;
        p.s2 = -0.4;
        CHECK(compare_equilibria(p).section_case == 1);
        p.w2 = 1.0;
        p.s2 = 0.4;
        CHECK(compare_equilibria(p).section_case == 2);
        p.s2 = -0.4;
        CHECK(compare_equilibria(p).section_case == 0);
    }
}

TEST_CASE("verification suites pass on the shared instance") {
    const GameParameters p = shared_instance();

    SUBCASE("exogenous suite with explicit instants") {
        const std::vector<double> instants{0.3, 0.7};
        const auto checks = run_verification_suite(p, instants, "exogenous", 7);
        for (const auto& c : checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.passed);
        }
    }

    SUBCASE("olne suite") {
        const auto checks = run_verification_suite(p, std::nullopt, "olne", 7);
        for (const auto& c : checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.passed);
        }
    }

    SUBCASE("fne suite") {
        const auto checks = run_verification_suite(p, std::nullopt, "fne", 7);
        for (const auto& c : checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.passed);
        }
    }

    SUBCASE("all suite with seeded random instants") {
        const auto checks = run_verification_suite(p, std::nullopt, "all", 99);
        for (const auto& c : checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.passed);
        }
    }

    SUBCASE("unknown suite is rejected") {
        CHECK_THROWS_AS(run_verification_suite(p, std::nullopt, "bogus", 1),
                        std::invalid_argument);
    }
}

TEST_CASE("suite runs are deterministic for a fixed seed") {
    const GameParameters p = shared_instance();
    const auto a = run_verification_suite(p, std::nullopt, "exogenous", 1234);
    const auto b = run_verification_suite(p, std::nullopt, "exogenous", 1234);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].detail == b[i].detail);
    }
}
