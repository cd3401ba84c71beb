#include "lsdg/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lsdg/errors.hpp"

namespace lsdg {

namespace {

// Moment integrals M_j(h) = int_0^h e^{A xi} xi^j dxi, j = 0..5.
// Series below |A h| = 0.5, recursion otherwise; both branches are stable.
void exp_moments(double A, double h, double m[6]) {
    const double ah = A * h;
    if (std::abs(ah) < 0.5) {
        // sum_n (ah)^n / (n! (j+n+1)), scaled by h^{j+1}
        for (int j = 0; j <= 5; ++j) {
            double term = 1.0 / (j + 1);
            double sum = term;
            for (int n = 1; n < 40; ++n) {
                term *= ah * (j + n) / (static_cast<double>(n) * (j + n + 1));
                sum += term;
                if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
            }
            m[j] = sum * std::pow(h, j + 1);
        }
        return;
    }
    const double eah = std::exp(ah);
    m[0] = std::expm1(ah) / A;
    for (int j = 1; j <= 5; ++j) {
        m[j] = (eah * std::pow(h, j) - j * m[j - 1]) / A;
    }
}

// int_{t0}^{t1} e^{A (t1 - s)} seg.value(s) ds, in closed form.
double convolve_segment(double A, const ExponentialSegment& seg, double t0, double t1) {
    const double h = t1 - t0;
    double total = 0.0;

    double m[6];
    exp_moments(A, h, m);
    total += seg.base() * m[0];

    // exponential terms: amp e^{r (anchor - s)} convolves to
    // amp e^{r (anchor - t1)} expm1((A + r) h)/(A + r)
    for (const auto& [amp, r] : {std::pair{seg.amp, seg.rate}, std::pair{seg.amp2, seg.rate2}}) {
        if (amp == 0.0) continue;
        const double k = A + r;
        const double front = amp * std::exp(r * (seg.anchor - t1));
        total += front * (k == 0.0 ? h : std::expm1(k * h) / k);
    }

    // polynomial terms: (anchor - s)^k = (sigma1 + xi)^k with sigma1 = anchor - t1
    // and xi = t1 - s running 0..h; binomial expansion against the moments.
    // Note int_{t0}^{t1} e^{A(t1-s)} (t1-s)^j ds = M_j(h).
    const double c[6] = {0.0, seg.slope, seg.quad, seg.cub, seg.quart, seg.quint};
    static constexpr int binom[6][6] = {{1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},
                                        {1, 2, 1, 0, 0, 0},  {1, 3, 3, 1, 0, 0},
                                        {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
    const double s1 = seg.anchor - t1;
    for (int k = 1; k <= 5; ++k) {
        if (c[k] == 0.0) continue;
        double acc = 0.0;
        double s1pow = 1.0;  // s1^{k-j}, iterating j downward from k
        for (int j = k; j >= 0; --j) {
            acc += binom[k][j] * s1pow * m[j];
            s1pow *= s1;
        }
        total += c[k] * acc;
    }
    return total;
}

double control_rhs(const GameParameters& p, const Control& u, double t, double x) {
    return p.A * x + p.B * u.value(t);
}

struct Event {
    double time;
    bool is_jump;
    double level;
};

}  // namespace

Trajectory simulate_trajectory(const GameParameters& p, const Control& u,
                               const ImpulseSchedule& sched, int n_steps) {
    validate_params(p);
    if (n_steps < 1) throw std::invalid_argument("n_steps must be positive");

    const double T = p.T;
    const double merge_tol = 1e-12 * std::max(1.0, T);

    // Event list: impulse instants plus control segment boundaries, merged.
    std::vector<Event> events;
    for (const auto& a : sched.actions()) {
        if (a.instant < 0.0 || a.instant > T) {
            throw std::invalid_argument("impulse instant outside the horizon");
        }
        events.push_back({a.instant, true, a.level});
    }
    if (u.is_exponential()) {
        for (double b : u.coefficient().breakpoints()) {
            if (b <= merge_tol || b >= T - merge_tol) continue;
            const bool near_jump =
                std::any_of(events.begin(), events.end(),
                            [&](const Event& e) { return std::abs(e.time - b) <= merge_tol; });
            if (!near_jump) events.push_back({b, false, 0.0});
        }
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.time < b.time; });

    Trajectory traj;
    double x = p.x0;
    double t_cursor = 0.0;

    auto push = [&](double t, double xv, SampleSide s) {
        if (!std::isfinite(xv)) throw NonFiniteState(t);
        traj.t.push_back(t);
        traj.x.push_back(xv);
        traj.side.push_back(s);
    };

    auto apply_jump = [&](const Event& e) {
        traj.side.back() = SampleSide::left;
        traj.jump_left_index.push_back(traj.t.size() - 1);
        x += p.Q * e.level;
        push(e.time, x, SampleSide::right);
    };

    push(0.0, x, SampleSide::interior);
    std::size_t next_event = 0;
    while (next_event < events.size() && events[next_event].time <= merge_tol) {
        // boundary-degenerate impulse at t = 0: left limit is x0
        apply_jump(events[next_event]);
        ++next_event;
    }

    auto integrate_span = [&](double a, double b) {
        const std::size_t first = traj.t.size() - 1;
        const double h = (b - a) / n_steps;
        if (u.is_exponential()) {
            const auto& pc = u.coefficient();
            // the whole span lies inside one control segment
            const double mid = 0.5 * (a + b);
            std::size_t idx = 0;
            std::size_t hi = pc.segments().size();
            while (idx + 1 < hi) {
                const std::size_t m = (idx + hi) / 2;
                if (pc.segments()[m].t_start <= mid) idx = m;
                else hi = m;
            }
            const ExponentialSegment& seg = pc.segments()[idx];
            for (int j = 1; j <= n_steps; ++j) {
                const double t0 = a + (j - 1) * h;
                const double t1 = (j == n_steps) ? b : a + j * h;
                x = std::exp(p.A * (t1 - t0)) * x + p.B * convolve_segment(p.A, seg, t0, t1);
                push(t1, x, SampleSide::interior);
            }
        } else {
            for (int j = 1; j <= n_steps; ++j) {
                const double t0 = a + (j - 1) * h;
                const double t1 = (j == n_steps) ? b : a + j * h;
                const double dt = t1 - t0;
                const double k1 = control_rhs(p, u, t0, x);
                const double k2 = control_rhs(p, u, t0 + 0.5 * dt, x + 0.5 * dt * k1);
                const double k3 = control_rhs(p, u, t0 + 0.5 * dt, x + 0.5 * dt * k2);
                const double k4 = control_rhs(p, u, t1, x + dt * k3);
                x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                push(t1, x, SampleSide::interior);
            }
        }
        traj.spans.emplace_back(first, traj.t.size() - 1);
    };

    while (next_event < events.size()) {
        const Event& e = events[next_event];
        if (e.time - t_cursor > merge_tol) {
            integrate_span(t_cursor, std::min(e.time, T));
        }
        t_cursor = e.time;
        if (e.is_jump) apply_jump(e);
        ++next_event;
    }
    if (T - t_cursor > merge_tol) {
        integrate_span(t_cursor, T);
    }

    return traj;
}

namespace {

// Composite Simpson on a uniform grid of m intervals; 3/8 rule absorbs an odd tail.
double simpson_uniform(const std::vector<double>& f, std::size_t first, std::size_t last,
                       double h) {
    const std::size_t m = last - first;
    double total = 0.0;
    std::size_t even_end = last;
    if (m % 2 != 0) {
        even_end = last - 3;  // 3/8 rule on the final three intervals
        total += 3.0 * h / 8.0 *
                 (f[even_end] + 3.0 * f[even_end + 1] + 3.0 * f[even_end + 2] + f[last]);
    }
    if (even_end > first) {
        double acc = f[first] + f[even_end];
        for (std::size_t i = first + 1; i < even_end; ++i) {
            acc += f[i] * ((i - first) % 2 == 1 ? 4.0 : 2.0);
        }
        total += h / 3.0 * acc;
    }
    return total;
}

}  // namespace

PayoffPair evaluate_payoffs(const GameParameters& p, const Trajectory& traj, const Control& u,
                            const ImpulseSchedule& sched) {
    validate_params(p);
    if (traj.jump_left_index.size() != static_cast<std::size_t>(sched.k())) {
        throw std::invalid_argument("trajectory and schedule disagree on impulse count");
    }

    PayoffPair out;
    std::vector<double> f1, f2;
    for (const auto& [first, last] : traj.spans) {
        if (last - first < 2) {
            throw GridTooCoarse("span starting at t = " + std::to_string(traj.t[first]) +
                                " has fewer than 3 samples");
        }
        const double h = (traj.t[last] - traj.t[first]) / static_cast<double>(last - first);
        f1.assign(last - first + 1, 0.0);
        f2.assign(last - first + 1, 0.0);
        for (std::size_t i = first; i <= last; ++i) {
            const Side side = (i == first) ? Side::right : Side::left;
            const double ut = u.value(traj.t[i], side);
            f1[i - first] = p.w1 * traj.x[i] + 0.5 * p.R1 * ut * ut;
            f2[i - first] = p.w2 * traj.x[i];
        }
        out.J1 += simpson_uniform(f1, 0, last - first, h);
        out.J2 += simpson_uniform(f2, 0, last - first, h);
    }

    for (std::size_t i = 0; i < traj.jump_left_index.size(); ++i) {
        const double x_left = traj.x[traj.jump_left_index[i]];
        const double v = sched.action(i).level;
        out.J1 += p.q1 * x_left;
        out.J2 += p.C + 0.5 * p.P2 * v * v;
    }

    out.J1 += p.s1 * traj.final_state();
    out.J2 += p.s2 * traj.final_state();
    if (!std::isfinite(out.J1) || !std::isfinite(out.J2)) {
        throw NonFiniteState(p.T);
    }
    return out;
}

}  // namespace lsdg
