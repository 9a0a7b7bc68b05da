#include <doctest.h>

#include <cmath>
#include <vector>

#include "cpgrun/slip.hpp"

using namespace cpgrun;

namespace {

PhysicalParams sim_params() { return PhysicalParams{}; }  // defaults are the paper set

SlipState apex_state(double y, double vx) {
    SlipState s;
    s.y = y;
    s.vx = vx;
    s.mode = Mode::Flight;
    return s;
}

SlipState touchdown_state(const PhysicalParams& p, double vx, double vy) {
    SlipState s;
    s.x = 0.0;
    s.y = p.l0 * std::cos(p.gamma_td);
    s.vx = vx;
    s.vy = vy;
    s.mode = Mode::Stance;
    s.foothold = s.x + p.l0 * std::sin(p.gamma_td);
    s.min_r = p.l0;
    return s;
}

// test-local RK4 over the flight field (for the time-reversal check)
SlipState flight_rk4(const SlipState& s, double h, const PhysicalParams& p) {
    auto shift = [](const SlipState& u, double f, const StateDerivative& d) {
        SlipState v = u;
        v.x += f * d.dx;
        v.y += f * d.dy;
        v.vx += f * d.dvx;
        v.vy += f * d.dvy;
        return v;
    };
    const StateDerivative k1 = flight_derivatives(s, p);
    const StateDerivative k2 = flight_derivatives(shift(s, 0.5 * h, k1), p);
    const StateDerivative k3 = flight_derivatives(shift(s, 0.5 * h, k2), p);
    const StateDerivative k4 = flight_derivatives(shift(s, h, k3), p);
    SlipState out = s;
    out.t += h;
    out.x += h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    out.y += h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
    out.vx += h / 6.0 * (k1.dvx + 2.0 * k2.dvx + 2.0 * k3.dvx + k4.dvx);
    out.vy += h / 6.0 * (k1.dvy + 2.0 * k2.dvy + 2.0 * k3.dvy + k4.dvy);
    return out;
}

struct StanceRun {
    SlipState end;
    std::vector<double> t, rdot, gammadot;
    bool lifted = false;
};

// integrates a stance to liftoff, logging per-substep kinematics
StanceRun run_stance(SlipState s, double tau, double dt, const PhysicalParams& p,
                     double t_max = 2.0) {
    StanceRun run;
    const double foothold = s.foothold;
    auto log = [&](const SlipState& u) {
        const double dx = u.x - foothold;
        const double r = std::hypot(dx, u.y);
        run.t.push_back(u.t);
        run.rdot.push_back((dx * u.vx + u.y * u.vy) / r);
        run.gammadot.push_back((u.y * u.vx - dx * u.vy) / (dx * dx + u.y * u.y));
    };
    log(s);
    while (s.t < t_max) {
        StepResult r = integrate_step(s, tau, dt, p);
        s = r.state;
        if (r.event && r.event->kind != EventKind::Liftoff) break;
        log(s);
        if (r.event) {  // liftoff: the mass state is continuous across the switch
            run.lifted = true;
            run.end = r.event->state;
            return run;
        }
    }
    run.end = s;
    return run;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        acc += 0.5 * (f[i] + f[i + 1]) * (t[i + 1] - t[i]);
    return acc;
}

}  // namespace

TEST_CASE("flight field: free fall with constant horizontal velocity") {
    const PhysicalParams p = sim_params();
    SlipState s = apex_state(1.2, 3.0);
    const StateDerivative d = flight_derivatives(s, p);
    CHECK(d.dvx == 0.0);
    CHECK(d.dvy == -9.8);

    // RK4 reproduces the ballistic closed form to rounding
    const double y0 = s.y;
    double t = 0.0;
    for (int i = 0; i < 2000; ++i) {
        StepResult r = integrate_step(s, 0.0, 1e-4, p);
        s = r.state;
        t += r.consumed;
        if (r.event) break;
    }
    CHECK(s.vx == 3.0);
    CHECK(s.y == doctest::Approx(y0 - 0.5 * p.g * t * t).epsilon(1e-13));
}

TEST_CASE("stance field: worked radial example and the uncompressed leg") {
    PhysicalParams p = sim_params();
    SlipState s;
    s.mode = Mode::Stance;
    s.x = 0.0;
    s.foothold = 0.0;
    s.y = 0.95;
    s.min_r = 0.95;

    // spring force 8000*0.05 = 400 N up; net vertical acceleration -1.8
    StateDerivative d = stance_derivatives(s, 0.0, p);
    CHECK(d.dvx == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d.dvy == doctest::Approx(-1.8).epsilon(1e-12));

    // independent energy-based oracle: radial force = -dU/dr
    const double h = 1e-6;
    auto U = [&p](double r) { return 0.5 * p.k * (p.l0 - r) * (p.l0 - r); };
    const double force_fd = -(U(0.95 + h) - U(0.95 - h)) / (2.0 * h);
    CHECK(p.m * (d.dvy + p.g) == doctest::Approx(force_fd).epsilon(1e-6));

    // at rest length the leg carries no load
    s.y = p.l0;
    s.min_r = p.l0;
    d = stance_derivatives(s, 0.0, p);
    CHECK(d.dvx == 0.0);
    CHECK(d.dvy == doctest::Approx(-p.g).epsilon(1e-14));
}

TEST_CASE("positive hip torque pushes the mass forward over the foothold") {
    const PhysicalParams p = sim_params();
    SlipState s;
    s.mode = Mode::Stance;
    s.x = 0.0;
    s.foothold = 0.0;
    s.y = 0.95;
    s.min_r = 0.95;
    const StateDerivative d = stance_derivatives(s, 52.0, p);
    CHECK(d.dvx > 0.0);  // vertical leg: tangential force is purely forward
    CHECK(d.dvx == doctest::Approx(52.0 / 0.95 / p.m).epsilon(1e-13));
}

TEST_CASE("touchdown detection: geometry, boundary, and direction") {
    const PhysicalParams p = sim_params();

    // dropping through the trigger height
    SlipState s = apex_state(1.0, 2.0);
    SlipState cur = s;
    std::optional<Event> ev;
    for (int i = 0; i < 100000 && !ev; ++i) {
        StepResult r = integrate_step(cur, 0.0, 1e-4, p);
        cur = r.state;
        ev = r.event;
    }
    REQUIRE(ev.has_value());
    CHECK(ev->kind == EventKind::Touchdown);
    CHECK(std::abs(ev->state.y - p.l0 * std::cos(p.gamma_td)) < 1e-9);
    CHECK(ev->state.mode == Mode::Stance);
    CHECK(std::abs((ev->state.foothold - ev->state.x) - p.l0 * std::sin(p.gamma_td)) < 1e-12);

    // exactly at the boundary, descending: immediate event
    SlipState b;
    b.mode = Mode::Flight;
    b.y = p.l0 * std::cos(p.gamma_td);
    b.vy = -0.5;
    CHECK(detect_touchdown(b, 1e-4, p) == 0.0);

    // ascending crossing: no event
    SlipState a;
    a.mode = Mode::Flight;
    a.y = p.l0 * std::cos(p.gamma_td) - 1e-6;
    a.vy = +1.0;
    CHECK_FALSE(detect_touchdown(a, 1e-3, p).has_value());
}

TEST_CASE("liftoff requires prior compression") {
    const PhysicalParams p = sim_params();

    // grazing at rest length without compression: no liftoff
    SlipState s;
    s.mode = Mode::Stance;
    s.x = 0.0;
    s.foothold = 0.0;
    s.y = p.l0 - 1e-12;
    s.vy = 0.5;
    s.min_r = p.l0;  // never compressed
    CHECK_FALSE(detect_liftoff(s, 0.0, 1e-3, p).has_value());

    // same geometry with recorded compression: fires
    s.min_r = 0.93;
    s.y = p.l0 - 1e-6;
    auto te = detect_liftoff(s, 0.0, 1e-3, p);
    REQUIRE(te.has_value());
    CHECK(*te < 1e-3);
}

TEST_CASE("a full stance ends in a liftoff with the leg back at rest length") {
    const PhysicalParams p = sim_params();
    const SlipState td = touchdown_state(p, 4.6754, -2.8355);
    const StanceRun run = run_stance(td, 52.0, 1e-4, p);
    REQUIRE(run.lifted);
    CHECK(run.end.mode == Mode::Flight);
    CHECK(std::abs(std::hypot(run.end.x - td.foothold, run.end.y) - p.l0) < 1e-9);
    CHECK(run.end.vy > 0.0);
}

TEST_CASE("energy is conserved over a conservative stance") {
    PhysicalParams p = sim_params();
    p.c = 0.0;
    const SlipState td = touchdown_state(p, 4.6754, -2.8355);
    const double E0 = total_energy(td, p);
    const StanceRun run = run_stance(td, 0.0, 1e-5, p);
    REQUIRE(run.lifted);
    SlipState end = run.end;
    const double E1 = total_energy(end, p);
    CHECK(std::abs(E1 - E0) / std::abs(E0) < 1e-8);
}

TEST_CASE("the damper loss matches an independent quadrature of rdot") {
    const PhysicalParams p = sim_params();  // c = 20
    const SlipState td = touchdown_state(p, 4.6754, -2.8355);
    const double E0 = total_energy(td, p);
    const StanceRun run = run_stance(td, 0.0, 1e-5, p);
    REQUIRE(run.lifted);
    std::vector<double> loss(run.rdot.size());
    for (std::size_t i = 0; i < loss.size(); ++i) loss[i] = p.c * run.rdot[i] * run.rdot[i];
    const double dissipated = trapezoid(run.t, loss);
    SlipState end = run.end;
    end.mode = Mode::Stance;
    end.foothold = td.foothold;
    const double dE = total_energy(end, p) - E0;
    CHECK(std::abs(dE + dissipated) / std::abs(E0) < 1e-6);
}

TEST_CASE("full energy audit with hip torque and damping") {
    const PhysicalParams p = sim_params();
    const double tau = p.tau_c;
    const SlipState td = touchdown_state(p, 4.6754, -2.8355);
    const double E0 = total_energy(td, p);
    const StanceRun run = run_stance(td, tau, 1e-5, p);
    REQUIRE(run.lifted);
    std::vector<double> net(run.rdot.size());
    for (std::size_t i = 0; i < net.size(); ++i)
        net[i] = tau * run.gammadot[i] - p.c * run.rdot[i] * run.rdot[i];
    const double injected = trapezoid(run.t, net);
    SlipState end = run.end;
    end.mode = Mode::Stance;
    end.foothold = td.foothold;
    const double dE = total_energy(end, p) - E0;
    CHECK(std::abs(dE - injected) / std::abs(E0) < 1e-6);
}

TEST_CASE("integrator order measured against the linear-stance closed form") {
    // vertical stance is exactly a damped oscillator: the production RK4 run
    // against it exposes genuine fourth-order truncation error
    const PhysicalParams p = sim_params();
    const double w0 = std::sqrt(p.k / p.m);
    const double zeta = p.c / (2.0 * std::sqrt(p.k * p.m));
    const double wd = w0 * std::sqrt(1.0 - zeta * zeta);
    const double y_eq = p.l0 - p.m * p.g / p.k;

    const double y_start = p.l0;
    const double vy_start = -1.0;
    auto closed_form = [&](double t) {
        const double u0 = y_start - y_eq;
        const double A = u0;
        const double B = (vy_start + zeta * w0 * u0) / wd;
        return y_eq + std::exp(-zeta * w0 * t) * (A * std::cos(wd * t) + B * std::sin(wd * t));
    };

    auto global_error = [&](double dt) {
        SlipState s;
        s.mode = Mode::Stance;
        s.x = 0.0;
        s.foothold = 0.0;
        s.y = y_start;
        s.vy = vy_start;
        s.min_r = y_start;
        const double horizon = 0.1;
        long n = std::lround(horizon / dt);
        for (long i = 0; i < n; ++i) {
            StepResult r = integrate_step(s, 0.0, dt, p);
            REQUIRE_FALSE(r.event.has_value());
            s = r.state;
        }
        return std::abs(s.y - closed_form(s.t));
    };

    const double e1 = global_error(2e-3);
    const double e2 = global_error(1e-3);
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
}

TEST_CASE("flight integration is time-reversible") {
    const PhysicalParams p = sim_params();
    SlipState s = apex_state(1.1, 4.0);
    s.vy = -0.7;
    const SlipState fwd = flight_rk4(s, 1e-3, p);
    const SlipState back = flight_rk4(fwd, -1e-3, p);
    CHECK(std::abs(back.x - s.x) < 1e-12);
    CHECK(std::abs(back.y - s.y) < 1e-12);
    CHECK(std::abs(back.vx - s.vx) < 1e-12);
    CHECK(std::abs(back.vy - s.vy) < 1e-12);
}

TEST_CASE("falls: crushed leg and unplaceable foot") {
    const PhysicalParams p = sim_params();

    SlipState crush;
    crush.mode = Mode::Stance;
    crush.x = 0.0;
    crush.foothold = 0.0;
    crush.y = 0.505 * p.l0;
    crush.vy = -2.0;
    crush.min_r = 0.505 * p.l0;
    std::optional<Event> crush_ev;
    SlipState cs = crush;
    for (int i = 0; i < 1000 && !crush_ev; ++i) {
        StepResult r = integrate_step(cs, 0.0, 1e-4, p);
        cs = r.state;
        crush_ev = r.event;
    }
    REQUIRE(crush_ev.has_value());
    CHECK(crush_ev->kind == EventKind::Fall);
    CHECK(crush_ev->reason == FallReason::LegCrushed);

    // liftoff whose exit height leaves the foot under ground
    SlipState low;
    low.mode = Mode::Stance;
    low.foothold = 0.0;
    low.x = 0.60;
    low.y = 0.76;
    low.vx = 3.0;
    low.vy = 2.0;
    low.min_r = 0.9;
    std::optional<Event> ev;
    SlipState cur = low;
    for (int i = 0; i < 10000 && !ev; ++i) {
        StepResult q = integrate_step(cur, 0.0, 1e-4, p);
        cur = q.state;
        ev = q.event;
    }
    REQUIRE(ev.has_value());
    CHECK(ev->kind == EventKind::Fall);
    CHECK(ev->reason == FallReason::FootBelowGround);
}

TEST_CASE("non-finite state is a diagnostic error") {
    const PhysicalParams p = sim_params();
    SlipState s = apex_state(1.0, 1.0);
    s.vx = std::nan("");
    CHECK_THROWS_AS(integrate_step(s, 0.0, 1e-4, p), SimulationError);
}
