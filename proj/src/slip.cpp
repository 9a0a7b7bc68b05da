#include "cpgrun/slip.hpp"

#include <cmath>
#include <string>

namespace cpgrun {

namespace {

// compression threshold for the liftoff precondition, relative to l0
constexpr double kCompressionEps = 1e-9;
// event functions are refined until |value| falls below this
constexpr double kEventValueTol = 1e-10;

bool finite(const SlipState& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.vx) &&
           std::isfinite(s.vy);
}

SlipState rk4(const SlipState& s, double h, double tau, const PhysicalParams& p) {
    auto deriv = [&](const SlipState& u) {
        return u.mode == Mode::Flight ? flight_derivatives(u, p) : stance_derivatives(u, tau, p);
    };
    auto shift = [&](const SlipState& u, double f, const StateDerivative& d) {
        SlipState v = u;
        v.x += f * d.dx;
        v.y += f * d.dy;
        v.vx += f * d.dvx;
        v.vy += f * d.dvy;
        return v;
    };
    const StateDerivative k1 = deriv(s);
    const StateDerivative k2 = deriv(shift(s, 0.5 * h, k1));
    const StateDerivative k3 = deriv(shift(s, 0.5 * h, k2));
    const StateDerivative k4 = deriv(shift(s, h, k3));
    SlipState out = s;
    out.t += h;
    out.x += h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    out.y += h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
    out.vx += h / 6.0 * (k1.dvx + 2.0 * k2.dvx + 2.0 * k3.dvx + k4.dvx);
    out.vy += h / 6.0 * (k1.dvy + 2.0 * k2.dvy + 2.0 * k3.dvy + k4.dvy);
    return out;
}

// Bisects for the root of `f` along the partial step [0, hi] from s.
// f must have opposite signs at 0 and hi (or |f| already below tolerance).
double refine_event_time(const SlipState& s, double tau, const PhysicalParams& p, double hi,
                         double f_lo, double (*f)(const SlipState&, const PhysicalParams&)) {
    double lo = 0.0;
    const bool falling = f_lo > 0.0;  // sign at lo; root approached from this side
    double mid = hi;
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        const SlipState sm = rk4(s, mid, tau, p);
        const double fm = f(sm, p);
        if (std::abs(fm) < kEventValueTol) return mid;
        const bool same_side = falling ? (fm > 0.0) : (fm < 0.0);
        if (same_side)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-18) break;
    }
    return 0.5 * (lo + hi);
}

double foot_height_fn(const SlipState& s, const PhysicalParams& p) {
    return foot_height(s, p);
}

double leg_extension_fn(const SlipState& s, const PhysicalParams& p) {
    const double dx = s.x - s.foothold;
    return std::hypot(dx, s.y) - p.l0;
}

}  // namespace

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::Touchdown: return "touchdown";
        case EventKind::Liftoff: return "liftoff";
        case EventKind::Fall: return "fall";
    }
    return "?";
}

const char* fall_reason_name(FallReason r) {
    switch (r) {
        case FallReason::None: return "none";
        case FallReason::LowBody: return "low_body";
        case FallReason::FootBelowGround: return "foot_below_ground";
        case FallReason::LegCrushed: return "leg_crushed";
        case FallReason::ReversedDirection: return "reversed_direction";
    }
    return "?";
}

double leg_length(const SlipState& s, const PhysicalParams& p) {
    if (s.mode == Mode::Flight) return p.l0;
    return std::hypot(s.x - s.foothold, s.y);
}

double leg_length_rate(const SlipState& s, const PhysicalParams& p) {
    (void)p;
    if (s.mode == Mode::Flight) return 0.0;
    const double dx = s.x - s.foothold;
    const double r = std::hypot(dx, s.y);
    return (dx * s.vx + s.y * s.vy) / r;
}

double leg_angle(const SlipState& s, const PhysicalParams& p) {
    if (s.mode == Mode::Flight) return -p.gamma_td;
    return std::atan2(s.x - s.foothold, s.y);
}

double leg_angle_rate(const SlipState& s, const PhysicalParams& p) {
    (void)p;
    if (s.mode == Mode::Flight) return 0.0;
    const double dx = s.x - s.foothold;
    const double r2 = dx * dx + s.y * s.y;
    return (s.y * s.vx - dx * s.vy) / r2;
}

double foot_height(const SlipState& s, const PhysicalParams& p) {
    return s.y - p.l0 * std::cos(p.gamma_td);
}

double total_energy(const SlipState& s, const PhysicalParams& p) {
    const double kinetic = 0.5 * p.m * (s.vx * s.vx + s.vy * s.vy);
    const double gravitational = p.m * p.g * s.y;
    const double compression = p.l0 - leg_length(s, p);
    const double spring = s.mode == Mode::Stance ? 0.5 * p.k * compression * compression : 0.0;
    return kinetic + gravitational + spring;
}

StateDerivative flight_derivatives(const SlipState& s, const PhysicalParams& p) {
    return {s.vx, s.vy, 0.0, -p.g};
}

StateDerivative stance_derivatives(const SlipState& s, double tau, const PhysicalParams& p) {
    const double dx = s.x - s.foothold;
    const double r = std::hypot(dx, s.y);
    const double rdot = (dx * s.vx + s.y * s.vy) / r;
    const double radial = p.k * (p.l0 - r) - p.c * rdot;
    const double tangential = tau / r;
    const double ux = dx / r, uy = s.y / r;   // leg axis, foot to mass
    const double tx = s.y / r, ty = -dx / r;  // forward tangent
    return {s.vx, s.vy,
            (radial * ux + tangential * tx) / p.m,
            (radial * uy + tangential * ty) / p.m - p.g};
}

std::optional<double> detect_touchdown(const SlipState& s, double dt, const PhysicalParams& p) {
    if (s.mode != Mode::Flight) return std::nullopt;
    const double f0 = foot_height(s, p);
    if (f0 <= 0.0) {
        if (s.vy < 0.0) return 0.0;  // already at the ground, descending
        return std::nullopt;
    }
    const SlipState s1 = rk4(s, dt, 0.0, p);
    const double f1 = foot_height(s1, p);
    if (f1 > 0.0 || s1.vy >= 0.0) return std::nullopt;  // no descending crossing
    return refine_event_time(s, 0.0, p, dt, f0, &foot_height_fn);
}

std::optional<double> detect_liftoff(const SlipState& s, double tau, double dt,
                                     const PhysicalParams& p) {
    if (s.mode != Mode::Stance) return std::nullopt;
    if (!(s.min_r < p.l0 * (1.0 - kCompressionEps))) return std::nullopt;  // needs compression
    const double f0 = leg_extension_fn(s, p);
    if (f0 >= 0.0) return std::nullopt;
    const SlipState s1 = rk4(s, dt, tau, p);
    const double f1 = leg_extension_fn(s1, p);
    if (f1 < 0.0) return std::nullopt;
    if (leg_length_rate(s1, p) <= 0.0) return std::nullopt;
    return refine_event_time(s, tau, p, dt, f0, &leg_extension_fn);
}

StepResult integrate_step(const SlipState& s, double tau, double dt, const PhysicalParams& p) {
    if (!finite(s))
        throw SimulationError("non-finite state at t = " + std::to_string(s.t));

    if (s.mode == Mode::Flight) {
        if (auto te = detect_touchdown(s, dt, p)) {
            SlipState at = (*te > 0.0) ? rk4(s, *te, 0.0, p) : s;
            at.mode = Mode::Stance;
            at.foothold = at.x + p.l0 * std::sin(p.gamma_td);
            at.min_r = std::hypot(at.x - at.foothold, at.y);
            if (!finite(at))
                throw SimulationError("non-finite state at t = " + std::to_string(s.t));
            return {at, *te, Event{EventKind::Touchdown, FallReason::None, at.t, at}};
        }
        SlipState next = rk4(s, dt, 0.0, p);
        if (!finite(next))
            throw SimulationError("non-finite state at t = " + std::to_string(s.t));
        if (next.y <= 0.2 * p.l0)
            return {next, dt, Event{EventKind::Fall, FallReason::LowBody, next.t, next}};
        return {next, dt, std::nullopt};
    }

    // stance
    if (auto te = detect_liftoff(s, tau, dt, p)) {
        SlipState at = rk4(s, *te, tau, p);
        at.mode = Mode::Flight;
        at.foothold = 0.0;
        at.min_r = 0.0;
        if (!finite(at))
            throw SimulationError("non-finite state at t = " + std::to_string(s.t));
        if (foot_height(at, p) < 0.0)  // cannot place the leg for the next step
            return {at, *te, Event{EventKind::Fall, FallReason::FootBelowGround, at.t, at}};
        return {at, *te, Event{EventKind::Liftoff, FallReason::None, at.t, at}};
    }
    SlipState next = rk4(s, dt, tau, p);
    if (!finite(next))
        throw SimulationError("non-finite state at t = " + std::to_string(s.t));
    const double r = std::hypot(next.x - next.foothold, next.y);
    next.min_r = std::min(s.min_r, r);
    if (r <= 0.5 * p.l0)
        return {next, dt, Event{EventKind::Fall, FallReason::LegCrushed, next.t, next}};
    if (next.y <= 0.2 * p.l0)
        return {next, dt, Event{EventKind::Fall, FallReason::LowBody, next.t, next}};
    return {next, dt, std::nullopt};
}

}  // namespace cpgrun
