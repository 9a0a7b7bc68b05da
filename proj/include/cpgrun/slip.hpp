#pragma once

#include <optional>

#include "cpgrun/params.hpp"

namespace cpgrun {

enum class Mode { Flight, Stance };

inline const char* mode_name(Mode m) { return m == Mode::Flight ? "flight" : "stance"; }

/// Hybrid plant state. `foothold` and `min_r` are meaningful in Stance only;
/// min_r tracks the smallest leg length since touchdown (the liftoff event
/// requires prior compression).
struct SlipState {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    Mode mode = Mode::Flight;
    double foothold = 0.0;
    double min_r = 0.0;
};

struct StateDerivative {
    double dx = 0.0, dy = 0.0, dvx = 0.0, dvy = 0.0;
};

enum class EventKind { Touchdown, Liftoff, Fall };

enum class FallReason {
    None,
    LowBody,            // y dropped to 0.2*l0
    FootBelowGround,    // flight entered with the foot already under ground
    LegCrushed,         // stance leg compressed to 0.5*l0
    ReversedDirection,  // vx <= 0 sustained for a full step
};

const char* event_kind_name(EventKind k);
const char* fall_reason_name(FallReason r);

struct Event {
    EventKind kind = EventKind::Touchdown;
    FallReason reason = FallReason::None;
    double t = 0.0;
    SlipState state;  // snapshot after the mode switch
};

/// Leg length r in stance; l0 in flight (kinematic leg).
double leg_length(const SlipState& s, const PhysicalParams& p);

/// dr/dt in stance; 0 in flight.
double leg_length_rate(const SlipState& s, const PhysicalParams& p);

/// Leg angle from vertical, positive when the foot trails the mass. Grows
/// monotonically through a forward stance; held at -gamma_td in flight.
double leg_angle(const SlipState& s, const PhysicalParams& p);

/// d(gamma)/dt in stance; 0 in flight.
double leg_angle_rate(const SlipState& s, const PhysicalParams& p);

/// Height of the (kinematically held) foot above ground during flight:
/// y - l0*cos(gamma_td). Touchdown fires when this crosses zero descending.
double foot_height(const SlipState& s, const PhysicalParams& p);

/// Kinetic + gravitational + spring energy.
double total_energy(const SlipState& s, const PhysicalParams& p);

/// Ballistic flight: x'' = 0, y'' = -g.
StateDerivative flight_derivatives(const SlipState& s, const PhysicalParams& p);

/// Spring-damper leg about a frictionless foot joint plus hip torque:
///   a = [k(l0-r) - c*rdot]/m * u_hat + (tau/r)/m * t_hat - g*y_hat
/// with u_hat the unit leg axis (foot to mass) and t_hat the forward tangent.
/// Positive tau accelerates the body forward over the foothold.
StateDerivative stance_derivatives(const SlipState& s, double tau, const PhysicalParams& p);

/// Searches (0, dt] for a touchdown of the descending foot; returns the
/// bisection-refined event time offset, or nullopt. A state already at the
/// ground with vy < 0 returns 0 (immediate touchdown).
std::optional<double> detect_touchdown(const SlipState& s, double dt, const PhysicalParams& p);

/// Searches (0, dt] under torque `tau` for the leg re-extending to l0 after
/// compression; returns the refined event time offset, or nullopt.
std::optional<double> detect_liftoff(const SlipState& s, double tau, double dt,
                                     const PhysicalParams& p);

struct StepResult {
    SlipState state;     // after the (possibly partial) step and any mode switch
    double consumed = 0.0;  // time advanced; equals dt when no event fired
    std::optional<Event> event;
};

/// One fixed step of classical RK4 on the active mode's derivatives. If an
/// event function changes sign within the step, the step is cut at the
/// refined event time, the mode switch is applied, and the event is returned;
/// the caller decides how to continue. Throws SimulationError when the state
/// goes non-finite, carrying the last good time in the message.
StepResult integrate_step(const SlipState& s, double tau, double dt, const PhysicalParams& p);

}  // namespace cpgrun
