#pragma once

#include <cstdint>
#include <optional>

#include "cpgrun/params.hpp"

namespace cpgrun {

enum class Leg { Right, Left };

inline const char* leg_name(Leg l) { return l == Leg::Right ? "R" : "L"; }

/// The coupled phase pair of the rhythm generator.
///
/// Phases are wrapped into [0, 2*pi) at integration-step boundaries; a value
/// sampled mid-step (at a touchdown event) may sit marginally above 2*pi
/// until the step completes. Wrap counts accumulate for diagnostics.
struct OscillatorPair {
    double phi_r = 0.0;      // right phase [rad]
    double phi_l = 0.0;      // left phase [rad]
    double T_e = 0.5;        // current estimated half-period [s]
    std::optional<double> dT_prev;  // previous period error; empty before the first update
    std::int64_t wraps_r = 0;
    std::int64_t wraps_l = 0;
};

struct PhaseRates {
    double dphi_r = 0.0;  // [rad/s]
    double dphi_l = 0.0;  // [rad/s]
};

/// Continuous part of the oscillator dynamics:
///   dphi_R/dt = pi/T_e + eps*sin((phi_L - phi_R) - pi)
///   dphi_L/dt = pi/T_e + eps*sin((phi_R - phi_L) - pi)
/// The touchdown reset is the discrete op apply_phase_reset, not a term here.
PhaseRates phase_derivatives(const OscillatorPair& osc, const ControllerParams& params);

/// Fast adaptation: zeroes the touched-down leg's phase, leaves the other.
OscillatorPair apply_phase_reset(const OscillatorPair& osc, Leg leg);

// T_e is never allowed below this floor; the update rule with a large period
// error could otherwise drive it through zero and blow up pi/T_e.
inline constexpr double kTeFloorSeconds = 0.05;

/// Slow adaptation of the estimated half-period:
///   T_e' = T_e - Kp*dT - Kd*(dT - dT_prev)/T_n,  clamped to >= kTeFloorSeconds.
/// Throws SimulationError on non-finite input.
double update_estimated_half_period(double T_e_n, double dT_n, double dT_prev, double T_n,
                                    const ControllerParams& params);

/// Advances both phases by one RK4 step of size dt, then wraps each into
/// [0, 2*pi), accumulating wrap counts. T_e and dT_prev pass through.
OscillatorPair advance(const OscillatorPair& osc, double dt, const ControllerParams& params);

/// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double angle);

}  // namespace cpgrun
