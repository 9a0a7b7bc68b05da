#pragma once

#include "cpgrun/params.hpp"

namespace cpgrun {

enum class PhaseCategory { Stance, EarlySwing, LateSwing };

const char* category_name(PhaseCategory c);

enum class HipAction { KickTorque, PassiveSwing, RetractTorque };
enum class VastusAction { Tighten, Relax, Pretension };

const char* hip_action_name(HipAction a);
const char* vastus_action_name(VastusAction a);

/// Hip motor command plus the torque magnitude it carries (0 for PassiveSwing).
struct HipCommand {
    HipAction action = HipAction::PassiveSwing;
    double torque = 0.0;  // [N m]
};

struct ActuatorCommand {
    HipCommand hip;
    VastusAction vastus = VastusAction::Relax;
};

// Above this thigh angle the vastus wire is slightly tightened in
// preparation for landing.
inline constexpr double kPretensionAngleDeg = 20.0;

/// Splits the cycle: Stance on [0, 2*pi*beta), EarlySwing on
/// [2*pi*beta, 2*pi*mu), LateSwing on [2*pi*mu, 2*pi). Phases at or above
/// 2*pi are treated modulo one cycle.
PhaseCategory categorize_phase(double phi, double beta, double mu);

/// Stance -> kick with tau_c; EarlySwing -> passive (rubber band only);
/// LateSwing -> retract with tau_c.
HipCommand hip_command(PhaseCategory category, double tau_c);

/// Vastus switching. The physical state wins over the phase category: a leg
/// not on the ground never tightens, whatever its category says.
VastusAction vastus_command(PhaseCategory category, bool grounded, double theta_deg);

/// Slow adaptation of the late-swing onset rate:
///   mu' = mu - K_mu * (theta_s - theta_d),   K_mu switched per the over- or
/// undershoot of theta_s against theta_d, result clamped to
/// [beta + 0.02, 0.98]. Angles in degrees. Throws SimulationError on
/// non-finite theta_s.
double update_mu(double mu_n, double theta_s_n_deg, const ControllerParams& params);

}  // namespace cpgrun
