#include "cpgrun/pattern.hpp"

#include <algorithm>
#include <cmath>

namespace cpgrun {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

const char* category_name(PhaseCategory c) {
    switch (c) {
        case PhaseCategory::Stance: return "stance";
        case PhaseCategory::EarlySwing: return "early_swing";
        case PhaseCategory::LateSwing: return "late_swing";
    }
    return "?";
}

const char* hip_action_name(HipAction a) {
    switch (a) {
        case HipAction::KickTorque: return "kick";
        case HipAction::PassiveSwing: return "passive";
        case HipAction::RetractTorque: return "retract";
    }
    return "?";
}

const char* vastus_action_name(VastusAction a) {
    switch (a) {
        case VastusAction::Tighten: return "tighten";
        case VastusAction::Relax: return "relax";
        case VastusAction::Pretension: return "pretension";
    }
    return "?";
}

PhaseCategory categorize_phase(double phi, double beta, double mu) {
    if (phi >= kTwoPi || phi < 0.0) {
        phi = std::fmod(phi, kTwoPi);
        if (phi < 0.0) phi += kTwoPi;
    }
    if (phi < kTwoPi * beta) return PhaseCategory::Stance;
    if (phi < kTwoPi * mu) return PhaseCategory::EarlySwing;
    return PhaseCategory::LateSwing;
}

HipCommand hip_command(PhaseCategory category, double tau_c) {
    switch (category) {
        case PhaseCategory::Stance: return {HipAction::KickTorque, tau_c};
        case PhaseCategory::EarlySwing: return {HipAction::PassiveSwing, 0.0};
        case PhaseCategory::LateSwing: return {HipAction::RetractTorque, tau_c};
    }
    return {HipAction::PassiveSwing, 0.0};
}

VastusAction vastus_command(PhaseCategory category, bool grounded, double theta_deg) {
    if (category == PhaseCategory::Stance && grounded) return VastusAction::Tighten;
    if (theta_deg > kPretensionAngleDeg) return VastusAction::Pretension;
    return VastusAction::Relax;
}

double update_mu(double mu_n, double theta_s_n_deg, const ControllerParams& params) {
    if (!std::isfinite(theta_s_n_deg))
        throw SimulationError("mu update received a non-finite swing angle");
    const double error = theta_s_n_deg - params.theta_s_d;
    const double K_mu = (error > 0.0) ? params.K_mu_over : params.K_mu_under;
    const double raw = mu_n - K_mu * error;
    const double lo = params.beta + 0.02;
    const double hi = 0.98;
    return std::clamp(raw, lo, hi);
}

}  // namespace cpgrun
