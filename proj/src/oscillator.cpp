#include "cpgrun/oscillator.hpp"

#include <cmath>

namespace cpgrun {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

PhaseRates phase_derivatives(const OscillatorPair& osc, const ControllerParams& params) {
    const double base = kPi / osc.T_e;
    PhaseRates r;
    r.dphi_r = base + params.epsilon * std::sin((osc.phi_l - osc.phi_r) - kPi);
    r.dphi_l = base + params.epsilon * std::sin((osc.phi_r - osc.phi_l) - kPi);
    return r;
}

OscillatorPair apply_phase_reset(const OscillatorPair& osc, Leg leg) {
    OscillatorPair out = osc;
    if (leg == Leg::Right)
        out.phi_r = 0.0;
    else
        out.phi_l = 0.0;
    return out;
}

double update_estimated_half_period(double T_e_n, double dT_n, double dT_prev, double T_n,
                                    const ControllerParams& params) {
    if (!std::isfinite(T_e_n) || !std::isfinite(dT_n) || !std::isfinite(dT_prev) ||
        !std::isfinite(T_n) || T_n <= 0.0) {
        throw SimulationError("half-period update received a non-finite or non-positive input");
    }
    double next = T_e_n - params.Kp * dT_n - params.Kd * (dT_n - dT_prev) / T_n;
    if (next < kTeFloorSeconds) next = kTeFloorSeconds;
    return next;
}

double wrap_two_pi(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

OscillatorPair advance(const OscillatorPair& osc, double dt, const ControllerParams& params) {
    auto rate = [&params](double phi_r, double phi_l, double T_e) {
        OscillatorPair tmp;
        tmp.phi_r = phi_r;
        tmp.phi_l = phi_l;
        tmp.T_e = T_e;
        return phase_derivatives(tmp, params);
    };

    const PhaseRates k1 = rate(osc.phi_r, osc.phi_l, osc.T_e);
    const PhaseRates k2 = rate(osc.phi_r + 0.5 * dt * k1.dphi_r, osc.phi_l + 0.5 * dt * k1.dphi_l, osc.T_e);
    const PhaseRates k3 = rate(osc.phi_r + 0.5 * dt * k2.dphi_r, osc.phi_l + 0.5 * dt * k2.dphi_l, osc.T_e);
    const PhaseRates k4 = rate(osc.phi_r + dt * k3.dphi_r, osc.phi_l + dt * k3.dphi_l, osc.T_e);

    OscillatorPair out = osc;
    out.phi_r += dt / 6.0 * (k1.dphi_r + 2.0 * k2.dphi_r + 2.0 * k3.dphi_r + k4.dphi_r);
    out.phi_l += dt / 6.0 * (k1.dphi_l + 2.0 * k2.dphi_l + 2.0 * k3.dphi_l + k4.dphi_l);

    if (out.phi_r >= kTwoPi || out.phi_r < 0.0) {
        double w = wrap_two_pi(out.phi_r);
        out.wraps_r += static_cast<std::int64_t>(std::llround((out.phi_r - w) / kTwoPi));
        out.phi_r = w;
    }
    if (out.phi_l >= kTwoPi || out.phi_l < 0.0) {
        double w = wrap_two_pi(out.phi_l);
        out.wraps_l += static_cast<std::int64_t>(std::llround((out.phi_l - w) / kTwoPi));
        out.phi_l = w;
    }
    return out;
}

}  // namespace cpgrun
