#include "cpgrun/params.hpp"

#include <cmath>

namespace cpgrun {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
}

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw ConfigError(std::string(field) + " must be finite");
}

}  // namespace

ValidatedConfig validate(const SimConfig& raw) {
    const auto& p = raw.physical;
    require_finite(p.m, "m");
    require_finite(p.l0, "l0");
    require_finite(p.k, "k");
    require_finite(p.c, "c");
    require_finite(p.g, "g");
    require_finite(p.tau_c, "tau_c");
    require_finite(p.gamma_td, "gamma_td");
    require(p.m > 0.0, "m must be positive");
    require(p.l0 > 0.0, "l0 must be positive");
    require(p.k > 0.0, "k must be positive");
    require(p.c >= 0.0, "c must be non-negative");
    require(p.g > 0.0, "g must be positive");
    require(p.gamma_td > 0.0 && p.gamma_td < std::numbers::pi / 2.0,
            "gamma_td must be in (0, pi/2)");

    const auto& c = raw.controller;
    require_finite(c.epsilon, "epsilon");
    require_finite(c.Kp, "Kp");
    require_finite(c.Kd, "Kd");
    require_finite(c.T0_e, "T0_e");
    require_finite(c.beta, "beta");
    require_finite(c.mu0, "mu0");
    require_finite(c.K_mu_over, "K_mu_over");
    require_finite(c.K_mu_under, "K_mu_under");
    require_finite(c.theta_s_d, "theta_s_d");
    require(c.epsilon >= 0.0, "epsilon must be non-negative");
    require(c.T0_e > 0.0, "T0_e must be positive");
    require(c.beta > 0.0 && c.beta < 1.0, "beta must be in (0, 1)");
    require(c.mu0 > c.beta, "mu0 must exceed beta");
    require(c.mu0 < 1.0, "mu0 must be below 1");
    require(c.Kp >= 0.0, "Kp must be non-negative");
    require(c.Kd >= 0.0, "Kd must be non-negative");
    require(c.K_mu_over >= 0.0, "K_mu_over must be non-negative");
    require(c.K_mu_under >= 0.0, "K_mu_under must be non-negative");
    // the mu clamp range [beta + 0.02, 0.98] must be non-empty
    require(c.beta <= 0.96, "beta must be at most 0.96 to leave room for the mu clamp");

    const auto& s = raw.simulation;
    require_finite(s.y0, "y0");
    require_finite(s.vx0, "vx0");
    require_finite(s.dt, "dt");
    require(s.y0 > 0.0, "y0 must be positive");
    require(s.dt > 0.0, "dt must be positive");
    require(s.max_steps >= 0, "max_steps must be non-negative");
    require(s.decimation >= 1, "decimation must be at least 1");

    return ValidatedConfig(raw);
}

SimConfig preset_config(Preset p) {
    SimConfig cfg;  // defaults are the with-feedback simulation set
    switch (p) {
        case Preset::WithFeedback:
            break;
        case Preset::WithoutFeedback:
            cfg.controller.Kp = 0.0;
            cfg.controller.Kd = 0.0;
            break;
        case Preset::RobotControllerUnit:
            cfg.physical.m = 20.0;
            cfg.physical.l0 = 0.76;
            cfg.physical.tau_c = 3.0;
            cfg.controller.Kp = 0.1;
            cfg.controller.Kd = 0.0;
            cfg.controller.T0_e = 0.55;
            cfg.controller.beta = 0.25;
            cfg.controller.mu0 = 0.6;
            break;
    }
    return cfg;
}

Preset parse_preset(const std::string& name) {
    if (name == "with-feedback") return Preset::WithFeedback;
    if (name == "without-feedback") return Preset::WithoutFeedback;
    if (name == "robot-controller-unit") return Preset::RobotControllerUnit;
    throw ConfigError("unknown preset: " + name);
}

const char* preset_name(Preset p) {
    switch (p) {
        case Preset::WithFeedback: return "with-feedback";
        case Preset::WithoutFeedback: return "without-feedback";
        case Preset::RobotControllerUnit: return "robot-controller-unit";
    }
    return "?";
}

}  // namespace cpgrun
