#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace cpgrun {

/// Raised when a configuration value violates an invariant or cannot be parsed.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when the integrator or an update rule receives a non-finite state.
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Plant constants. SI units throughout; angles in radians unless noted.
struct PhysicalParams {
    double m = 50.0;         // body mass [kg]
    double l0 = 1.0;         // nominal leg length [m]
    double k = 8000.0;       // leg stiffness [N/m]
    double c = 20.0;         // axial leg damping [N s/m]
    double g = 9.8;          // gravitational acceleration [m/s^2]
    double tau_c = 52.0;     // constant hip torque during stance [N m]
    double gamma_td = std::numbers::pi / 6.0;  // touchdown leg angle from vertical [rad]
};

/// Controller constants. Thigh angles are in degrees; oscillator phases in radians.
struct ControllerParams {
    double epsilon = 4.0;    // phase-coupling gain [1/s]
    double Kp = 0.8;         // proportional gain of the period adaptation
    double Kd = 0.1;         // derivative gain of the period adaptation
    double T0_e = 0.5;       // initial estimated half-period [s]
    double beta = 0.6;       // duty rate, stance phase range is [0, 2*pi*beta)
    double mu0 = 0.8;        // initial late-swing onset rate, in (beta, 1)
    double K_mu_over = 0.005;   // mu gain when overshooting the target angle [1/deg]
    double K_mu_under = 0.1;    // mu gain when undershooting [1/deg]
    double theta_s_d = 35.0;    // target thigh swing angle [deg]
};

/// Episode setup: initial apex state, integration step, budgets, output cadence.
struct SimulationParams {
    double y0 = 1.2764;      // apex height of the initial condition [m]
    double vx0 = 4.6754;     // forward speed at the initial apex [m/s]
    double dt = 1e-4;        // fixed integration step [s]
    long max_steps = 3000;   // touchdown budget; episode completes when reached
    long decimation = 10;    // trajectory/command log every N integration steps
    bool mu_adaptation = false;  // apply the mu update during episodes
};

struct SimConfig {
    PhysicalParams physical;
    ControllerParams controller;
    SimulationParams simulation;
};

/// A SimConfig that passed validate(). Immutable; share freely across workers.
class ValidatedConfig {
public:
    const SimConfig& operator*() const { return cfg_; }
    const SimConfig* operator->() const { return &cfg_; }
    const SimConfig& get() const { return cfg_; }

private:
    friend ValidatedConfig validate(const SimConfig& raw);
    explicit ValidatedConfig(const SimConfig& cfg) : cfg_(cfg) {}
    SimConfig cfg_;
};

/// Checks every field invariant. Throws ConfigError naming the first violated
/// field and its bound. The returned value is the input, unmodified.
ValidatedConfig validate(const SimConfig& raw);

enum class Preset { WithFeedback, WithoutFeedback, RobotControllerUnit };

/// Built-in parameter sets. `with-feedback` and `without-feedback` differ only
/// in (Kp, Kd); `robot-controller-unit` carries the hardware controller
/// constants and is not meant to drive the plant.
SimConfig preset_config(Preset p);

/// Parses one of "with-feedback", "without-feedback", "robot-controller-unit".
Preset parse_preset(const std::string& name);
const char* preset_name(Preset p);

}  // namespace cpgrun
