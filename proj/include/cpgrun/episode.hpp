#pragma once

#include <optional>
#include <vector>

#include "cpgrun/oscillator.hpp"
#include "cpgrun/params.hpp"
#include "cpgrun/pattern.hpp"
#include "cpgrun/slip.hpp"

namespace cpgrun {

/// One touchdown. T is the half-period ending at this touchdown; the first
/// touchdown has none (the drop from the initial apex is not a step).
/// T_e is the estimate that was active during that interval, i.e. the value
/// before the update performed at this touchdown.
struct StepRecord {
    long n = 0;
    double t_td = 0.0;
    Leg leg = Leg::Right;
    std::optional<double> T;
    double T_e = 0.0;
};

/// Pre-reset phases sampled immediately before an odd (right-leg) touchdown.
/// phi_minus = phi_R - phi_L wrapped into [0, 2*pi); psi_minus = phi_R + phi_L.
struct StrideRecord {
    long N = 0;
    double t_td = 0.0;
    double phi_minus = 0.0;
    double psi_minus = 0.0;
};

struct GaitTimeline {
    std::vector<StepRecord> steps;
    std::vector<StrideRecord> strides;
};

struct TrajectorySample {
    double t = 0.0;
    Mode mode = Mode::Flight;
    double x = 0.0, y = 0.0, vx = 0.0, vy = 0.0;
    double r = 0.0;      // leg length
    double gamma = 0.0;  // leg angle from vertical, forward-rotation positive
    double tau = 0.0;    // hip torque applied over the step
    double energy = 0.0;
};

struct CommandSample {
    double t = 0.0;
    Leg leg = Leg::Right;
    double phi = 0.0;
    PhaseCategory category = PhaseCategory::Stance;
    HipCommand hip;
    VastusAction vastus = VastusAction::Relax;
};

enum class TerminationKind { Completed, Fell };

struct Termination {
    TerminationKind kind = TerminationKind::Completed;
    long steps = 0;               // touchdowns survived
    FallReason reason = FallReason::None;
    double t = 0.0;               // episode end time
};

struct EpisodeResult {
    SimConfig config;
    GaitTimeline timeline;
    std::vector<TrajectorySample> trajectory;  // decimated
    std::vector<CommandSample> commands;       // decimated, controlling oscillator
    std::vector<Event> events;
    Termination termination;
};

/// Drops the initial apex state to the first touchdown. Returns the hybrid
/// state just after that touchdown was processed (n = 1, right leg, phase
/// reset applied), or the Fall termination when the leg cannot be placed.
struct BootstrapResult {
    SlipState state;
    OscillatorPair osc;
    GaitTimeline timeline;
    std::optional<Termination> fell;
};
BootstrapResult first_touchdown_bootstrap(const ValidatedConfig& config);

/// Runs the closed loop until a Fall or the touchdown budget. A Fall is a
/// normal result; integrator diagnostics propagate as SimulationError.
EpisodeResult run_episode(const ValidatedConfig& config);

}  // namespace cpgrun
