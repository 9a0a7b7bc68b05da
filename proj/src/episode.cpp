#include "cpgrun/episode.hpp"

#include <cmath>

namespace cpgrun {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

Leg step_leg(long n) { return (n % 2 == 1) ? Leg::Right : Leg::Left; }

double controlling_phase(const OscillatorPair& osc, long n) {
    return step_leg(n) == Leg::Right ? osc.phi_r : osc.phi_l;
}

/// Thigh angle in degrees, swing-forward positive (foot ahead of the hip).
double thigh_angle_deg(const SlipState& s, const PhysicalParams& p) {
    return -leg_angle(s, p) * kRadToDeg;
}

class EpisodeRunner {
public:
    explicit EpisodeRunner(const ValidatedConfig& config) : cfg_(config.get()) {
        state_.t = 0.0;
        state_.x = 0.0;
        state_.y = cfg_.simulation.y0;
        state_.vx = cfg_.simulation.vx0;
        state_.vy = 0.0;
        state_.mode = Mode::Flight;
        osc_.T_e = cfg_.controller.T0_e;
        mu_ = cfg_.controller.mu0;
        // generous wall on episodes that neither step nor fall
        t_limit_ = std::max(3600.0, 10.0 * (static_cast<double>(cfg_.simulation.max_steps) + 1.0));
    }

    EpisodeResult run(std::optional<long> stop_after_step = std::nullopt) {
        EpisodeResult out;
        out.config = cfg_;

        if (cfg_.simulation.max_steps == 0) {
            out.termination = {TerminationKind::Completed, 0, FallReason::None, 0.0};
            return out;
        }

        log_sample(out, 0.0);
        if (foot_height(state_, cfg_.physical) < 0.0) {
            // the leg cannot be placed from this apex
            Event ev{EventKind::Fall, FallReason::FootBelowGround, state_.t, state_};
            out.events.push_back(ev);
            out.termination = {TerminationKind::Fell, 0, FallReason::FootBelowGround, state_.t};
            return out;
        }

        while (true) {
            const double tau = current_torque();
            StepResult step = integrate_step(state_, tau, cfg_.simulation.dt, cfg_.physical);
            state_ = step.state;
            if (step.consumed > 0.0)
                osc_ = advance(osc_, step.consumed, cfg_.controller);
            ++iteration_;

            track_late_swing_onset();

            if (step.event) {
                out.events.push_back(*step.event);
                switch (step.event->kind) {
                    case EventKind::Touchdown: {
                        handle_touchdown(out);
                        log_sample(out, current_torque());
                        if (n_ >= cfg_.simulation.max_steps) {
                            out.termination = {TerminationKind::Completed, n_, FallReason::None,
                                               state_.t};
                            return out;
                        }
                        if (stop_after_step && n_ >= *stop_after_step) {
                            out.termination = {TerminationKind::Completed, n_, FallReason::None,
                                               state_.t};
                            return out;
                        }
                        continue;
                    }
                    case EventKind::Liftoff:
                        log_sample(out, 0.0);
                        continue;
                    case EventKind::Fall:
                        out.termination = {TerminationKind::Fell, n_, step.event->reason,
                                           state_.t};
                        log_sample(out, current_torque());
                        return out;
                }
            }

            if (check_reversed_direction(out)) return out;

            if (iteration_ % cfg_.simulation.decimation == 0) log_sample(out, tau);

            if (state_.t > t_limit_)
                throw SimulationError("episode made no touchdown progress by t = " +
                                      std::to_string(state_.t));
        }
    }

    const SlipState& state() const { return state_; }
    const OscillatorPair& oscillators() const { return osc_; }

private:
    double current_torque() const {
        if (state_.mode != Mode::Stance) return 0.0;
        const double phi = controlling_phase(osc_, n_);
        const auto cat = categorize_phase(phi, cfg_.controller.beta, mu_);
        return cat == PhaseCategory::Stance ? cfg_.physical.tau_c : 0.0;
    }

    void handle_touchdown(EpisodeResult& out) {
        ++n_;
        const Leg leg = step_leg(n_);
        // pre-reset phases; psi reproduces the 3*pi scale of the phase sum
        if (n_ % 2 == 1) {
            StrideRecord sr;
            sr.N = (n_ + 1) / 2;
            sr.t_td = state_.t;
            sr.phi_minus = wrap_two_pi(osc_.phi_r - osc_.phi_l);
            sr.psi_minus = osc_.phi_r + osc_.phi_l;
            out.timeline.strides.push_back(sr);
        }

        StepRecord rec;
        rec.n = n_;
        rec.t_td = state_.t;
        rec.leg = leg;
        rec.T_e = osc_.T_e;  // estimate that governed the interval ending here
        if (t_td_prev_) rec.T = state_.t - *t_td_prev_;
        out.timeline.steps.push_back(rec);

        osc_ = apply_phase_reset(osc_, leg);

        if (rec.T) {
            last_T_ = *rec.T;
            const auto& ctrl = cfg_.controller;
            if (ctrl.Kp != 0.0 || ctrl.Kd != 0.0) {
                const double dT = osc_.T_e - *rec.T;
                const double dT_prev = osc_.dT_prev.value_or(dT);
                osc_.T_e = update_estimated_half_period(osc_.T_e, dT, dT_prev, *rec.T, ctrl);
                osc_.dT_prev = dT;
            }
            if (cfg_.simulation.mu_adaptation && theta_s_pending_) {
                mu_ = update_mu(mu_, *theta_s_pending_, ctrl);
                theta_s_pending_.reset();
            }
        }
        t_td_prev_ = state_.t;
        prev_phi_.reset();  // control hands over to the other oscillator
    }

    // Samples the thigh angle when the controlling oscillator enters late
    // swing; consumed by the mu update at the next touchdown.
    void track_late_swing_onset() {
        if (!cfg_.simulation.mu_adaptation || n_ == 0) return;
        const double phi = controlling_phase(osc_, n_);
        const double onset = 2.0 * std::numbers::pi * mu_;
        if (prev_phi_ && *prev_phi_ < onset && phi >= onset)
            theta_s_pending_ = thigh_angle_deg(state_, cfg_.physical);
        prev_phi_ = phi;
    }

    bool check_reversed_direction(EpisodeResult& out) {
        if (state_.vx > 0.0) {
            vx_nonpos_since_.reset();
            return false;
        }
        if (!vx_nonpos_since_) vx_nonpos_since_ = state_.t;
        const double span = last_T_ ? *last_T_ : 2.0 * cfg_.controller.T0_e;
        if (state_.t - *vx_nonpos_since_ <= span) return false;
        Event ev{EventKind::Fall, FallReason::ReversedDirection, state_.t, state_};
        out.events.push_back(ev);
        out.termination = {TerminationKind::Fell, n_, FallReason::ReversedDirection, state_.t};
        return true;
    }

    void log_sample(EpisodeResult& out, double tau) {
        TrajectorySample ts;
        ts.t = state_.t;
        ts.mode = state_.mode;
        ts.x = state_.x;
        ts.y = state_.y;
        ts.vx = state_.vx;
        ts.vy = state_.vy;
        ts.r = leg_length(state_, cfg_.physical);
        ts.gamma = leg_angle(state_, cfg_.physical);
        ts.tau = tau;
        ts.energy = total_energy(state_, cfg_.physical);
        out.trajectory.push_back(ts);

        CommandSample cs;
        cs.t = state_.t;
        cs.leg = n_ == 0 ? Leg::Right : step_leg(n_);
        cs.phi = n_ == 0 ? osc_.phi_r : controlling_phase(osc_, n_);
        cs.category = categorize_phase(cs.phi, cfg_.controller.beta, mu_);
        cs.hip = hip_command(cs.category, cfg_.physical.tau_c);
        cs.vastus = vastus_command(cs.category, state_.mode == Mode::Stance,
                                   thigh_angle_deg(state_, cfg_.physical));
        out.commands.push_back(cs);
    }

    SimConfig cfg_;
    SlipState state_;
    OscillatorPair osc_;
    double mu_ = 0.0;
    long n_ = 0;
    long iteration_ = 0;
    double t_limit_ = 0.0;
    std::optional<double> t_td_prev_;
    std::optional<double> last_T_;
    std::optional<double> vx_nonpos_since_;
    std::optional<double> prev_phi_;
    std::optional<double> theta_s_pending_;
};

}  // namespace

BootstrapResult first_touchdown_bootstrap(const ValidatedConfig& config) {
    EpisodeRunner runner(config);
    EpisodeResult rc = runner.run(/*stop_after_step=*/1);
    BootstrapResult out;
    out.state = runner.state();
    out.osc = runner.oscillators();
    out.timeline = rc.timeline;
    if (rc.termination.kind == TerminationKind::Fell) out.fell = rc.termination;
    return out;
}

EpisodeResult run_episode(const ValidatedConfig& config) {
    EpisodeRunner runner(config);
    return runner.run();
}

}  // namespace cpgrun
