#include "cpgrun/analysis.hpp"

#include <cmath>
#include <sstream>

#include "cpgrun/config_io.hpp"

namespace cpgrun {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Ok: return "ok";
        case Verdict::Converged: return "converged";
        case Verdict::NotConverged: return "not_converged";
        case Verdict::NotEnoughData: return "not_enough_data";
    }
    return "?";
}

PeriodConvergence period_convergence(const GaitTimeline& timeline, double tol, int window) {
    PeriodConvergence out;
    std::vector<const StepRecord*> measured;
    for (const auto& s : timeline.steps)
        if (s.T) measured.push_back(&s);
    if (measured.size() < 10) return out;  // NotEnoughData

    // length of the trailing run of in-tolerance steps
    long trailing = 0;
    for (auto it = measured.rbegin(); it != measured.rend(); ++it) {
        if (std::abs((*it)->T_e - *(*it)->T) < tol)
            ++trailing;
        else
            break;
    }
    const std::size_t w = std::min<std::size_t>(window, measured.size());
    double sum = 0.0;
    for (std::size_t i = measured.size() - w; i < measured.size(); ++i)
        sum += std::abs(measured[i]->T_e - *measured[i]->T);
    out.residual = sum / static_cast<double>(w);
    if (trailing >= static_cast<long>(w)) {
        out.verdict = Verdict::Converged;
        out.step_of_convergence = measured[measured.size() - trailing]->n;
    } else {
        out.verdict = Verdict::NotConverged;
        out.step_of_convergence = 0;
    }
    return out;
}

PhaseStatistics phase_statistics(const GaitTimeline& timeline, int terminal_window) {
    PhaseStatistics out;
    for (const auto& s : timeline.strides) {
        out.phi_minus.push_back(s.phi_minus);
        out.psi_minus.push_back(s.psi_minus);
    }
    if (out.phi_minus.size() < 3) return out;  // NotEnoughData
    const std::size_t w = std::min<std::size_t>(terminal_window, out.phi_minus.size());
    double sp = 0.0, ss = 0.0;
    for (std::size_t i = out.phi_minus.size() - w; i < out.phi_minus.size(); ++i) {
        sp += out.phi_minus[i];
        ss += out.psi_minus[i];
    }
    out.phi_terminal_mean = sp / static_cast<double>(w);
    out.psi_terminal_mean = ss / static_cast<double>(w);
    out.verdict = Verdict::Ok;
    return out;
}

ApexMap apex_map(const std::vector<TrajectorySample>& trajectory, int terminal_window) {
    ApexMap out;
    for (std::size_t i = 1; i + 1 < trajectory.size(); ++i) {
        const auto& a = trajectory[i - 1];
        const auto& b = trajectory[i];
        const auto& c = trajectory[i + 1];
        if (a.mode != Mode::Flight || b.mode != Mode::Flight || c.mode != Mode::Flight) continue;
        if (!(b.vy >= 0.0 && c.vy < 0.0)) continue;
        // parabola through (t, y) of the three samples; exact for ballistics
        const double t0 = a.t, t1 = b.t, t2 = c.t;
        const double d01 = (b.y - a.y) / (t1 - t0);
        const double d12 = (c.y - b.y) / (t2 - t1);
        const double half_acc = (d12 - d01) / (t2 - t0);  // = -g/2 in flight
        ApexPoint ap;
        if (half_acc < 0.0) {
            const double t_star = 0.5 * (t0 + t1 - d01 / half_acc);
            ap.t = t_star;
            ap.y = a.y + d01 * (t_star - t0) + half_acc * (t_star - t0) * (t_star - t1);
            ap.vx = b.vx;
        } else {
            ap.t = b.t;  // degenerate sampling; fall back to the raw sample
            ap.y = b.y;
            ap.vx = b.vx;
        }
        out.apexes.push_back(ap);
    }
    if (out.apexes.size() < 2) return out;  // NotEnoughData
    const std::size_t w = std::min<std::size_t>(terminal_window, out.apexes.size());
    double worst = 0.0;
    for (std::size_t i = out.apexes.size() - w; i + 1 < out.apexes.size(); ++i) {
        const double dy = out.apexes[i + 1].y - out.apexes[i].y;
        const double dv = out.apexes[i + 1].vx - out.apexes[i].vx;
        worst = std::max(worst, std::hypot(dy, dv));
    }
    out.residual = worst;
    out.verdict = Verdict::Ok;
    return out;
}

EpisodeAnalysis analyze(const EpisodeResult& result) {
    EpisodeAnalysis a;
    a.termination = result.termination;
    a.period = period_convergence(result.timeline);
    a.phases = phase_statistics(result.timeline);
    a.apexes = apex_map(result.trajectory);
    return a;
}

namespace {

std::string termination_text(const Termination& t) {
    if (t.kind == TerminationKind::Completed) return "completed";
    return std::string("fell (") + fall_reason_name(t.reason) + ")";
}

}  // namespace

std::string render_summary_text(const std::string& run_id, const EpisodeAnalysis& a) {
    std::ostringstream out;
    out << "run:                " << run_id << "\n";
    out << "termination:        " << termination_text(a.termination) << "\n";
    out << "steps survived:     " << a.termination.steps << "\n";
    out << "simulated time:     " << format_double(a.termination.t) << " s\n";
    out << "period tracking:    " << verdict_name(a.period.verdict);
    if (a.period.verdict == Verdict::Converged)
        out << " (from step " << a.period.step_of_convergence << ", residual "
            << format_double(a.period.residual) << " s)";
    else if (a.period.verdict == Verdict::NotConverged)
        out << " (terminal residual " << format_double(a.period.residual) << " s)";
    out << "\n";
    out << "phase statistics:   ";
    if (a.phases.verdict == Verdict::NotEnoughData) {
        out << "not_enough_data\n";
    } else {
        out << "phi- mean " << format_double(a.phases.phi_terminal_mean) << " rad, psi- mean "
            << format_double(a.phases.psi_terminal_mean) << " rad (last 10 strides)\n";
    }
    out << "apex map:           ";
    if (a.apexes.verdict == Verdict::NotEnoughData)
        out << "not_enough_data\n";
    else
        out << a.apexes.apexes.size() << " apexes, residual "
            << format_double(a.apexes.residual) << "\n";
    return out.str();
}

std::string render_metrics_text(const std::string& run_id, const EpisodeAnalysis& a) {
    std::ostringstream out;
    out << "run_id " << run_id << "\n";
    out << "termination "
        << (a.termination.kind == TerminationKind::Completed ? "completed" : "fell") << "\n";
    out << "steps " << a.termination.steps << "\n";
    out << "fall_reason " << fall_reason_name(a.termination.reason) << "\n";
    out << "sim_time_s " << format_double(a.termination.t) << "\n";
    out << "period_verdict " << verdict_name(a.period.verdict) << "\n";
    out << "period_convergence_step " << a.period.step_of_convergence << "\n";
    out << "period_residual_s " << format_double(a.period.residual) << "\n";
    out << "phase_verdict " << verdict_name(a.phases.verdict) << "\n";
    out << "phi_minus_terminal_mean_rad " << format_double(a.phases.phi_terminal_mean) << "\n";
    out << "psi_minus_terminal_mean_rad " << format_double(a.phases.psi_terminal_mean) << "\n";
    out << "apex_verdict " << verdict_name(a.apexes.verdict) << "\n";
    out << "apex_count " << a.apexes.apexes.size() << "\n";
    out << "apex_residual " << format_double(a.apexes.residual) << "\n";
    return out.str();
}

}  // namespace cpgrun
