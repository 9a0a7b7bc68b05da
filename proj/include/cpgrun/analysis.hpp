#pragma once

#include <string>
#include <vector>

#include "cpgrun/episode.hpp"

namespace cpgrun {

enum class Verdict { Ok, Converged, NotConverged, NotEnoughData };

const char* verdict_name(Verdict v);

struct PeriodConvergence {
    Verdict verdict = Verdict::NotEnoughData;
    long step_of_convergence = 0;  // first step of the trailing in-tolerance run
    double residual = 0.0;         // mean |T_e - T| over the terminal window
};

/// Converged iff |T_nE - T_n| < tol for the last `window` consecutive
/// measured steps. Needs at least 10 measured steps.
PeriodConvergence period_convergence(const GaitTimeline& timeline, double tol = 5e-3,
                                     int window = 10);

struct PhaseStatistics {
    Verdict verdict = Verdict::NotEnoughData;
    std::vector<double> phi_minus;
    std::vector<double> psi_minus;
    double phi_terminal_mean = 0.0;  // over the last 10 strides
    double psi_terminal_mean = 0.0;
};

/// Per-stride pre-touchdown phase difference/sum and their terminal means.
/// Needs at least 3 strides.
PhaseStatistics phase_statistics(const GaitTimeline& timeline, int terminal_window = 10);

struct ApexPoint {
    double t = 0.0;
    double y = 0.0;
    double vx = 0.0;
};

struct ApexMap {
    Verdict verdict = Verdict::NotEnoughData;
    std::vector<ApexPoint> apexes;
    double residual = 0.0;  // max consecutive-apex distance over the last 10
};

/// Extracts flight apexes (vy sign change) from trajectory samples. The apex
/// height is refined by the parabola through the three samples around the
/// sign change, which is exact for ballistic flight.
ApexMap apex_map(const std::vector<TrajectorySample>& trajectory, int terminal_window = 10);

/// Everything the summary/metrics files report, precomputed.
struct EpisodeAnalysis {
    Termination termination;
    PeriodConvergence period;
    PhaseStatistics phases;
    ApexMap apexes;
};

EpisodeAnalysis analyze(const EpisodeResult& result);

std::string render_summary_text(const std::string& run_id, const EpisodeAnalysis& a);
std::string render_metrics_text(const std::string& run_id, const EpisodeAnalysis& a);

}  // namespace cpgrun
