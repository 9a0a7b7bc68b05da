#include <doctest.h>

#include <cmath>

#include "cpgrun/analysis.hpp"

using namespace cpgrun;

namespace {

GaitTimeline synthetic_timeline(int steps, double T, double T_e) {
    GaitTimeline tl;
    double t = 0.0;
    for (int n = 1; n <= steps; ++n) {
        StepRecord s;
        s.n = n;
        s.t_td = t;
        s.leg = (n % 2 == 1) ? Leg::Right : Leg::Left;
        if (n > 1) s.T = T;
        s.T_e = T_e;
        tl.steps.push_back(s);
        t += T;
    }
    return tl;
}

std::vector<TrajectorySample> synthetic_flight(double y_apex, double t_apex, double vx,
                                               double g, double t0, double t1, double dt) {
    std::vector<TrajectorySample> traj;
    for (double t = t0; t <= t1 + 1e-12; t += dt) {
        TrajectorySample s;
        s.t = t;
        s.mode = Mode::Flight;
        s.y = y_apex - 0.5 * g * (t - t_apex) * (t - t_apex);
        s.vy = -g * (t - t_apex);
        s.vx = vx;
        s.x = vx * t;
        traj.push_back(s);
    }
    return traj;
}

}  // namespace

TEST_CASE("period convergence verdicts") {
    // constant, already-matched timeline: converged at the first eligible step
    GaitTimeline tl = synthetic_timeline(30, 0.4, 0.4);
    PeriodConvergence pc = period_convergence(tl);
    CHECK(pc.verdict == Verdict::Converged);
    CHECK(pc.step_of_convergence == 2);  // the first measured step
    CHECK(pc.residual == 0.0);

    // frozen estimate far from the truth: not converged
    tl = synthetic_timeline(30, 0.4, 0.5);
    pc = period_convergence(tl);
    CHECK(pc.verdict == Verdict::NotConverged);
    CHECK(pc.residual == doctest::Approx(0.1).epsilon(1e-12));

    // too little data
    tl = synthetic_timeline(8, 0.4, 0.4);
    CHECK(period_convergence(tl).verdict == Verdict::NotEnoughData);

    // converged only over the tail
    tl = synthetic_timeline(40, 0.4, 0.4);
    for (auto& s : tl.steps)
        if (s.n <= 20) s.T_e = 0.5;
    pc = period_convergence(tl);
    CHECK(pc.verdict == Verdict::Converged);
    CHECK(pc.step_of_convergence == 21);
}

TEST_CASE("phase statistics over strides") {
    GaitTimeline tl;
    for (int N = 1; N <= 12; ++N) {
        StrideRecord s;
        s.N = N;
        s.t_td = N * 0.8;
        s.phi_minus = M_PI;
        s.psi_minus = 3.0 * M_PI;
        tl.strides.push_back(s);
    }
    const PhaseStatistics st = phase_statistics(tl);
    CHECK(st.verdict == Verdict::Ok);
    CHECK(st.phi_terminal_mean == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(st.psi_terminal_mean == doctest::Approx(3.0 * M_PI).epsilon(1e-15));
    CHECK(st.phi_minus.size() == 12);

    GaitTimeline few;
    few.strides.resize(2);
    CHECK(phase_statistics(few).verdict == Verdict::NotEnoughData);
}

TEST_CASE("apex extraction recovers the ballistic vertex exactly") {
    const double g = 9.8;
    auto traj = synthetic_flight(1.234, 0.4037, 3.3, g, 0.0, 0.8, 0.01);
    const ApexMap am = apex_map(traj);
    REQUIRE(am.verdict == Verdict::NotEnoughData);  // a single apex has no residual
    REQUIRE(am.apexes.size() == 1);
    CHECK(am.apexes[0].y == doctest::Approx(1.234).epsilon(1e-12));
    CHECK(am.apexes[0].t == doctest::Approx(0.4037).epsilon(1e-10));
    CHECK(am.apexes[0].vx == 3.3);
}

TEST_CASE("a periodic apex sequence has zero residual") {
    const double g = 9.8;
    std::vector<TrajectorySample> traj;
    for (int k = 0; k < 6; ++k) {
        auto seg = synthetic_flight(1.1, 0.3 + k * 1.0, 2.5, g, k * 1.0, k * 1.0 + 0.6, 0.01);
        // separate the flights with a stance sample so segments do not blend
        traj.insert(traj.end(), seg.begin(), seg.end());
        TrajectorySample st;
        st.t = k * 1.0 + 0.8;
        st.mode = Mode::Stance;
        traj.push_back(st);
    }
    const ApexMap am = apex_map(traj);
    CHECK(am.verdict == Verdict::Ok);
    CHECK(am.apexes.size() == 6);
    CHECK(am.residual == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("analysis is pure: identical outputs on identical inputs") {
    GaitTimeline tl = synthetic_timeline(25, 0.45, 0.45);
    const PeriodConvergence a = period_convergence(tl);
    const PeriodConvergence b = period_convergence(tl);
    CHECK(a.verdict == b.verdict);
    CHECK(a.residual == b.residual);
    CHECK(a.step_of_convergence == b.step_of_convergence);
}

TEST_CASE("summary and metrics mention the essentials") {
    EpisodeAnalysis a;
    a.termination = {TerminationKind::Fell, 17, FallReason::FootBelowGround, 14.9};
    const std::string summary = render_summary_text("demo", a);
    CHECK(summary.find("fell (foot_below_ground)") != std::string::npos);
    CHECK(summary.find("17") != std::string::npos);
    const std::string metrics = render_metrics_text("demo", a);
    CHECK(metrics.find("run_id demo\n") != std::string::npos);
    CHECK(metrics.find("termination fell\n") != std::string::npos);
    CHECK(metrics.find("steps 17\n") != std::string::npos);
}
