#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "cpgrun/analysis.hpp"
#include "cpgrun/config_io.hpp"
#include "cpgrun/episode.hpp"
#include "cpgrun/output.hpp"
#include "cpgrun/oscillator.hpp"
#include "cpgrun/pattern.hpp"
#include "cpgrun/sweep.hpp"

namespace {

constexpr int kExitCompleted = 0;
constexpr int kExitError = 1;
constexpr int kExitFell = 2;
constexpr int kExitUsage = 64;
constexpr int kExitCantWrite = 74;

bool is_unknown_key_error(const std::string& msg) {
    return msg.rfind("unknown key", 0) == 0 || msg.rfind("unknown section", 0) == 0 ||
           msg.rfind("unknown preset", 0) == 0;
}

/// Controller-law evaluation without the plant: tabulated update vectors plus
/// a command table over one oscillator cycle. Used by the
/// robot-controller-unit preset.
int run_controller_unit(const cpgrun::SimConfig& cfg, const std::filesystem::path& out_dir,
                        bool quiet) {
    using namespace cpgrun;
    const auto& ctrl = cfg.controller;

    std::ostringstream m;
    m << "run_id controller_unit\n";
    m << "preset robot-controller-unit\n";

    // half-period adaptation vectors
    m << "update_T_e(0.5,0.1,0.1,0.4) "
      << format_double(update_estimated_half_period(0.5, 0.1, 0.1, 0.4, ctrl)) << "\n";
    OscillatorPair osc;
    osc.phi_r = 0.0;
    osc.phi_l = std::numbers::pi;
    osc.T_e = ctrl.T0_e;
    const PhaseRates rates = phase_derivatives(osc, ctrl);
    m << "phase_rate_antiphase_r " << format_double(rates.dphi_r) << "\n";
    m << "phase_rate_antiphase_l " << format_double(rates.dphi_l) << "\n";

    // mu adaptation vectors at the preset gains
    m << "update_mu(0.6,30) " << format_double(update_mu(0.6, 30.0, ctrl)) << "\n";
    m << "update_mu(0.6,35) " << format_double(update_mu(0.6, 35.0, ctrl)) << "\n";
    m << "update_mu(0.6,37) " << format_double(update_mu(0.6, 37.0, ctrl)) << "\n";
    m << "K_mu_ratio " << format_double(ctrl.K_mu_under / ctrl.K_mu_over) << "\n";

    // command table over one cycle
    std::ostringstream csv;
    csv << "t,leg,phase,category,hip_command,vastus_command\n";
    const int kSamples = 1000;
    const double rate = std::numbers::pi / ctrl.T0_e;
    for (int i = 0; i < kSamples; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / kSamples;
        const auto cat = categorize_phase(phi, ctrl.beta, ctrl.mu0);
        const auto hip = hip_command(cat, cfg.physical.tau_c);
        const bool grounded = cat == PhaseCategory::Stance;
        // nominal thigh profile: retracted in stance, swung forward late
        const double theta = grounded ? -10.0 : 40.0 * (phi / (2.0 * std::numbers::pi));
        const auto vastus = vastus_command(cat, grounded, theta);
        csv << format_double(phi / rate) << ",R," << format_double(phi) << ','
            << category_name(cat) << ',' << hip_action_name(hip.action) << ','
            << vastus_action_name(vastus) << '\n';
    }

    try {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw OutputError("cannot create output directory " + out_dir.string());
        atomic_write_file(out_dir / "controller_unit_metrics.txt", m.str());
        atomic_write_file(out_dir / "controller_unit_commands.csv", csv.str());
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCantWrite;
    }
    if (!quiet) std::cout << m.str();
    return kExitCompleted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CPG-controlled spring-mass running simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an episode or a sweep");
    std::string preset = "with-feedback";
    std::string config_path;
    std::string out_dir = "out";
    std::string sweep_path;
    long max_steps = -1;
    std::vector<std::string> overrides;
    int jobs = 0;
    bool quiet = false;
    bool serial = false;
    run->add_option("--preset", preset,
                    "with-feedback | without-feedback | robot-controller-unit");
    run->add_option("--config", config_path, "config file overriding preset fields");
    run->add_option("--max-steps", max_steps, "touchdown budget (default from preset: 3000)");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--set", overrides, "override, e.g. physical.k=9000 (repeatable)");
    run->add_option("--sweep", sweep_path, "sweep spec file; grid over listed fields");
    run->add_option("--jobs", jobs, "sweep worker threads (default: hardware)");
    run->add_flag("--serial", serial, "run sweep points serially");
    run->add_flag("--quiet", quiet, "suppress the summary on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    using namespace cpgrun;

    Preset preset_kind;
    SimConfig cfg;
    try {
        preset_kind = parse_preset(preset);
        cfg = preset_config(preset_kind);
        if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
        for (const auto& o : overrides) apply_override(cfg, o);
        if (max_steps >= 0) cfg.simulation.max_steps = max_steps;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_unknown_key_error(e.what()) ? kExitUsage : kExitError;
    }

    if (preset_kind == Preset::RobotControllerUnit) {
        if (!sweep_path.empty()) {
            std::cerr << "error: --sweep does not apply to the robot-controller-unit preset\n";
            return kExitUsage;
        }
        return run_controller_unit(cfg, out_dir, quiet);
    }

    if (!sweep_path.empty()) {
        try {
            SweepSpec spec = load_sweep_file(sweep_path);
            auto points = expand_sweep(spec, cfg);
            auto outcomes = serial ? run_sweep_serial(points, out_dir)
                                   : run_sweep_parallel(points, out_dir, jobs);
            write_sweep_index(outcomes, out_dir);
            std::size_t errors = 0;
            for (const auto& o : outcomes) {
                if (o.error) ++errors;
                if (!quiet) {
                    std::cout << o.run_id << "  " << o.label << "  ";
                    if (o.error)
                        std::cout << "error: " << o.error_message << "\n";
                    else
                        std::cout << (o.termination.kind == TerminationKind::Completed
                                          ? "completed"
                                          : "fell")
                                  << " at step " << o.termination.steps << "\n";
                }
            }
            return errors == 0 ? kExitCompleted : kExitError;
        } catch (const ConfigError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return is_unknown_key_error(e.what()) ? kExitUsage : kExitError;
        } catch (const OutputError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitCantWrite;
        }
    }

    try {
        ValidatedConfig validated = validate(cfg);
        EpisodeResult result = run_episode(validated);
        EpisodeAnalysis analysis = analyze(result);
        const std::string run_id = preset;
        write_episode_outputs(result, analysis, out_dir, run_id);
        if (!quiet) std::cout << render_summary_text(run_id, analysis);
        return result.termination.kind == TerminationKind::Completed ? kExitCompleted
                                                                     : kExitFell;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_unknown_key_error(e.what()) ? kExitUsage : kExitError;
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCantWrite;
    } catch (const SimulationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
