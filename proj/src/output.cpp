#include "cpgrun/output.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "cpgrun/config_io.hpp"

namespace cpgrun {

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw OutputError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw OutputError("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw OutputError("cannot rename " + tmp.string() + " -> " + path.string());
}

std::string render_trajectory_csv(const EpisodeResult& result) {
    std::ostringstream out;
    out << "t,mode,x,y,vx,vy,r,gamma,tau,E_total\n";
    for (const auto& s : result.trajectory) {
        out << format_double(s.t) << ',' << mode_name(s.mode) << ',' << format_double(s.x) << ','
            << format_double(s.y) << ',' << format_double(s.vx) << ',' << format_double(s.vy)
            << ',' << format_double(s.r) << ',' << format_double(s.gamma) << ','
            << format_double(s.tau) << ',' << format_double(s.energy) << '\n';
    }
    return out.str();
}

std::string render_steps_csv(const EpisodeResult& result) {
    std::ostringstream out;
    out << "n,t_td,leg,T_n,T_e_n\n";
    for (const auto& s : result.timeline.steps) {
        out << s.n << ',' << format_double(s.t_td) << ',' << leg_name(s.leg) << ',';
        if (s.T) out << format_double(*s.T);
        out << ',' << format_double(s.T_e) << '\n';
    }
    return out.str();
}

std::string render_strides_csv(const EpisodeResult& result) {
    std::ostringstream out;
    out << "N,t_td,phi_minus,psi_minus\n";
    for (const auto& s : result.timeline.strides) {
        out << s.N << ',' << format_double(s.t_td) << ',' << format_double(s.phi_minus) << ','
            << format_double(s.psi_minus) << '\n';
    }
    return out.str();
}

std::string render_commands_csv(const EpisodeResult& result) {
    std::ostringstream out;
    out << "t,leg,phase,category,hip_command,vastus_command\n";
    for (const auto& c : result.commands) {
        out << format_double(c.t) << ',' << leg_name(c.leg) << ',' << format_double(c.phi) << ','
            << category_name(c.category) << ',' << hip_action_name(c.hip.action) << ','
            << vastus_action_name(c.vastus) << '\n';
    }
    return out.str();
}

void write_episode_outputs(const EpisodeResult& result, const EpisodeAnalysis& analysis,
                           const std::filesystem::path& out_dir, const std::string& run_id) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw OutputError("cannot create output directory " + out_dir.string());
    atomic_write_file(out_dir / (run_id + "_traj.csv"), render_trajectory_csv(result));
    atomic_write_file(out_dir / (run_id + "_steps.csv"), render_steps_csv(result));
    atomic_write_file(out_dir / (run_id + "_strides.csv"), render_strides_csv(result));
    atomic_write_file(out_dir / (run_id + "_commands.csv"), render_commands_csv(result));
    atomic_write_file(out_dir / (run_id + "_summary.txt"),
                      render_summary_text(run_id, analysis));
    atomic_write_file(out_dir / (run_id + "_metrics.txt"),
                      render_metrics_text(run_id, analysis));
}

}  // namespace cpgrun
