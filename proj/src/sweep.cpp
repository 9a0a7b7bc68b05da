#include "cpgrun/sweep.hpp"

#include <fstream>
#include <sstream>

#include "cpgrun/analysis.hpp"
#include "cpgrun/config_io.hpp"
#include "cpgrun/output.hpp"

#ifdef CPGRUN_HAVE_OPENMP
#include <omp.h>
#endif

namespace cpgrun {

namespace {

std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
}

std::string point_run_id(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "point_%04zu", index);
    return buf;
}

SweepPointOutcome run_one(const SweepPoint& point, const std::filesystem::path& out_dir) {
    SweepPointOutcome o;
    o.index = point.index;
    o.run_id = point_run_id(point.index);
    o.label = point.label;
    try {
        ValidatedConfig cfg = validate(point.config);
        EpisodeResult result = run_episode(cfg);
        EpisodeAnalysis analysis = analyze(result);
        write_episode_outputs(result, analysis, out_dir / o.run_id, o.run_id);
        o.termination = result.termination;
    } catch (const std::exception& e) {
        o.error = true;
        o.error_message = e.what();
    }
    return o;
}

}  // namespace

SweepSpec parse_sweep_text(const std::string& text) {
    SweepSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("sweep line " + std::to_string(lineno) +
                              ": expected section.key = v1, v2, ...");
        std::string key = trim(line.substr(0, eq));
        std::string rest = line.substr(eq + 1);
        std::vector<std::string> vals;
        std::istringstream vs(rest);
        std::string item;
        while (std::getline(vs, item, ',')) {
            item = trim(item);
            if (!item.empty()) vals.push_back(item);
        }
        if (vals.empty())
            throw ConfigError("sweep key '" + key + "' lists no values");
        // validate the key now so typos fail before any episode runs
        SimConfig probe;
        apply_override(probe, key + "=" + vals.front());
        spec.keys.push_back(key);
        spec.values.push_back(std::move(vals));
    }
    if (spec.keys.empty()) throw ConfigError("sweep file lists no keys");
    return spec;
}

SweepSpec load_sweep_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open sweep file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_text(buf.str());
}

std::vector<SweepPoint> expand_sweep(const SweepSpec& spec, const SimConfig& base) {
    std::size_t total = 1;
    for (const auto& v : spec.values) total *= v.size();

    std::vector<SweepPoint> points;
    points.reserve(total);
    std::vector<std::size_t> idx(spec.keys.size(), 0);
    for (std::size_t p = 0; p < total; ++p) {
        SweepPoint pt;
        pt.index = p;
        pt.config = base;
        std::string label;
        for (std::size_t k = 0; k < spec.keys.size(); ++k) {
            const std::string& value = spec.values[k][idx[k]];
            apply_override(pt.config, spec.keys[k] + "=" + value);
            if (!label.empty()) label += ' ';
            label += spec.keys[k] + "=" + value;
        }
        pt.label = std::move(label);
        points.push_back(std::move(pt));
        // odometer increment, last key fastest
        for (std::size_t k = spec.keys.size(); k-- > 0;) {
            if (++idx[k] < spec.values[k].size()) break;
            idx[k] = 0;
        }
    }
    return points;
}

std::vector<SweepPointOutcome> run_sweep_serial(const std::vector<SweepPoint>& points,
                                                const std::filesystem::path& out_dir) {
    std::vector<SweepPointOutcome> outcomes(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        outcomes[i] = run_one(points[i], out_dir);
    return outcomes;
}

std::vector<SweepPointOutcome> run_sweep_parallel(const std::vector<SweepPoint>& points,
                                                  const std::filesystem::path& out_dir,
                                                  int jobs) {
    std::vector<SweepPointOutcome> outcomes(points.size());
#ifdef CPGRUN_HAVE_OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < points.size(); ++i)
        outcomes[i] = run_one(points[i], out_dir);
#else
    (void)jobs;
    for (std::size_t i = 0; i < points.size(); ++i)
        outcomes[i] = run_one(points[i], out_dir);
#endif
    return outcomes;
}

void write_sweep_index(const std::vector<SweepPointOutcome>& outcomes,
                       const std::filesystem::path& out_dir) {
    std::ostringstream out;
    out << "index,run_id,label,status,steps,sim_time_s\n";
    for (const auto& o : outcomes) {
        out << o.index << ',' << o.run_id << ',' << '"' << o.label << '"' << ',';
        if (o.error) {
            out << "error,,\n";
            continue;
        }
        out << (o.termination.kind == TerminationKind::Completed ? "completed" : "fell") << ','
            << o.termination.steps << ',' << format_double(o.termination.t) << '\n';
    }
    atomic_write_file(out_dir / "sweep_index.csv", out.str());
}

}  // namespace cpgrun
