#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cpgrun/episode.hpp"
#include "cpgrun/params.hpp"

namespace cpgrun {

/// Grid specification: every listed key takes each of its values; points are
/// the cartesian product, expanded row-major in file order.
struct SweepSpec {
    std::vector<std::string> keys;
    std::vector<std::vector<std::string>> values;  // one list per key
};

/// Parses a sweep file. One assignment per line:
///   section.key = v1, v2, v3
/// Blank lines and # comments are ignored. Unknown keys are ConfigErrors.
SweepSpec parse_sweep_text(const std::string& text);
SweepSpec load_sweep_file(const std::string& path);

struct SweepPoint {
    std::size_t index = 0;
    SimConfig config;
    std::string label;  // "key=value key=value" for the index file
};

std::vector<SweepPoint> expand_sweep(const SweepSpec& spec, const SimConfig& base);

struct SweepPointOutcome {
    std::size_t index = 0;
    std::string run_id;
    std::string label;
    bool error = false;        // config/integration error at this point
    std::string error_message;
    Termination termination;
};

/// Runs every point and writes its outputs under out_dir/<run_id>/.
/// Serial reference implementation.
std::vector<SweepPointOutcome> run_sweep_serial(const std::vector<SweepPoint>& points,
                                                const std::filesystem::path& out_dir);

/// OpenMP-parallel version; outcome order and all file contents are
/// identical to the serial reference. `jobs` <= 0 uses the hardware default.
std::vector<SweepPointOutcome> run_sweep_parallel(const std::vector<SweepPoint>& points,
                                                  const std::filesystem::path& out_dir,
                                                  int jobs = 0);

/// Writes sweep_index.csv summarizing the outcomes.
void write_sweep_index(const std::vector<SweepPointOutcome>& outcomes,
                       const std::filesystem::path& out_dir);

}  // namespace cpgrun
