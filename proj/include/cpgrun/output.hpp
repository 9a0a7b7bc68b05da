#pragma once

#include <filesystem>
#include <string>

#include "cpgrun/analysis.hpp"
#include "cpgrun/episode.hpp"

namespace cpgrun {

/// Raised when an output location cannot be created or written.
class OutputError : public std::runtime_error {
public:
    explicit OutputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Writes content to a temporary file in the target directory and renames it
/// over the destination, so files are either fully written or absent.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string render_trajectory_csv(const EpisodeResult& result);
std::string render_steps_csv(const EpisodeResult& result);
std::string render_strides_csv(const EpisodeResult& result);
std::string render_commands_csv(const EpisodeResult& result);

/// Writes <run_id>_{traj,steps,strides,commands}.csv plus
/// <run_id>_summary.txt and <run_id>_metrics.txt under out_dir.
void write_episode_outputs(const EpisodeResult& result, const EpisodeAnalysis& analysis,
                           const std::filesystem::path& out_dir, const std::string& run_id);

}  // namespace cpgrun
