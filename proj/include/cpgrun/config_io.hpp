#pragma once

#include <string>

#include "cpgrun/params.hpp"

namespace cpgrun {

/// Formats a double so that parsing the text recovers the same bits
/// (shortest round-trip representation).
std::string format_double(double v);

/// Parses a config in the sectioned key=value format produced by
/// serialize_config. Unknown sections or keys are ConfigErrors. Keys not
/// present keep the values of `base`.
SimConfig parse_config_text(const std::string& text, const SimConfig& base);

/// Reads and parses a config file. Throws ConfigError on I/O failure.
SimConfig load_config_file(const std::string& path, const SimConfig& base);

/// Serializes every field, sectioned [physical] / [controller] / [simulation].
std::string serialize_config(const SimConfig& cfg);

/// Applies one `section.key=value` override (the CLI --set form).
void apply_override(SimConfig& cfg, const std::string& spec);

}  // namespace cpgrun
