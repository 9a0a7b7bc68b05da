#include "cpgrun/config_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cpgrun {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

double parse_double(const std::string& key, const std::string& text) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, out);
    while (ptr != last && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    if (ec != std::errc() || ptr != last)
        throw ConfigError(key + ": cannot parse number '" + text + "'");
    return out;
}

long parse_long(const std::string& key, const std::string& text) {
    double v = parse_double(key, text);
    long l = static_cast<long>(v);
    if (static_cast<double>(l) != v)
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return l;
}

bool parse_bool(const std::string& key, const std::string& text) {
    std::string t = text;
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + text + "'");
}

using Setter = std::function<void(SimConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& field_table() {
    static const std::map<std::string, Setter> table = {
        {"physical.m", [](SimConfig& c, const std::string& k, const std::string& v) { c.physical.m = parse_double(k, v); }},
        {"physical.l0", [](SimConfig& c, const std::string& k, const std::string& v) { c.physical.l0 = parse_double(k, v); }},
        {"physical.k", [](SimConfig& c, const std::string& k, const std::string& v) { c.physical.k = parse_double(k, v); }},
        {"physical.c", [](SimConfig& c, const std::string& k, const std::string& v) { c.physical.c = parse_double(k, v); }},
        {"physical.g", [](SimConfig& c, const std::string& k, const std::string& v) { c.physical.g = parse_double(k, v); }},
        {"physical.tau_c", [](SimConfig& c, const std::string& k, const std::string& v) { c.physical.tau_c = parse_double(k, v); }},
        {"physical.gamma_td", [](SimConfig& c, const std::string& k, const std::string& v) { c.physical.gamma_td = parse_double(k, v); }},
        {"controller.epsilon", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.epsilon = parse_double(k, v); }},
        {"controller.Kp", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.Kp = parse_double(k, v); }},
        {"controller.Kd", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.Kd = parse_double(k, v); }},
        {"controller.T0_e", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.T0_e = parse_double(k, v); }},
        {"controller.beta", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.beta = parse_double(k, v); }},
        {"controller.mu0", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.mu0 = parse_double(k, v); }},
        {"controller.K_mu_over", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.K_mu_over = parse_double(k, v); }},
        {"controller.K_mu_under", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.K_mu_under = parse_double(k, v); }},
        {"controller.theta_s_d", [](SimConfig& c, const std::string& k, const std::string& v) { c.controller.theta_s_d = parse_double(k, v); }},
        {"simulation.y0", [](SimConfig& c, const std::string& k, const std::string& v) { c.simulation.y0 = parse_double(k, v); }},
        {"simulation.vx0", [](SimConfig& c, const std::string& k, const std::string& v) { c.simulation.vx0 = parse_double(k, v); }},
        {"simulation.dt", [](SimConfig& c, const std::string& k, const std::string& v) { c.simulation.dt = parse_double(k, v); }},
        {"simulation.max_steps", [](SimConfig& c, const std::string& k, const std::string& v) { c.simulation.max_steps = parse_long(k, v); }},
        {"simulation.decimation", [](SimConfig& c, const std::string& k, const std::string& v) { c.simulation.decimation = parse_long(k, v); }},
        {"simulation.mu_adaptation", [](SimConfig& c, const std::string& k, const std::string& v) { c.simulation.mu_adaptation = parse_bool(k, v); }},
    };
    return table;
}

std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
}

}  // namespace

SimConfig parse_config_text(const std::string& text, const SimConfig& base) {
    SimConfig cfg = base;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "physical" && section != "controller" && section != "simulation")
                throw ConfigError("unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' appears before any section header");
        std::string full = section + "." + key;
        auto it = field_table().find(full);
        if (it == field_table().end())
            throw ConfigError("unknown key '" + full + "'");
        it->second(cfg, full, value);
    }
    return cfg;
}

SimConfig load_config_file(const std::string& path, const SimConfig& base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), base);
}

std::string serialize_config(const SimConfig& cfg) {
    std::ostringstream out;
    out << "[physical]\n";
    out << "m = " << format_double(cfg.physical.m) << "\n";
    out << "l0 = " << format_double(cfg.physical.l0) << "\n";
    out << "k = " << format_double(cfg.physical.k) << "\n";
    out << "c = " << format_double(cfg.physical.c) << "\n";
    out << "g = " << format_double(cfg.physical.g) << "\n";
    out << "tau_c = " << format_double(cfg.physical.tau_c) << "\n";
    out << "gamma_td = " << format_double(cfg.physical.gamma_td) << "\n";
    out << "\n[controller]\n";
    out << "epsilon = " << format_double(cfg.controller.epsilon) << "\n";
    out << "Kp = " << format_double(cfg.controller.Kp) << "\n";
    out << "Kd = " << format_double(cfg.controller.Kd) << "\n";
    out << "T0_e = " << format_double(cfg.controller.T0_e) << "\n";
    out << "beta = " << format_double(cfg.controller.beta) << "\n";
    out << "mu0 = " << format_double(cfg.controller.mu0) << "\n";
    out << "K_mu_over = " << format_double(cfg.controller.K_mu_over) << "\n";
    out << "K_mu_under = " << format_double(cfg.controller.K_mu_under) << "\n";
    out << "theta_s_d = " << format_double(cfg.controller.theta_s_d) << "\n";
    out << "\n[simulation]\n";
    out << "y0 = " << format_double(cfg.simulation.y0) << "\n";
    out << "vx0 = " << format_double(cfg.simulation.vx0) << "\n";
    out << "dt = " << format_double(cfg.simulation.dt) << "\n";
    out << "max_steps = " << cfg.simulation.max_steps << "\n";
    out << "decimation = " << cfg.simulation.decimation << "\n";
    out << "mu_adaptation = " << (cfg.simulation.mu_adaptation ? "true" : "false") << "\n";
    return out.str();
}

void apply_override(SimConfig& cfg, const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value: " + spec);
    std::string key = trim(spec.substr(0, eq));
    std::string value = trim(spec.substr(eq + 1));
    auto it = field_table().find(key);
    if (it == field_table().end())
        throw ConfigError("unknown key '" + key + "'");
    it->second(cfg, key, value);
}

}  // namespace cpgrun
