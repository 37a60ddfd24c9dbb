#include "cvtelefid/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace cvtelefid {

namespace {

std::string trim(const std::string& s) {
    auto begin = std::find_if_not(s.begin(), s.end(),
                                  [](unsigned char c) { return std::isspace(c); });
    auto end = std::find_if_not(s.rbegin(), s.rend(),
                                [](unsigned char c) { return std::isspace(c); }).base();
    return (begin < end) ? std::string(begin, end) : std::string();
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: invalid numeric value '" + value + "' for key '" + key + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: invalid integer value '" + value + "' for key '" + key + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: invalid boolean value '" + value + "' for key '" + key + "'");
}

}  // namespace

double RunConfig::tol(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) {
        throw ConfigError("config: unknown tolerance '" + name + "'");
    }
    return it->second;
}

void RunConfig::validate() const {
    if (cutoff < 8) throw ConfigError("config: cutoff must be >= 8");
    if (gh_order < 2) throw ConfigError("config: gh_order must be >= 2");
    for (const auto& [name, value] : tolerances) {
        if (value <= 0.0) {
            throw ConfigError("config: tolerance '" + name + "' must be > 0");
        }
    }
}

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ConfigError("config: unknown output format '" + name + "' (want csv or json)");
}

void apply_config_entry(const std::string& key, const std::string& value,
                        RunConfig& config) {
    if (key == "cutoff") {
        config.cutoff = parse_int(key, value);
    } else if (key == "gh_order") {
        config.gh_order = parse_int(key, value);
    } else if (key == "format") {
        config.output_format = parse_output_format(value);
    } else if (key == "out") {
        config.output_path = value;
    } else if (key == "deterministic") {
        config.deterministic_reduction = parse_bool(key, value);
    } else if (config.tolerances.count(key)) {
        config.tolerances[key] = parse_double(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

void load_config_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config: " << path << ":" << lineno << ": expected key=value";
            throw ConfigError(msg.str());
        }
        apply_config_entry(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), config);
    }
}

}  // namespace cvtelefid
