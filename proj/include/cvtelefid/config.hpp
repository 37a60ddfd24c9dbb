#pragma once

#include "cvtelefid/fock.hpp"

#include <map>
#include <string>

namespace cvtelefid {

enum class OutputFormat { csv, json };

// Shared run configuration for the command-line front end. File format is
// flat key=value lines ('#' comments allowed); command-line flags win over
// file values, which win over defaults.
struct RunConfig {
    int cutoff = 60;
    int gh_order = 20;
    std::map<std::string, double> tolerances = {
        {"tail_tol", kTailTol},
        {"trace_tol", kTraceTol},
        {"prob_tol", kProbTol},
        {"herm_tol", kHermTol},
    };
    OutputFormat output_format = OutputFormat::csv;
    std::string output_path;  // empty: stdout
    bool deterministic_reduction = false;

    double tol(const std::string& name) const;
    void validate() const;  // throws ConfigError
};

// Parse a key=value config file into an existing config (missing file throws).
void load_config_file(const std::string& path, RunConfig& config);

// Apply one key=value assignment (shared by file parsing and flag handling).
void apply_config_entry(const std::string& key, const std::string& value,
                        RunConfig& config);

OutputFormat parse_output_format(const std::string& name);

}  // namespace cvtelefid
