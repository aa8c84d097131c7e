#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "fracb/asymptotics.hpp"

namespace fracb {

struct Perturbation {
    std::string kind = "none";  // none | gaussian
    double amplitude = 0.0;
    double width = 1.0;
    double center = 0.0;
};

// One reproducible run: step data (+ optional bump), a grid, a solver setup,
// and the list of rate checks to fit. Flat key=value text format, no nesting.
struct ScenarioConfig {
    std::string scenario = "run";
    double alpha = 1.0;
    double eps = 0.0;
    double u_minus = -0.5;
    double u_plus = 0.5;
    Perturbation perturbation;
    double L = 64.0;
    std::size_t n = 8192;
    SolverConfig solver;
    RateWindow window;
    double p = std::numeric_limits<double>::infinity();
    // any of: stability, linear, selfsimilar, rarefaction, gradient
    std::vector<std::string> checks;
    std::string output_dir = "fracb-out";
    std::uint64_t seed = 0;
};

// Parses and validates the key=value document ('#' comments, blank lines ok).
// Unknown keys are rejected; constraint violations name the field.
ScenarioConfig parse_config(const std::string& text);

// Canned configurations ("thm14-default", ...) for the report subcommand.
ScenarioConfig preset_scenario(const std::string& name);

struct CheckResult {
    std::string name;
    RateVerdict verdict;
};

struct ScenarioReport {
    ScenarioConfig config;
    std::vector<CheckResult> results;
    std::vector<std::string> csv_files;  // paths written, relative artifacts
    std::string json_file;
    double wall_seconds = 0.0;
    bool all_pass = true;
};

// Output root: FRACB_OUT env var when set, else the config's output_dir.
std::filesystem::path output_root(const ScenarioConfig& cfg);

// Runs the pipeline: evolve -> checks -> fits; writes one CSV per time series
// (snapshots when no checks are requested) plus a single JSON report. The
// output directory is validated before any compute. CSVs are deterministic
// for a fixed config + seed.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

// The serialized report (same content as the JSON file).
std::string report_json(const ScenarioReport& rep);

}  // namespace fracb
