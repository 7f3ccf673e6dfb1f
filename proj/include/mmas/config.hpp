#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mmas/simulate.hpp"

namespace mmas {

// Shared knobs for the monotonicity scan / vertex selection stage.
struct AnalysisOptions {
    int grid = 17;
    int cross_sections = 8;
    double tol = 1e-7;
    std::uint64_t seed = 0;
    int coverage_samples = 10000;
    double coverage_residual_tol = 1e-6;
};

struct AnalyzeConfig {
    std::string system = "vehicle";
    bool standard_sign = false;
    double speed_mps = 50.0 / 3.6;
    AnalysisOptions analysis;
    // Requested coordination checks: (l, i, j, p, q) per entry pair.
    std::vector<std::array<int, 5>> coordination_pairs;
};

struct BoundsConfig {
    std::string system = "vehicle";
    bool standard_sign = false;
    bool literal_paper_bounds = false;
    double speed_mps = 50.0 / 3.6;
    int samples = 10000;
    AnalysisOptions analysis;
    // Explicit interval instead of the system-derived one.
    std::optional<Matrix> explicit_lb;
    std::optional<Matrix> explicit_ub;
};

struct SimulateConfig {
    Scenario scenario;
    AnalysisOptions analysis;  // used to build the vertex model set
};

struct VerifyConfig {
    bool smoke = false;
    std::uint64_t seed = 0;
};

// Strict parsers: "schema_version" must equal 1 and unknown fields are
// rejected with a field-path diagnostic (ConfigError).
AnalyzeConfig parse_analyze_config(const std::string& json_text);
BoundsConfig parse_bounds_config(const std::string& json_text);
SimulateConfig parse_simulate_config(const std::string& json_text);
VerifyConfig parse_verify_config(const std::string& json_text);

std::string read_text_file(const std::string& path);

// Built-in demo scenario (50 km/h sine steering, in-box sinusoidal schedule).
Scenario default_scenario();

}  // namespace mmas
