#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ccr/serialization.hpp"

namespace ccr::cli {

inline const std::vector<std::string> kScenarios = {"axisym", "bhp-average", "bhp-field", "nullspace",
                                                    "weyl",   "zero-mode",   "bounds"};

struct ScenarioConfig {
    std::string scenario;
    std::filesystem::path corpus;
    std::filesystem::path output;
    std::optional<std::filesystem::path> csv;
    QuadratureConfig quad;
    std::uint64_t seed = 0;
    bool timestamp = false;
};

/// One comparison in a report. For closeness checks tol is absolute, i.e.
/// already multiplied by the scale it is relative to.
struct Check {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string oracle;
};

Check close_check(std::string name, double lhs, double rhs, double rel_tol, double scale, std::string oracle);
Check bound_check(std::string name, double lhs, double rhs, double rel_tol, std::string oracle);

struct Report {
    json document;
    std::vector<Check> checks;
    bool all_pass() const;
};

/// Runs the scenario over the corpus and builds the report; writes nothing.
/// Throws ParseError for an unknown scenario or an unreadable corpus.
Report run_scenario(const ScenarioConfig& cfg);

/// run_scenario plus report (and optional CSV) output. Returns the exit
/// code: 0 when every check passes, 1 otherwise.
int run_and_write(const ScenarioConfig& cfg);

/// Deterministic random packets: centers in [-3, 3]^3, widths in
/// [0.3, 1.5], one packet per field. With s0 each field is antisymmetrized
/// in k^x. size must not exceed 64.
std::vector<FieldVector> generate_corpus(std::uint64_t seed, int size, bool s0 = false, double mass = 0.0);

}  // namespace ccr::cli
