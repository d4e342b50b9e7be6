#pragma once

// Seeded property suite over every module.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nclp/config.hpp"

namespace nclp {

struct SuiteConfig {
    std::uint64_t seed = 0;
    /// Property ids, group names or module names; empty runs everything.
    std::vector<std::string> only;
    /// Multiplies every default instance count (at least one instance each).
    double budget_scale = 1.0;
    ToleranceConfig tolerances;
};

struct PropertyInfo {
    std::string id;      // "<group>.<name>"
    std::string module;
    std::string anchor;  // the statement being checked
    int default_instances = 0;
};

struct PropertyRecord {
    PropertyInfo info;
    int instances = 0;
    int passed = 0;
    int failed = 0;
    int undetermined = 0;
    double max_residual = 0.0;
    double wall_seconds = 0.0;
    std::string note;  // first failure, if any
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<PropertyRecord> records;

    bool pass() const;
    int failures() const;
    int undetermined() const;
};

std::vector<PropertyInfo> suite_properties();

/// Runs the selected properties; throws StructuralError when `only` selects nothing.
SuiteReport run_suite(const SuiteConfig& cfg);

/// Report as JSON; wall times are included only when `timing` is set so that
/// the default output is reproducible byte for byte.
nlohmann::json suite_report_json(const SuiteReport& report, bool timing = false);

}  // namespace nclp
