#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bfly {

struct PropertyResult {
    std::string name;
    bool pass = false;
    bool soft = false;  // reported, not counted toward failure
    std::string detail;
    double seconds = 0.0;
};

struct VerifyConfig {
    std::uint64_t seed = 1729;
    // Trial counts can be scaled down for smoke runs; 1.0 is the full suite.
    double scale = 1.0;
};

// The full acceptance checks plus the module-level property sweeps. Each
// entry prints one line through the caller; `pass` of non-soft entries
// decides the exit status.
std::vector<PropertyResult> run_acceptance_suite(const VerifyConfig& config);

bool all_passed(const std::vector<PropertyResult>& results);

// report.json payload for the verify command.
std::string results_to_json(const std::vector<PropertyResult>& results);

}  // namespace bfly
