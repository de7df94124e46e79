#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace aqs {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20260101;
    /// Receives the PCA scatter CSV and the determinism re-runs.
    std::filesystem::path out_dir = "aqs-acceptance";
};

/// Runs the nine end-to-end acceptance criteria in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

}  // namespace aqs
