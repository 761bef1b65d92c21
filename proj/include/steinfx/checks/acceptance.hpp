#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace steinfx::checks {

struct AcceptanceConfig {
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> details;  ///< one line per sub-check, deterministic text
};

/// Criteria 1-11. Criterion 12 (worker-count reproducibility of this very
/// report) is a property across runs and is checked by the caller.
[[nodiscard]] std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

/// One "[PASS]/[FAIL] Cnn title" line per criterion followed by indented details.
[[nodiscard]] std::string format_report(const std::vector<CriterionResult>& results);

[[nodiscard]] bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace steinfx::checks
