#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace acl::tools {

struct VerifyOptions {
    int jobs = 1;
    std::uint64_t seed = 2024;
    int oracle_truncation = 60;
    int cocycle_precision = 8;
    int linvariant_precision = 10;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::size_t checks = 0;
    std::string detail;
    std::vector<std::string> failures;  // first few failing items
    double seconds = 0.0;
};

[[nodiscard]] CriterionResult run_criterion(int id, const VerifyOptions& options);
[[nodiscard]] std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

// Criteria that cannot pass as stated; see README.md for the analysis.
[[nodiscard]] const std::set<int>& documented_unattainable();

// True when every failing criterion is a documented one.
[[nodiscard]] bool only_documented_failures(const std::vector<CriterionResult>& results);

}  // namespace acl::tools
