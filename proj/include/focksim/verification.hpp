#pragma once

#include <string>
#include <vector>

namespace focksim {

/// One line of the verification table. Reported-only lines (asserted = false)
/// print their measurements but never fail the run.
struct CheckResult {
    std::string id;
    std::string description;
    bool asserted = true;
    bool passed = true;
    std::string details;
};

struct VerificationSummary {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    int failed_count() const;
};

/// Self-contained end-to-end verification of the simulator's physics claims
/// and numerics hygiene, with pinned parameters and tolerances.
VerificationSummary run_verification();

std::string format_verification_table(const VerificationSummary& summary);

}  // namespace focksim
