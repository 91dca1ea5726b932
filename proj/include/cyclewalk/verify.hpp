#pragma once
// One-shot run of the library's structural and limit checks, used by
// `cyclewalk verify`. Every check is deterministic (fixed-seed sampling).

#include "cyclewalk/output.hpp"

#include <string>
#include <vector>

namespace cyclewalk {

struct CheckResult {
    std::string name;
    bool passed = false;
    // Worst observed value of the checked quantity, compared against `tolerance`.
    double measured = 0.0;
    double tolerance = 0.0;
    long long cases = 0;
    std::string detail;
};

struct VerifyOptions {
    bool quick = false;
    // Empty: run every check.
    std::vector<std::string> checks;
    // Checks run concurrently on up to this many threads; results keep suite order.
    int threads = 1;
};

const std::vector<std::string>& available_checks();

// Throws DomainError for unknown check names.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

Json verification_report(const std::vector<CheckResult>& results, const VerifyOptions& options);

}  // namespace cyclewalk
