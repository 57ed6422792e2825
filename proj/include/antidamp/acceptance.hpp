#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace antidamp {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the ten end-to-end acceptance criteria. When `log` is non-null, one
/// PASS/FAIL line per criterion is written as each completes.
std::vector<CriterionResult> run_acceptance(std::ostream* log = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace antidamp
