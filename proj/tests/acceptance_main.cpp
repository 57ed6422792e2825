// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <iostream>

#include "antidamp/acceptance.hpp"

int main() {
    const auto results = antidamp::run_acceptance(&std::cout);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    std::cout << passed << "/" << results.size() << " criteria passed\n";
    return antidamp::all_passed(results) ? 0 : 1;
}
