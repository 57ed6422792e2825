#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "antidamp/core.hpp"
#include "antidamp/modal.hpp"

namespace antidamp {

/// Shortest decimal text that parses back to the same double (at most 17 digits).
std::string format_double(double v);

/// key=value record: regime, omega*, defects, eigenvalues, and for eps < 1 the
/// thresholds sqrt(eps) and (1+eps)/2.
std::string classify_report(const Params& p);

struct SweepRow {
    double b = 0.0;
    double omega_star = 0.0;
    int defect = 0;  ///< defect penalty at the dominant real part
};

struct SweepResult {
    double epsilon = 0.0;
    std::vector<SweepRow> rows;
    std::size_t argmin = 0;
};

/// Uniform grid b_k = ((n-1-k) b_min + k b_max) / (n-1), k = 0..n-1.
SweepResult sweep(double epsilon, double b_min, double b_max, std::size_t n);

/// Header `b,omega_star,defect` followed by one row per grid point.
void write_sweep_csv(std::ostream& out, const SweepResult& s);

/// key=value record for a mode family: supremum bound, attaining mode, threshold test.
std::string modes_report(const ModeFamily& f, const Params& p, std::size_t tail_check);

}  // namespace antidamp
