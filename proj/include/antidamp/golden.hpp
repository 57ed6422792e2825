#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace antidamp {

struct ScalarMinimum {
    double x = 0.0;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
///
/// Iterates until the interior points can no longer be separated in double
/// precision, then evaluates every representable point left in the bracket
/// (a handful). The best evaluated point is returned, which matters for cusp
/// minima where f rises like sqrt(|x - x*|) and one ulp moves the value by ~1e-8.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, int max_iterations = 400) {
    if (!(lo < hi)) throw std::invalid_argument("golden_section_minimize: empty bracket");
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;

    ScalarMinimum best;
    auto eval = [&](double x) {
        const double fx = f(x);
        ++best.evaluations;
        if (fx < best.value || (fx == best.value && x < best.x)) {
            best.value = fx;
            best.x = x;
        }
        return fx;
    };

    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    double fc = eval(c);
    double fd = eval(d);
    for (int it = 0; it < max_iterations && lo < c && c < d && d < hi; ++it) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = eval(d);
        }
    }

    constexpr int scan_cap = 64;
    int scanned = 0;
    for (double x = lo; x <= hi && scanned < scan_cap; x = std::nextafter(x, hi + 1.0), ++scanned) eval(x);
    return best;
}

}  // namespace antidamp
