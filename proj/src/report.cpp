#include "antidamp/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "antidamp/spectrum.hpp"

namespace antidamp {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string classify_report(const Params& p) {
    const Spectrum s = closed_form_eigenvalues(p);
    const Regime r = classify(p);
    std::ostringstream out;
    out << "epsilon=" << format_double(p.epsilon()) << '\n';
    out << "b=" << format_double(p.b()) << '\n';
    out << "kind=" << to_string(r.kind) << '\n';
    if (r.kind == RegimeKind::PolyBlowup) out << "degree=" << r.poly_degree << '\n';
    out << "omega_star=" << format_double(r.omega_star) << '\n';
    out << "defect=" << r.defect_penalty << '\n';
    int stable = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& l = s.eigenvalues[i];
        out << "lambda" << i + 1 << "_re=" << format_double(l.real()) << '\n';
        out << "lambda" << i + 1 << "_im=" << format_double(l.imag()) << '\n';
        out << "lambda" << i + 1 << "_defect=" << s.defects[i] << '\n';
        if (l.real() < 0.0) ++stable;
    }
    // Dimension of the (real) decaying subspace; nonzero even in blow-up regimes.
    out << "stable_dim=" << stable << '\n';
    if (p.epsilon() < 1.0) {
        out << "sqrt_epsilon=" << format_double(std::sqrt(p.epsilon())) << '\n';
        out << "eta=" << format_double((1.0 + p.epsilon()) / 2.0) << '\n';
        out << "optimal_omega=" << format_double((p.epsilon() - 1.0) / 4.0) << '\n';
    }
    return out.str();
}

SweepResult sweep(double epsilon, double b_min, double b_max, std::size_t n) {
    if (n < 2) throw std::invalid_argument("sweep: need n >= 2");
    if (!(b_min > 0.0 && b_max > b_min)) throw std::invalid_argument("sweep: need 0 < b_min < b_max");
    SweepResult s;
    s.epsilon = epsilon;
    s.rows.reserve(n);
    const double den = static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double b = ((den - kk) * b_min + kk * b_max) / den;
        const Regime r = classify(Params(epsilon, b));
        s.rows.push_back({b, r.omega_star, r.defect_penalty});
        if (r.omega_star < s.rows[s.argmin].omega_star) s.argmin = k;
    }
    return s;
}

void write_sweep_csv(std::ostream& out, const SweepResult& s) {
    out << "b,omega_star,defect\n";
    for (const auto& r : s.rows) out << format_double(r.b) << ',' << format_double(r.omega_star) << ',' << r.defect << '\n';
}

std::string modes_report(const ModeFamily& f, const Params& p, std::size_t tail_check) {
    const FamilyBound fb = family_growth_bound(f, p, tail_check);
    std::ostringstream out;
    out << "label=" << f.label() << '\n';
    out << "modes=" << f.size() << '\n';
    out << "epsilon=" << format_double(p.epsilon()) << '\n';
    out << "b=" << format_double(p.b()) << '\n';
    out << "sup_growth_bound=" << format_double(fb.sup) << '\n';
    out << "argmax_mode=" << fb.argmax + 1 << '\n';
    out << "argmax_mu=" << format_double(f.mu()[fb.argmax]) << '\n';
    out << "argmax_defect=" << fb.defects[fb.argmax] << '\n';
    out << "first_mu=" << format_double(f.first()) << '\n';
    if (p.epsilon() < 1.0) {
        const double r = 1.0 - p.epsilon();
        out << "threshold=" << format_double(r * r / 16.0) << '\n';
        out << "threshold_met=" << (threshold_check(f, p.epsilon()) ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace antidamp
