#include "antidamp/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "antidamp/errors.hpp"
#include "antidamp/golden.hpp"

namespace antidamp {

Complex branch_sqrt(Complex z) {
    Complex r = std::sqrt(z);
    // std::sqrt maps -x - 0i to -i sqrt(x); the argument must stay in (-pi/2, pi/2].
    if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
    return r;
}

double Spectrum::max_real() const {
    double m = eigenvalues[0].real();
    for (const auto& l : eigenvalues) m = std::max(m, l.real());
    return m;
}

int Spectrum::max_defect() const { return *std::max_element(defects.begin(), defects.end()); }

std::array<double, 5> characteristic_poly_coeffs(double epsilon, double b) {
    return {1.0, 1.0 - epsilon, 2.0 + b * b - epsilon, 1.0 - epsilon, 1.0};
}

std::array<double, 5> characteristic_poly_coeffs(const Params& p) {
    return characteristic_poly_coeffs(p.epsilon(), p.b());
}

std::array<Complex, 4> reciprocal_quartic_roots(double epsilon, double b, double mu) {
    const double e = epsilon;
    // (1+e)^2 - 4b^2 in factored form: exact zero at b = (1+e)/2.
    const Complex a = branch_sqrt(Complex((1.0 + e - 2.0 * b) * (1.0 + e + 2.0 * b), 0.0));
    // 2(1 - 8mu + e^2 - 2b^2 -+ (1-e)a) equals m^2 - 16mu with m = e - 1 +- a. The factored
    // difference of squares keeps the error relative to mu instead of to 1, which matters
    // at the quadruple root mu = (1-e)^2/16.
    auto disc = [mu](Complex m) {
        if (m.imag() == 0.0) {
            const double r = 4.0 * std::sqrt(mu);
            return Complex((m.real() - r) * (m.real() + r), 0.0);
        }
        return m * m - 16.0 * mu;
    };
    const Complex m_plus = e - 1.0 + a;
    const Complex m_minus = e - 1.0 - a;
    const Complex s_minus = branch_sqrt(disc(m_plus));
    const Complex s_plus = branch_sqrt(disc(m_minus));
    return {
        (m_plus + s_minus) / 4.0,
        (m_minus + s_plus) / 4.0,
        (m_plus - s_minus) / 4.0,
        (m_minus - s_plus) / 4.0,
    };
}

namespace {

std::array<Complex, 4> dense_eigenvalues(const Mat4& m) {
    Eigen::Matrix4d em;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) em(i, j) = m(i, j);
    Eigen::EigenSolver<Eigen::Matrix4d> solver(em, false);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed to converge");
    std::array<Complex, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()[i];
    return out;
}

bool near_relative(double x, double y, double rel = 1e-12) {
    return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y));
}

}  // namespace

int eigenvalue_defect(const Mat4& m, Complex lambda, std::span<const Complex> roots, const DefectTolerances& tol) {
    int algebraic = 0;
    for (const auto& r : roots)
        if (std::abs(r - lambda) <= tol.cluster) ++algebraic;
    if (algebraic == 0)
        throw std::invalid_argument("eigenvalue_defect: lambda is not an eigenvalue within the cluster radius");

    const auto sv = shifted_singular_values(m, lambda);
    const double threshold = tol.rank * operator_norm(m);
    int geometric = 0;
    for (double s : sv)
        if (s < threshold) ++geometric;
    if (geometric == 0)
        throw std::invalid_argument("eigenvalue_defect: m - lambda I has full numerical rank");
    return std::max(0, algebraic - geometric);
}

int eigenvalue_defect(const SystemMatrix& m, Complex lambda, const DefectTolerances& tol) {
    const auto roots = dense_eigenvalues(m.entries);
    return eigenvalue_defect(m.entries, lambda, roots, tol);
}

Spectrum closed_form_eigenvalues(const Params& p) {
    Spectrum s;
    s.eigenvalues = reciprocal_quartic_roots(p.epsilon(), p.b(), 1.0);
    const Mat4 m = assemble_matrix(p).entries;
    for (std::size_t i = 0; i < 4; ++i) s.defects[i] = eigenvalue_defect(m, s.eigenvalues[i], s.eigenvalues);
    return s;
}

double growth_bound(const Params& p) {
    const auto roots = reciprocal_quartic_roots(p.epsilon(), p.b(), 1.0);
    double m = roots[0].real();
    for (const auto& r : roots) m = std::max(m, r.real());
    return m;
}

std::string to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::ExpBlowup: return "ExpBlowup";
        case RegimeKind::PolyBlowup: return "PolyBlowup";
        case RegimeKind::BoundedNonDecaying: return "BoundedNonDecaying";
        case RegimeKind::ExpDecay: return "ExpDecay";
    }
    return "Unknown";
}

Regime classify(const Params& p) {
    const double e = p.epsilon();
    const double b = p.b();
    const Spectrum s = closed_form_eigenvalues(p);

    // Sign of omega* from the exact parameter relations: +1, 0 or -1.
    int sign;
    if (near_relative(e, 1.0)) {
        sign = near_relative(b, 1.0) || b > 1.0 ? 0 : 1;
    } else if (e > 1.0) {
        sign = 1;
    } else {
        const double root_e = std::sqrt(e);
        if (near_relative(b, root_e))
            sign = 0;
        else
            sign = b < root_e ? 1 : -1;
    }

    Regime r;
    r.omega_star = sign == 0 ? 0.0 : s.max_real();
    constexpr double dominant_tol = 1e-9;
    for (std::size_t i = 0; i < 4; ++i)
        if (std::abs(s.eigenvalues[i].real() - r.omega_star) <= dominant_tol * (1.0 + std::abs(r.omega_star)))
            r.defect_penalty = std::max(r.defect_penalty, s.defects[i]);

    if (sign > 0) {
        r.kind = RegimeKind::ExpBlowup;
    } else if (sign < 0) {
        r.kind = RegimeKind::ExpDecay;
    } else if (r.defect_penalty > 0) {
        r.kind = RegimeKind::PolyBlowup;
        r.poly_degree = r.defect_penalty;
    } else {
        r.kind = RegimeKind::BoundedNonDecaying;
    }
    return r;
}

OptimalCoupling optimal_coupling(double epsilon, double b_max) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("optimal_coupling: no decaying regime unless 0 <= epsilon < 1");
    // Near eps = 1 the gap eta - sqrt(eps) = (1 - sqrt(eps))^2 / 2 drops below 1e-4.
    const double se = std::sqrt(epsilon);
    const double lo = se + std::min(1e-4, 0.5 * ((1.0 + epsilon) / 2.0 - se));
    if (!(b_max > lo)) throw std::invalid_argument("optimal_coupling: b_max below the decay threshold");

    OptimalCoupling out;
    out.b_opt = (1.0 + epsilon) / 2.0;
    out.omega_star = (epsilon - 1.0) / 4.0;

    const auto best = golden_section_minimize(
        [epsilon](double b) { return growth_bound(Params(epsilon, b)); }, lo, b_max);
    out.b_numeric = best.x;
    out.omega_numeric = best.value;
    if (std::abs(out.b_numeric - out.b_opt) > 1e-6 || std::abs(out.omega_numeric - out.omega_star) > 1e-6)
        throw NumericalError("optimal_coupling: numerical minimizer disagrees with (1+eps)/2");
    return out;
}

}  // namespace antidamp
