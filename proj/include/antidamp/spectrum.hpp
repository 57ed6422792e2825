#pragma once

#include <array>
#include <span>
#include <string>

#include "antidamp/core.hpp"

namespace antidamp {

/// Square root with argument in (-pi/2, pi/2].
///
/// On the cut (negative reals) the result is +i*sqrt(|z|) regardless of the
/// sign of the zero imaginary part. With this choice
/// Re sqrt(2(alpha +- i beta)) = sqrt(rho + alpha), rho = |alpha + i beta|.
Complex branch_sqrt(Complex z);

/// Eigenvalues lambda_1..lambda_4 of the system matrix in closed-form order,
/// with the defect (algebraic - geometric multiplicity) of each value.
/// Repeated eigenvalues carry the same defect on every occurrence.
struct Spectrum {
    std::array<Complex, 4> eigenvalues{};
    std::array<int, 4> defects{};

    double max_real() const;
    int max_defect() const;
};

/// Coefficients (1, 1-eps, 2+b^2-eps, 1-eps, 1) of det(lambda I - A), highest degree first.
/// Takes raw doubles: the polynomial is defined for any real b and depends on b^2 only.
std::array<double, 5> characteristic_poly_coeffs(double epsilon, double b);
std::array<double, 5> characteristic_poly_coeffs(const Params& p);

/// Roots of  lambda^4 + (1-eps) lambda^3 + (2 mu + b^2 - eps) lambda^2 + mu (1-eps) lambda + mu^2.
///
/// The polynomial is reciprocal under lambda -> mu/lambda, so with w = lambda + mu/lambda it
/// splits into w^2 + (1-eps) w + (b^2 - eps) = 0 followed by lambda^2 - w lambda + mu = 0.
/// With a = sqrt((1+eps)^2 - 4b^2) the roots are
///   (eps - 1 +- a +- sqrt(2(1 - 8mu + eps^2 - 2b^2 -+ (1-eps) a))) / 4
/// ordered as (+a,+), (-a,+), (+a,-), (-a,-). mu = 1 gives the single-oscillator quartic.
std::array<Complex, 4> reciprocal_quartic_roots(double epsilon, double b, double mu);

/// Closed-form eigenvalues of assemble_matrix(p), with defects attached.
Spectrum closed_form_eigenvalues(const Params& p);

struct DefectTolerances {
    /// Singular values of (A - lambda I) below rank * ||A||_2 count as zero.
    double rank = 1e-8;
    /// Roots within this distance of lambda count toward its algebraic multiplicity.
    double cluster = 1e-6;
};

/// Algebraic minus geometric multiplicity of lambda as an eigenvalue of m.
/// Roots for the algebraic count come from a dense eigensolver applied to m.
/// Throws std::invalid_argument if lambda is not an eigenvalue within tolerance.
int eigenvalue_defect(const SystemMatrix& m, Complex lambda, const DefectTolerances& tol = {});

/// Same, clustering against a caller-supplied root list (e.g. closed-form roots).
int eigenvalue_defect(const Mat4& m, Complex lambda, std::span<const Complex> roots,
                      const DefectTolerances& tol = {});

/// Growth bound omega* = max Re lambda_i.
double growth_bound(const Params& p);

enum class RegimeKind { ExpBlowup, PolyBlowup, BoundedNonDecaying, ExpDecay };

std::string to_string(RegimeKind kind);

struct Regime {
    RegimeKind kind = RegimeKind::ExpDecay;
    int poly_degree = 0;     ///< blow-up degree, nonzero only for PolyBlowup
    double omega_star = 0.0;
    int defect_penalty = 0;  ///< max defect among eigenvalues with Re = omega*
};

/// Long-time behaviour of the semigroup. Boundary cases (eps = 1, b = 1, b = sqrt(eps))
/// are detected on the inputs with relative tolerance 1e-12; there omega* is reported as 0.
Regime classify(const Params& p);

struct OptimalCoupling {
    double b_opt = 0.0;          ///< (1 + eps) / 2
    double omega_star = 0.0;     ///< (eps - 1) / 4
    double b_numeric = 0.0;      ///< golden-section minimizer of growth_bound
    double omega_numeric = 0.0;  ///< growth_bound at b_numeric
};

/// Coupling with the fastest decay for 0 <= eps < 1, cross-checked by minimizing
/// growth_bound over b in [sqrt(eps) + min(1e-4, (eta - sqrt(eps))/2), b_max]. Throws std::invalid_argument for
/// eps outside [0, 1) and NumericalError if the two disagree by more than 1e-6.
OptimalCoupling optimal_coupling(double epsilon, double b_max = 10.0);

}  // namespace antidamp
