#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "antidamp/core.hpp"

namespace antidamp {

/// Eigenvalues mu_k of a strictly positive self-adjoint operator A with compact
/// resolvent. Values are strictly increasing and positive.
class ModeFamily {
public:
    /// Validates strict increase, positivity and finiteness.
    ModeFamily(std::vector<double> mu, std::string label = {});

    /// Sorts and removes duplicates first; rejects non-positive or non-finite values.
    static ModeFamily from_values(std::vector<double> values, std::string label = {});

    /// Dirichlet Laplacian on (0, length): mu_k = (k pi / length)^2, k = 1..count.
    static ModeFamily dirichlet(std::size_t count, double length = 1.0);

    /// One positive real per line; blank lines and text after '#' are ignored.
    static ModeFamily parse(std::istream& in, std::string label = {});
    static ModeFamily load(const std::string& path);

    const std::vector<double>& mu() const { return mu_; }
    const std::string& label() const { return label_; }
    double first() const { return mu_.front(); }
    std::size_t size() const { return mu_.size(); }

private:
    std::vector<double> mu_;
    std::string label_;
};

/// Generator of the mode projected on an eigenvector of A with eigenvalue mu:
/// rows (0,1,0,0), (-mu,-1,0,b), (0,0,0,1), (0,-b,-mu,eps).
Mat4 mode_matrix(double mu, const Params& p);

/// (1, 1-eps, 2mu+b^2-eps, mu(1-eps), mu^2), highest degree first.
std::array<double, 5> mode_poly_coeffs(double mu, const Params& p);

/// Eigenvalues of mode_matrix from the reciprocal factorization of its quartic.
std::array<Complex, 4> mode_eigenvalues(double mu, const Params& p);

/// Eigenvalues of mode_matrix from a general dense eigensolver (Hessenberg QR).
/// Loses ~sqrt(machine eps) at multiple eigenvalues; kept as an independent check.
std::array<Complex, 4> mode_eigenvalues_dense(double mu, const Params& p);

/// Max real part of the mode's eigenvalues.
double mode_growth_bound(double mu, const Params& p);

struct FamilyBound {
    double sup = 0.0;            ///< max over modes of mode_growth_bound
    std::size_t argmax = 0;      ///< first mode index attaining the sup
    std::vector<double> bounds;  ///< per-mode growth bounds
    std::vector<int> defects;    ///< per-mode defect of the dominant eigenvalue
};

/// Supremum of the per-mode growth bounds. The last tail_check modes must show
/// non-increasing consecutive differences (within 1e-12), otherwise the truncation
/// is not trusted and NumericalError is thrown.
FamilyBound family_growth_bound(const ModeFamily& f, const Params& p, std::size_t tail_check = 8);

/// mu_1 >= (1 - eps)^2 / 16, the condition under which the optimal single-oscillator
/// rate (1 - eps)/4 carries over to every mode. Requires 0 <= eps < 1.
bool threshold_check(const ModeFamily& f, double epsilon);

}  // namespace antidamp
