#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace antidamp {

using Complex = std::complex<double>;

/// Dense row-major 4x4 real matrix.
struct Mat4 {
    std::array<double, 16> a{};

    constexpr double& operator()(std::size_t r, std::size_t c) { return a[r * 4 + c]; }
    constexpr double operator()(std::size_t r, std::size_t c) const { return a[r * 4 + c]; }

    static constexpr Mat4 identity() {
        Mat4 m;
        for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }

    friend bool operator==(const Mat4&, const Mat4&) = default;
};

using Vec4 = std::array<double, 4>;

Mat4 operator+(const Mat4& x, const Mat4& y);
Mat4 operator-(const Mat4& x, const Mat4& y);
Mat4 operator*(const Mat4& x, const Mat4& y);
Mat4 operator*(double s, const Mat4& x);
Vec4 operator*(const Mat4& m, const Vec4& v);

double trace(const Mat4& m);
double determinant(const Mat4& m);
/// Maximum absolute column sum.
double norm_1(const Mat4& m);
double norm_frobenius(const Mat4& m);
double norm_2(const Vec4& v);

/// Solves X * q = p for X (i.e. q^{-1} p) by Gaussian elimination with partial pivoting.
/// Throws std::runtime_error when q is numerically singular.
Mat4 solve(const Mat4& q, const Mat4& p);

/// Singular values of a dense rows x cols matrix (row-major), descending.
/// One-sided Jacobi (Hestenes) iteration; deterministic for a given input.
std::vector<double> singular_values(std::span<const double> data, std::size_t rows, std::size_t cols);

std::vector<double> singular_values(const Mat4& m);

/// Largest singular value.
double operator_norm(const Mat4& m);

/// Singular values of the complex matrix m - lambda*I (4 values, descending).
/// Uses the real 8x8 embedding [[Re, -Im], [Im, Re]], whose spectrum doubles each value.
std::array<double, 4> shifted_singular_values(const Mat4& m, Complex lambda);

/// Matrix exponential e^m by scaling and squaring with the degree-13 Pade approximant.
Mat4 expm(const Mat4& m);

}  // namespace antidamp
