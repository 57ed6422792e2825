#pragma once

// Reference computations used only by the tests. None of them call into the
// library's numerical kernels.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include "antidamp/linalg.hpp"

namespace oracle {

using LComplex = std::complex<long double>;
using LMat = std::array<std::array<long double, 4>, 4>;

inline LMat to_lmat(const antidamp::Mat4& m) {
    LMat out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = m(r, c);
    return out;
}

/// Monic-normalised quartic roots by Durand-Kerner in long double.
inline std::array<std::complex<double>, 4> quartic_roots(const std::array<double, 5>& c) {
    std::array<LComplex, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = static_cast<long double>(c[i]) / static_cast<long double>(c[0]);
    auto p = [&](LComplex z) {
        LComplex acc = a[0];
        for (int i = 1; i < 5; ++i) acc = acc * z + a[i];
        return acc;
    };
    std::array<LComplex, 4> z;
    const LComplex seed(0.4L, 0.9L);
    z[0] = 1.0L;
    for (int i = 1; i < 4; ++i) z[i] = z[i - 1] * seed;
    for (int it = 0; it < 2000; ++it) {
        long double change = 0.0L;
        for (int i = 0; i < 4; ++i) {
            LComplex den = 1.0L;
            for (int j = 0; j < 4; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) == 0.0L) den = 1e-30L;
            const LComplex step = p(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-30L) break;
    }
    std::array<std::complex<double>, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = {static_cast<double>(z[i].real()), static_cast<double>(z[i].imag())};
    return out;
}

/// Smallest max-distance over all pairings of two 4-element multisets.
inline double matching_distance(const std::array<std::complex<double>, 4>& a,
                                const std::array<std::complex<double>, 4>& b) {
    std::array<int, 4> perm{0, 1, 2, 3};
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Leibniz expansion over all 24 permutations.
inline LComplex permutation_det(const std::array<std::array<LComplex, 4>, 4>& m) {
    std::array<int, 4> perm{0, 1, 2, 3};
    LComplex sum = 0.0L;
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (perm[i] > perm[j]) ++inversions;
        LComplex term = inversions % 2 ? -1.0L : 1.0L;
        for (int i = 0; i < 4; ++i) term *= m[i][perm[i]];
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

/// det(z I - m) by permutation expansion.
inline LComplex char_det(const antidamp::Mat4& m, LComplex z) {
    std::array<std::array<LComplex, 4>, 4> a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[r][c] = (r == c ? z : LComplex(0.0L)) - static_cast<long double>(m(r, c));
    return permutation_det(a);
}

inline LMat lmul(const LMat& x, const LMat& y) {
    LMat out{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) out[i][j] += x[i][k] * y[k][j];
    return out;
}

/// e^m via Taylor series on m / 2^s in long double, then s squarings.
inline antidamp::Mat4 expm_taylor(const antidamp::Mat4& m) {
    LMat a = to_lmat(m);
    long double norm = 0.0L;
    for (auto& row : a)
        for (long double v : row) norm = std::max(norm, std::fabs(v));
    int s = 0;
    while (norm * 4.0L > 0.125L) {
        norm /= 2.0L;
        ++s;
    }
    for (auto& row : a)
        for (long double& v : row) v = std::ldexp(v, -s);
    LMat sum{}, term{};
    for (int i = 0; i < 4; ++i) sum[i][i] = term[i][i] = 1.0L;
    for (int k = 1; k < 40; ++k) {
        term = lmul(term, a);
        for (auto& row : term)
            for (long double& v : row) v /= k;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) sum[i][j] += term[i][j];
    }
    for (int i = 0; i < s; ++i) sum = lmul(sum, sum);
    antidamp::Mat4 out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = static_cast<double>(sum[r][c]);
    return out;
}

inline Eigen::Matrix4d to_eigen(const antidamp::Mat4& m) {
    Eigen::Matrix4d e;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) e(r, c) = m(r, c);
    return e;
}

inline std::array<std::complex<double>, 4> dense_eigenvalues(const antidamp::Mat4& m) {
    Eigen::EigenSolver<Eigen::Matrix4d> es(to_eigen(m), false);
    std::array<std::complex<double>, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()[i];
    return out;
}

inline double max_abs_diff(const antidamp::Mat4& x, const antidamp::Mat4& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
    return d;
}

inline double max_abs(const antidamp::Mat4& x) {
    double d = 0.0;
    for (double v : x.a) d = std::max(d, std::abs(v));
    return d;
}

}  // namespace oracle
