#include "antidamp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace antidamp {

Mat4 operator+(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Mat4 operator-(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            const double xik = x(i, k);
            for (std::size_t j = 0; j < 4; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

Mat4 operator*(double s, const Mat4& x) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = s * x.a[i];
    return r;
}

Vec4 operator*(const Mat4& m, const Vec4& v) {
    Vec4 r{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
    return r;
}

double trace(const Mat4& m) { return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3); }

double determinant(const Mat4& m) {
    Mat4 lu = m;
    double det = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < 4; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        if (lu(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < 4; ++j) std::swap(lu(k, j), lu(piv, j));
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t i = k + 1; i < 4; ++i) {
            const double f = lu(i, k) / lu(k, k);
            for (std::size_t j = k; j < 4; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

double norm_1(const Mat4& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

double norm_frobenius(const Mat4& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

double norm_2(const Vec4& v) { return std::hypot(std::hypot(v[0], v[1]), std::hypot(v[2], v[3])); }

Mat4 solve(const Mat4& q, const Mat4& p) {
    Mat4 a = q;
    Mat4 x = p;
    const double scale = norm_1(q);
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < 4; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) <= std::numeric_limits<double>::epsilon() * scale)
            throw std::runtime_error("solve: matrix is numerically singular");
        if (piv != k)
            for (std::size_t j = 0; j < 4; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(x(k, j), x(piv, j));
            }
        for (std::size_t i = k + 1; i < 4; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < 4; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < 4; ++j) x(i, j) -= f * x(k, j);
        }
    }
    for (std::size_t kk = 4; kk-- > 0;) {
        for (std::size_t j = 0; j < 4; ++j) {
            double s = x(kk, j);
            for (std::size_t c = kk + 1; c < 4; ++c) s -= a(kk, c) * x(c, j);
            x(kk, j) = s / a(kk, kk);
        }
    }
    return x;
}

std::vector<double> singular_values(std::span<const double> data, std::size_t rows, std::size_t cols) {
    if (data.size() != rows * cols) throw std::invalid_argument("singular_values: size mismatch");
    // Work column-wise on a tall matrix; transpose wide inputs.
    const bool transpose = rows < cols;
    const std::size_t m = transpose ? cols : rows;
    const std::size_t n = transpose ? rows : cols;
    std::vector<double> w(m * n);  // column-major, w[j*m + i]
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = data[i * cols + j];
            if (transpose)
                w[i * m + j] = v;
            else
                w[j * m + i] = v;
        }

    constexpr double tol = 1e-15;
    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double* cp = &w[p * m];
                double* cq = &w[q * m];
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += cp[i] * cp[i];
                    beta += cq[i] * cq[i];
                    gamma += cp[i] * cq[i];
                }
                if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double xp = cp[i];
                    const double xq = cq[i];
                    cp[i] = c * xp - s * xq;
                    cq[i] = s * xp + c * xq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += w[j * m + i] * w[j * m + i];
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

std::vector<double> singular_values(const Mat4& m) { return singular_values(m.a, 4, 4); }

double operator_norm(const Mat4& m) { return singular_values(m).front(); }

std::array<double, 4> shifted_singular_values(const Mat4& m, Complex lambda) {
    std::array<double, 64> e{};
    auto at = [&e](std::size_t r, std::size_t c) -> double& { return e[r * 8 + c]; };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double re = m(i, j) - (i == j ? lambda.real() : 0.0);
            const double im = i == j ? -lambda.imag() : 0.0;
            at(i, j) = re;
            at(i + 4, j + 4) = re;
            at(i, j + 4) = -im;
            at(i + 4, j) = im;
        }
    const auto sv = singular_values(e, 8, 8);
    // Each singular value of the complex matrix appears twice.
    return {sv[0], sv[2], sv[4], sv[6]};
}

namespace {

struct PadeCoefficients {
    double theta;
    std::vector<double> b;
};

const std::array<PadeCoefficients, 5>& pade_table() {
    static const std::array<PadeCoefficients, 5> table{{
        {1.495585217958292e-2, {120., 60., 12., 1.}},
        {2.539398330063230e-1, {30240., 15120., 3360., 420., 30., 1.}},
        {9.504178996162932e-1, {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.}},
        {2.097847961257068e0,
         {17643225600., 8821612800., 2075673600., 302702400., 30270240., 2162160., 110880., 3960., 90.,
          1.}},
        {5.371920351148152e0,
         {64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800., 129060195264000.,
          10559470521600., 670442572800., 33522128640., 1323241920., 40840800., 960960., 16380., 182.,
          1.}},
    }};
    return table;
}

Mat4 pade(const Mat4& a, const std::vector<double>& b) {
    const Mat4 id = Mat4::identity();
    const std::size_t degree = b.size() - 1;
    Mat4 u, v;
    if (degree < 13) {
        // Even/odd split over powers of A^2.
        const Mat4 a2 = a * a;
        Mat4 power = id;
        Mat4 uo, ve;
        for (std::size_t k = 0; k <= degree; k += 2) {
            ve = ve + b[k] * power;
            uo = uo + b[k + 1] * power;
            power = power * a2;
        }
        u = a * uo;
        v = ve;
    } else {
        const Mat4 a2 = a * a;
        const Mat4 a4 = a2 * a2;
        const Mat4 a6 = a4 * a2;
        const Mat4 u_hi = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
        u = a * (u_hi + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
        const Mat4 v_hi = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
        v = v_hi + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    }
    return solve(v - u, v + u);
}

}  // namespace

Mat4 expm(const Mat4& m) {
    for (double x : m.a)
        if (!std::isfinite(x)) throw std::invalid_argument("expm: non-finite matrix entry");
    const double n1 = norm_1(m);
    const auto& table = pade_table();
    for (std::size_t k = 0; k + 1 < table.size(); ++k)
        if (n1 <= table[k].theta) return pade(m, table[k].b);

    const auto& top = table.back();
    int s = 0;
    if (n1 > top.theta) s = static_cast<int>(std::ceil(std::log2(n1 / top.theta)));
    Mat4 r = pade(std::ldexp(1.0, -s) * m, top.b);
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

}  // namespace antidamp
