#include <doctest.h>

#include <Eigen/SVD>

#include <random>

#include "antidamp/core.hpp"
#include "antidamp/linalg.hpp"
#include "oracles.hpp"

using namespace antidamp;

namespace {

Mat4 random_matrix(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> d(-scale, scale);
    Mat4 m;
    for (double& v : m.a) v = d(rng);
    return m;
}

}  // namespace

TEST_CASE("expm of zero and of a diagonal matrix") {
    CHECK(expm(Mat4{}) == Mat4::identity());
    Mat4 d;
    d(0, 0) = 1.0;
    d(1, 1) = -2.0;
    d(2, 2) = 0.5;
    d(3, 3) = 3.0;
    const Mat4 e = expm(d);
    CHECK(e(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(e(2, 2) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
    CHECK(e(3, 3) == doctest::Approx(std::exp(3.0)).epsilon(1e-14));
    CHECK(e(0, 1) == 0.0);
}

TEST_CASE("expm of a rotation generator") {
    Mat4 j;
    j(0, 1) = -2.0;
    j(1, 0) = 2.0;
    const Mat4 e = expm(j);
    CHECK(e(0, 0) == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
    CHECK(e(1, 0) == doctest::Approx(std::sin(2.0)).epsilon(1e-14));
    CHECK(e(2, 2) == doctest::Approx(1.0));
}

TEST_CASE("expm of a Jordan block") {
    Mat4 n;
    n(0, 1) = 1.0;
    n(1, 2) = 1.0;
    n(2, 3) = 1.0;
    const Mat4 e = expm(n);
    CHECK(e(0, 1) == doctest::Approx(1.0));
    CHECK(e(0, 2) == doctest::Approx(0.5));
    CHECK(e(0, 3) == doctest::Approx(1.0 / 6.0));
    CHECK(e(3, 0) == 0.0);
}

TEST_CASE("expm agrees with a long double Taylor series across scales") {
    std::mt19937_64 rng(7);
    for (double scale : {1e-3, 0.1, 1.0, 3.0, 10.0}) {
        for (int k = 0; k < 20; ++k) {
            const Mat4 m = random_matrix(rng, scale);
            const Mat4 ref = oracle::expm_taylor(m);
            CHECK(oracle::max_abs_diff(expm(m), ref) <= 1e-11 * std::max(1.0, oracle::max_abs(ref)));
        }
    }
}

TEST_CASE("expm of system generators up to norm 50") {
    for (double eps : {0.0, 0.5, 1.0, 2.0}) {
        for (double b : {0.3, 1.0, 5.0}) {
            const Mat4 a = assemble_matrix(Params(eps, b)).entries;
            for (double t : {0.5, 5.0, 20.0}) {
                const Mat4 ta = t * a;
                if (norm_1(ta) > 50.0) continue;
                const Mat4 ref = oracle::expm_taylor(ta);
                CHECK(oracle::max_abs_diff(expm(ta), ref) <= 1e-10 * std::max(1.0, oracle::max_abs(ref)));
            }
        }
    }
}

TEST_CASE("expm rejects non-finite input") {
    Mat4 m;
    m(2, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(expm(m));
}

TEST_CASE("singular values agree with Eigen's SVD") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        const Mat4 m = random_matrix(rng, 2.0);
        const auto sv = singular_values(m);
        Eigen::JacobiSVD<Eigen::Matrix4d> svd(oracle::to_eigen(m));
        REQUIRE(sv.size() == 4);
        for (int i = 0; i < 4; ++i) CHECK(sv[i] == doctest::Approx(svd.singularValues()[i]).epsilon(1e-12));
        CHECK(operator_norm(m) == sv[0]);
    }
}

TEST_CASE("singular values of a rectangular and a rank-deficient matrix") {
    const std::vector<double> a{3.0, 0.0, 0.0, 4.0, 0.0, 0.0};  // 3x2
    const auto sv = singular_values(a, 3, 2);
    REQUIRE(sv.size() == 2);
    CHECK(sv[0] == doctest::Approx(4.0));
    CHECK(sv[1] == doctest::Approx(3.0));

    Mat4 r;
    r(0, 0) = 1.0;
    r(0, 1) = 2.0;
    r(1, 0) = 2.0;
    r(1, 1) = 4.0;
    const auto s = singular_values(r);
    CHECK(s[0] == doctest::Approx(5.0));
    CHECK(s[1] < 1e-14);
}

TEST_CASE("singular values are deterministic") {
    std::mt19937_64 rng(3);
    const Mat4 m = random_matrix(rng, 1.0);
    CHECK(singular_values(m) == singular_values(m));
}

TEST_CASE("shifted singular values match the complex SVD") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
        const Mat4 m = random_matrix(rng, 1.0);
        const Complex lambda(0.3 * k - 2.0, 0.1 * k);
        Eigen::Matrix4cd c = oracle::to_eigen(m).cast<std::complex<double>>();
        c -= lambda * Eigen::Matrix4cd::Identity();
        Eigen::JacobiSVD<Eigen::Matrix4cd> svd(c);
        const auto sv = shifted_singular_values(m, lambda);
        for (int i = 0; i < 4; ++i) CHECK(sv[i] == doctest::Approx(svd.singularValues()[i]).epsilon(1e-11));
    }
}

TEST_CASE("determinant, trace and solve") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k) {
        const Mat4 m = random_matrix(rng, 1.0);
        CHECK(determinant(m) == doctest::Approx(oracle::to_eigen(m).determinant()).epsilon(1e-12));
        CHECK(trace(m) == doctest::Approx(oracle::to_eigen(m).trace()));
        const Mat4 p = random_matrix(rng, 1.0);
        const Mat4 x = solve(m, p);
        CHECK(oracle::max_abs_diff(m * x, p) < 1e-10);
    }
    CHECK_THROWS_AS(solve(Mat4{}, Mat4::identity()), std::runtime_error);
}

TEST_CASE("norms") {
    Mat4 m;
    m(0, 0) = -3.0;
    m(1, 0) = 4.0;
    m(2, 3) = 2.0;
    CHECK(norm_1(m) == 7.0);
    CHECK(norm_frobenius(m) == doctest::Approx(std::sqrt(29.0)));
    CHECK(norm_2(Vec4{3.0, 4.0, 0.0, 0.0}) == 5.0);
}
