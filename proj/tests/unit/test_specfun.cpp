#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "ptsusy/errors.hpp"
#include "ptsusy/specfun.hpp"

using namespace ptsusy;
using namespace ptsusy::specfun;
using fixtures::oracle;
using fixtures::rel_err;

namespace {

// Three-term recurrence in the degree, independent of the hypergeometric sum.
cplx jacobi_recurrence(int n, cplx a, cplx b, cplx z) {
    cplx p0 = 1.0;
    if (n == 0) return p0;
    cplx p1 = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
    for (int k = 2; k <= n; ++k) {
        const cplx kk = static_cast<double>(k);
        const cplx s = 2.0 * kk + a + b;
        const cplx c1 = 2.0 * kk * (kk + a + b) * (s - 2.0);
        const cplx c2 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b);
        const cplx c3 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s;
        const cplx p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

cplx random_cplx(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng)};
}

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("log_gamma trivial values") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-14);
    CHECK(std::abs(log_gamma(0.5) - 0.5723649429247001) < 1e-14);
    CHECK(std::abs(log_gamma(2.0)) < 1e-15);
}

TEST_CASE("log_gamma frozen oracles") {
    CHECK(rel_err(log_gamma({2, 3}), oracle("log_gamma_2p3i")) < 1e-13);
    CHECK(rel_err(log_gamma({-2.5, 0.5}), oracle("log_gamma_m2.5p0.5i")) < 1e-13);
    CHECK(rel_err(log_gamma({0.3, -7}), oracle("log_gamma_0.3m7i")) < 1e-13);
    CHECK(rel_err(log_gamma({30, 40}), oracle("log_gamma_30p40i")) < 1e-13);
}

TEST_CASE("log_gamma principal branch") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const cplx z = random_cplx(rng, -20.0, 20.0);
        const double im = log_gamma(z).imag();
        CHECK(im > -std::numbers::pi);
        CHECK(im <= std::numbers::pi);
    }
}

TEST_CASE("log_gamma poles throw") {
    for (int k = 0; k <= 5; ++k) CHECK_THROWS_AS(log_gamma(cplx(-k, 0.0)), PoleError);
}

TEST_CASE("exp(log_gamma) matches tgamma on the real axis") {
    for (double x : {0.1, 0.7, 1.5, 3.25, 7.9, 12.5, 20.0, -0.5, -1.3, -4.7})
        CHECK(rel_err(std::exp(log_gamma(x)), std::tgamma(x)) < 1e-13);
}

TEST_CASE("property: Gamma(z + 1) = z Gamma(z)") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i) {
        const cplx z = random_cplx(rng, -15.0, 15.0);
        const cplx lhs = std::exp(log_gamma(z + 1.0) - log_gamma(z));
        CHECK(rel_err(lhs, z) < 1e-12);
    }
}

TEST_CASE("pochhammer examples") {
    CHECK(pochhammer(cplx(3.7, -1.2), 0) == cplx(1.0));
    CHECK(pochhammer(cplx(2.0), 3) == cplx(24.0));
    CHECK(pochhammer(cplx(-3.0), 5) == cplx(0.0));
    CHECK(pochhammer(cplx(2.0), cplx(1.0), 2) == cplx(12.0));
}

TEST_CASE("property: pochhammer recursion") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const cplx a = random_cplx(rng, -6.0, 6.0);
        for (int k = 0; k < 20; ++k) {
            const cplx lhs = pochhammer(a, k + 1);
            const cplx rhs = pochhammer(a, k) * (a + static_cast<double>(k));
            CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs) + 1e-300);
        }
    }
}

TEST_CASE("jacobi_poly examples") {
    CHECK(jacobi_poly({0, {0.3, 1.0}, {2.0, -1.0}}, {0.4, 0.9}) == cplx(1.0));
    CHECK(std::abs(jacobi_poly({1, 0.0, 0.0}, 0.3) - 0.3) < 1e-15);
    CHECK(rel_err(jacobi_poly({2, {1, 2}, {1, -2}}, {0, 0.7}), oracle("jacobi_n2_complex")) < 1e-13);
}

TEST_CASE("jacobi_poly matches the degree recurrence") {
    std::mt19937_64 rng(14);
    for (int n = 0; n <= 12; ++n) {
        for (int i = 0; i < 10; ++i) {
            std::uniform_real_distribution<double> ab(-0.9, 3.0), x(-1.0, 1.0);
            const double a = ab(rng), b = ab(rng), z = x(rng);
            const cplx want = jacobi_recurrence(n, a, b, z);
            const cplx got = jacobi_poly({n, a, b}, z);
            CHECK(std::abs(got - want) <= 1e-11 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("jacobi_poly degree cap") {
    CHECK_THROWS_AS(jacobi_poly({41, 0.0, 0.0}, 0.1), DegreeCapError);
    CHECK_THROWS_AS(jacobi_poly({5, 0.0, 0.0}, 0.1, 4), DegreeCapError);
}

TEST_CASE("jacobi_poly_derivative examples") {
    CHECK(jacobi_poly_derivative({0, {1, 1}, {2, 0}}, {0.2, 0.1}) == cplx(0.0));
    const cplx a{0.4, -0.3}, b{1.1, 0.8};
    CHECK(std::abs(jacobi_poly_derivative({1, a, b}, {0.6, -0.2}) - (a + b + 2.0) / 2.0) < 1e-14);
    const cplx a3{-5.0, 0.4};
    CHECK(rel_err(jacobi_poly_derivative({3, a3, std::conj(a3)}, {0, 0.5}), oracle("jacobi_deriv_n3")) < 1e-12);
}

TEST_CASE("jacobi_taylor agrees with value and derivative") {
    const JacobiParams p{6, {-7.5, 0.3}, {-7.5, -0.3}};
    const cplx z0{0.0, 1.4};
    const auto t = jacobi_taylor(p, z0, 3);
    REQUIRE(t.size() == 4);
    CHECK(rel_err(t[0], jacobi_poly(p, z0)) < 1e-12);
    CHECK(rel_err(t[1], jacobi_poly_derivative(p, z0)) < 1e-12);
}

TEST_CASE("property: reflection symmetry") {
    std::mt19937_64 rng(15);
    for (int n = 0; n <= 10; ++n) {
        for (int i = 0; i < 10; ++i) {
            const cplx a = random_cplx(rng, -3.0, 3.0), b = random_cplx(rng, -3.0, 3.0);
            const cplx z = random_cplx(rng, -1.5, 1.5);
            const cplx lhs = jacobi_poly({n, a, b}, -z);
            const cplx rhs = (n % 2 ? -1.0 : 1.0) * jacobi_poly({n, b, a}, z);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("property: conjugation on the imaginary axis") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(-4.0, 4.0), nu(0.0, 3.0), be(0.0, 4.0);
    for (int n = 0; n <= 10; ++n) {
        for (int i = 0; i < 10; ++i) {
            const double N = n + nu(rng) + 1.0;
            const cplx a{-N, be(rng) / N};
            const cplx z{0.0, u(rng)};
            const cplx P = jacobi_poly({n, a, std::conj(a)}, z);
            const cplx rhs = (n % 2 ? -1.0 : 1.0) * P;
            CHECK(std::abs(std::conj(P) - rhs) <= 1e-10 * std::max(1.0, std::abs(P)));
        }
    }
}

TEST_CASE("property: derivative matches finite differences") {
    std::mt19937_64 rng(17);
    for (int n = 1; n <= 8; ++n) {
        const cplx a = random_cplx(rng, -2.0, 2.0), b = random_cplx(rng, -2.0, 2.0);
        const cplx z = random_cplx(rng, -0.8, 0.8);
        const double h = 1e-4;
        const auto P = [&](cplx w) { return jacobi_poly({n, a, b}, w); };
        const cplx fd = (-P(z + 2 * h) + 8.0 * P(z + h) - 8.0 * P(z - h) + P(z - 2 * h)) / (12 * h);
        const cplx d = jacobi_poly_derivative({n, a, b}, z);
        CHECK(std::abs(d - fd) <= 1e-8 * std::max(1.0, std::abs(d)));
    }
}

}  // TEST_SUITE
