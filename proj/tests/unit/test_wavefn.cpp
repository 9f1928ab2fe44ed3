#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fixtures.hpp"
#include "ptsusy/errors.hpp"
#include "ptsusy/operators.hpp"
#include "ptsusy/quadrature.hpp"
#include "ptsusy/spectrum.hpp"
#include "ptsusy/wavefn.hpp"

using namespace ptsusy;
using fixtures::oracle;
using fixtures::rel_err;

namespace {

constexpr double pi = std::numbers::pi;

ModelParams params(double nu, double beta, double L = 1.0) {
    ModelParams p;
    p.nu = nu;
    p.beta = beta;
    p.L = L;
    return p;
}

double norm_sq(const ModelParams& p, LevelIndex idx, Route route = Route::ladder) {
    quad::QuadratureConfig cfg;
    cfg.initial_panels = 8;
    const auto r = quad::integrate_interval(
        [&](double x) { return std::norm(hierarchy_eigenfunction(p, idx, x, route)); }, 0.0, p.L, cfg);
    return r.value.real();
}

cplx inner(const ModelParams& p, int m, int i, int j) {
    quad::QuadratureConfig cfg;
    cfg.initial_panels = 8;
    return quad::integrate_interval(
               [&](double x) {
                   return std::conj(hierarchy_eigenfunction(p, {m, i}, x)) * hierarchy_eigenfunction(p, {m, j}, x);
               },
               0.0, p.L, cfg)
        .value;
}

}  // namespace

TEST_SUITE("wavefn") {

TEST_CASE("normalization_K examples") {
    CHECK(normalization_K(params(0, 0), 0).K() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rel_err(normalization_K(params(1.5, 2), 3).K(), oracle("K_n3_nu1.5_beta2")) < 1e-9);
}

TEST_CASE("ground-state K closed form") {
    for (double nu : {0.0, 0.5, 1.0, 2.5})
        for (double beta : {0.0, 1.0, 3.0})
            for (double L : {1.0, 2.0}) {
                const auto p = params(nu, beta, L);
                const double log_k0 = (nu + 1) * std::log(2.0) + beta * pi / (2 * (nu + 1)) +
                                      specfun::log_gamma(cplx(nu + 2, beta / (nu + 1))).real() -
                                      0.5 * (std::log(L) + std::lgamma(2 * nu + 3));
                CHECK(normalization_K(p, 0).log_K == doctest::Approx(log_k0).epsilon(1e-12));
            }
}

TEST_CASE("normalization data invariants") {
    for (double nu : {0.5, 1.0, 2.5})
        for (double beta : {0.0, 1.0, 3.0})
            for (int n = 0; n <= 10; ++n) {
                const auto d = normalization_K(params(nu, beta), n);
                CHECK(d.O_value > 0.0);
                CHECK(d.T_value > 0.0);
                CHECK(d.O_imag_ratio < 1e-10);
                CHECK(std::abs(d.log_O - std::log(d.O_value)) < 1e-12 * std::max(1.0, std::abs(d.log_O)));
            }
}

TEST_CASE("K matches quadrature of the unnormalized density") {
    for (double nu : {0.0, 1.0, 2.5})
        for (double beta : {0.0, 2.0})
            for (int n : {0, 2, 5}) {
                const auto p = params(nu, beta);
                const auto d = normalization_K(p, n);
                // the normalized state times 1/K is the unnormalized formula up to a phase
                CHECK(norm_sq(p, {0, n}) == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(std::isfinite(d.log_K));
            }
}

TEST_CASE("degree cap") {
    auto p = params(1, 1);
    p.degree_cap = 5;
    CHECK_THROWS_AS(normalization_K(p, 6), DegreeCapError);
    CHECK_THROWS_AS(hierarchy_eigenfunction(p, {3, 3}, 0.4), DegreeCapError);
}

TEST_CASE("eval_eigenfunction examples") {
    CHECK(std::abs(eval_eigenfunction(params(0, 0), 0, 0.5) - std::sqrt(2.0)) < 1e-14);
    CHECK(rel_err(eval_eigenfunction(params(1, 2), 2, 0.3), oracle("phi_n2_nu1_beta2_x0.3")) < 1e-9);
    for (int n = 0; n < 6; ++n) {
        CHECK(eval_eigenfunction(params(1.3, 0.7), n, 0.0) == cplx(0.0));
        CHECK(std::abs(eval_eigenfunction(params(1.3, 0.7), n, 1.0)) < 1e-14);
    }
    for (double x : {0.1, 0.37, 0.8})
        CHECK(std::abs(eval_eigenfunction(params(0, 0), 0, x) - std::sqrt(2.0) * std::sin(pi * x)) < 1e-14);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(eval_eigenfunction(params(1, 1), 0, -0.1), DomainError);
    CHECK_THROWS_AS(eval_eigenfunction(params(1, 1), 0, 1.1), DomainError);
    CHECK_THROWS_AS(eval_eigenfunction_derivative(params(1, 1), 0, 0.0), DomainError);
    CHECK_THROWS_AS(eval_eigenfunction_derivative(params(1, 1), 0, 1.0), DomainError);
}

TEST_CASE("phase convention: real and positive just right of zero") {
    for (double nu : {0.0, 0.5, 2.5})
        for (double beta : {0.0, 1.0, 3.0})
            for (int n = 0; n < 8; ++n) {
                const cplx v = eval_eigenfunction(params(nu, beta), n, 1e-3);
                CHECK(v.real() > 0.0);
                CHECK(std::abs(v.imag()) < 1e-6 * std::abs(v));
            }
}

TEST_CASE("eval_eigenfunction_derivative examples") {
    CHECK(std::abs(eval_eigenfunction_derivative(params(0, 0), 0, 0.5)) < 1e-13);
    CHECK(rel_err(eval_eigenfunction_derivative(params(1, 2), 3, 0.4), oracle("dphi_n3_nu1_beta2_x0.4")) < 1e-9);
    for (double beta : {0.0, 2.0})
        for (double x : {0.1, 0.3, 0.55, 0.9}) {
            const auto p = params(1, beta);
            const cplx lhs = -p.hbar * eval_eigenfunction_derivative(p, 0, x) / eval_eigenfunction(p, 0, x);
            CHECK(std::abs(lhs - superpotential(p, 0, x)) < 1e-11 * std::max(1.0, std::abs(lhs)));
        }
}

TEST_CASE("property: derivative matches Richardson differences") {
    for (double nu : {0.5, 1.0, 2.5})
        for (double beta : {0.0, 3.0})
            for (int n = 0; n <= 6; ++n)
                for (double x : {0.2, 0.45, 0.7}) {
                    const auto p = params(nu, beta);
                    const auto fd = quad::derivative([&](double t) { return eval_eigenfunction(p, n, t); }, x, 1, 1e-2);
                    const cplx d = eval_eigenfunction_derivative(p, n, x);
                    CHECK(std::abs(d - fd.value) <= 1e-8 * std::max(1.0, std::abs(d)));
                }
}

TEST_CASE("jet derivatives are consistent") {
    const auto p = params(1.5, 2.0);
    const Jet j = eigenfunction_jet(p, 3, 0.35, 3);
    CHECK(std::abs(j.value() - eval_eigenfunction(p, 3, 0.35)) < 1e-13);
    CHECK(rel_err(j.derivative_value(1), eval_eigenfunction_derivative(p, 3, 0.35)) < 1e-11);
    const auto fd2 = quad::derivative([&](double t) { return eval_eigenfunction(p, 3, t); }, 0.35, 2, 1e-2);
    CHECK(std::abs(j.derivative_value(2) - fd2.value) < 1e-7 * std::abs(j.derivative_value(2)));
}

TEST_CASE("property: density is real and positive") {
    for (int n = 0; n < 6; ++n)
        for (double x = 0.05; x < 1.0; x += 0.1) {
            const cplx v = eval_eigenfunction(params(1.0, 2.0), n, x);
            const cplx d = std::conj(v) * v;
            CHECK(std::abs(d.imag()) <= 1e-12 * std::abs(d));
            CHECK(d.real() >= 0.0);
        }
}

TEST_CASE("property: beta = 0 parity") {
    for (double nu : {0.0, 0.5, 2.5})
        for (int m = 0; m <= 2; ++m)
            for (int n = 0; n < 6; ++n)
                for (double x : {0.07, 0.21, 0.33, 0.48}) {
                    const auto p = params(nu, 0.0);
                    const double a = std::abs(hierarchy_eigenfunction(p, {m, n}, x));
                    const double b = std::abs(hierarchy_eigenfunction(p, {m, n}, 1.0 - x));
                    CHECK(std::abs(a - b) <= 1e-11 * std::max(1.0, a));
                }
}

TEST_CASE("hierarchy m = 0 reduces to the base family") {
    const auto p = params(1.0, 2.0);
    for (int n = 0; n < 5; ++n)
        for (double x : {0.1, 0.5, 0.77})
            CHECK(std::abs(hierarchy_eigenfunction(p, {0, n}, x) - eval_eigenfunction(p, n, x)) < 1e-13);
}

TEST_CASE("m = 1 closed form agrees with the ladder") {
    for (double nu : {0.5, 1.0, 2.5})
        for (double beta : {0.0, 2.0})
            for (int n = 0; n <= 3; ++n) {
                const auto p = params(nu, beta);
                double scale = 0.0, diff = 0.0;
                for (double x = 0.02; x < 1.0; x += 0.04) {
                    const cplx a = hierarchy_eigenfunction(p, {1, n}, x, Route::ladder);
                    const cplx b = hierarchy_eigenfunction(p, {1, n}, x, Route::explicit_m1);
                    scale = std::max(scale, std::abs(b));
                    diff = std::max(diff, std::abs(a - b));
                }
                CHECK(diff <= 1e-9 * scale);
            }
}

TEST_CASE("shifted base and ladder routes agree") {
    for (double beta : {0.0, 2.0})
        for (int m = 1; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                for (double x : {0.1, 0.4, 0.85}) {
                    const auto p = params(1.0, beta);
                    const cplx a = hierarchy_eigenfunction(p, {m, n}, x, Route::ladder);
                    const cplx b = hierarchy_eigenfunction(p, {m, n}, x, Route::shifted_base);
                    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
                }
}

TEST_CASE("hierarchy states are normalized") {
    const auto p = params(1.0, 2.0);
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 4; ++n) CHECK(norm_sq(p, {m, n}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Gram matrix on a small block") {
    const auto p = params(2.5, 3.0);
    for (int m = 0; m <= 1; ++m)
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 4; ++j) {
                const cplx g = inner(p, m, i, j);
                CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-9);
            }
}

TEST_CASE("ladder closed form of A_0 phi_{n+1}") {
    for (double beta : {0.0, 1.0, 3.0})
        for (int n = 0; n <= 3; ++n) {
            const auto p = params(1.0, beta);
            const EigenFunction phi(p, {0, n + 1});
            const Operand a = apply_A(p, 0, phi.operand());
            for (double x : {0.15, 0.5, 0.83}) {
                const cplx want = a.value(x);
                CHECK(std::abs(ladder_closed_form_A0(p, n, x) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
            }
        }
}

TEST_CASE("EigenFunction object") {
    const auto p = params(1.0, 2.0);
    const EigenFunction f(p, {2, 1});
    CHECK(f.energy() == energy(p, LevelIndex{2, 1}));
    CHECK(std::abs(std::abs(f.phase()) - 1.0) < 1e-14);
    CHECK(std::abs(f(0.3) - hierarchy_eigenfunction(p, {2, 1}, 0.3)) < 1e-13);
    CHECK(std::abs(f.jet(0.3, 2).derivative_value(1) - f.derivative(0.3)) < 1e-11 * std::abs(f.derivative(0.3)));
    CHECK(std::abs(f.operand().value(0.3) - f(0.3)) < 1e-13);
    const EigenFunction e(p, {1, 1}, Route::explicit_m1);
    CHECK_THROWS(e.operand());
}

}  // TEST_SUITE
