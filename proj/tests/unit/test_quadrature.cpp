#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ptsusy/coherent.hpp"
#include "ptsusy/errors.hpp"
#include "ptsusy/quadrature.hpp"
#include "ptsusy/wavefn.hpp"

using namespace ptsusy;
using namespace ptsusy::quad;

namespace {

constexpr double pi = std::numbers::pi;

struct Case {
    std::string name;
    Integrand f;
    double a, b;
    cplx exact;
};

// Integrands with known antiderivatives.
std::vector<Case> smoke_corpus() {
    const double e = std::numbers::e;
    return {
        {"sin^2(pi x)", [](double x) { return cplx(std::pow(std::sin(pi * x), 2)); }, 0, 1, 0.5},
        {"x^-1/2", [](double x) { return cplx(1 / std::sqrt(x)); }, 0, 1, 2.0},
        {"exp", [](double x) { return cplx(std::exp(x)); }, 0, 1, e - 1},
        {"1/(1+x^2)", [](double x) { return cplx(1 / (1 + x * x)); }, 0, 1, pi / 4},
        {"cos(10x)", [](double x) { return cplx(std::cos(10 * x)); }, 0, 1, std::sin(10.0) / 10},
        {"x^5", [](double x) { return cplx(std::pow(x, 5)); }, 0, 2, 64.0 / 6},
        {"log", [](double x) { return cplx(std::log(x)); }, 0, 1, -1.0},
        {"sqrt", [](double x) { return cplx(std::sqrt(x)); }, 0, 1, 2.0 / 3},
        {"runge", [](double x) { return cplx(1 / (1 + 25 * x * x)); }, -1, 1, 2 * std::atan(5.0) / 5},
        {"gauss", [](double x) { return cplx(std::exp(-x * x)); }, 0, 3, std::sqrt(pi) / 2 * std::erf(3.0)},
        {"x sin x", [](double x) { return cplx(x * std::sin(x)); }, 0, pi, pi},
        {"exp(ix)", [](double x) { return std::exp(cplx(0, x)); }, 0, 2, (std::exp(cplx(0, 2)) - 1.0) / cplx(0, 1)},
        {"arcsine density", [](double x) { return cplx(1 / std::sqrt(1 - x * x)); }, -1, 1, pi},
        {"kink", [](double x) { return cplx(std::abs(x - 0.3)); }, 0, 1, 0.29},
        {"beta(1.3,1.6)", [](double x) { return cplx(std::pow(x, 0.3) * std::pow(1 - x, 0.6)); }, 0, 1,
         std::exp(std::lgamma(1.3) + std::lgamma(1.6) - std::lgamma(2.9))},
        {"cosh", [](double x) { return cplx(std::cosh(x)); }, -1, 1, 2 * std::sinh(1.0)},
        {"sin(50x)", [](double x) { return cplx(std::sin(50 * x)); }, 0, 1, (1 - std::cos(50.0)) / 50},
        {"1/x", [](double x) { return cplx(1 / x); }, 1, 10, std::log(10.0)},
        {"damped cos", [](double x) { return cplx(std::exp(-x) * std::cos(x)); }, 0, 5,
         (std::exp(-5.0) * (std::sin(5.0) - std::cos(5.0)) + 1) / 2},
        {"x^2 exp", [](double x) { return cplx(x * x * std::exp(x)); }, 0, 1, e - 2},
    };
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("config validation") {
    QuadratureConfig c;
    CHECK_NOTHROW(c.validate());
    c.base_rule_order = 3;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.abs_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.rel_tol = -1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.initial_panels = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("Gauss-Legendre rules") {
    for (int n : {4, 7, 15, 21}) {
        const auto& r = gauss_legendre(n);
        REQUIRE(static_cast<int>(r.nodes.size()) == n);
        double sum = 0.0;
        for (double w : r.weights) sum += w;
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
        for (int i = 1; i < n; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double q = 0.0;
            for (int i = 0; i < n; ++i) q += r.weights[i] * std::pow(r.nodes[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(std::abs(q - exact) < 1e-14);
        }
    }
}

TEST_CASE("integrate_interval examples") {
    CHECK(std::abs(integrate_interval([](double x) { return cplx(std::pow(std::sin(pi * x), 2)); }, 0, 1).value - 0.5) <
          1e-13);
    CHECK(std::abs(integrate_interval([](double x) { return cplx(1 / std::sqrt(x)); }, 0, 1).value - 2.0) < 1e-10);
    const auto m = integrate_interval(
        [](double x) { return std::pow(std::sin(pi * x), 3.4) * std::exp(cplx(1.3, 0.4) * x); }, 0, 1);
    CHECK(std::abs(m.value - master_integral(0.7, {1.3, 0.4})) < 1e-10 * std::abs(m.value));
}

TEST_CASE("vector integrand matches scalar runs") {
    const auto v = integrate_interval(
        [](double x, std::vector<cplx>& out) {
            out[0] = std::exp(x);
            out[1] = std::cos(10 * x);
            out[2] = std::exp(cplx(0, x));
        },
        3, 0.0, 1.0);
    REQUIRE(v.value.size() == 3);
    CHECK(std::abs(v.value[0] - (std::numbers::e - 1)) < 1e-12);
    CHECK(std::abs(v.value[1] - std::sin(10.0) / 10) < 1e-12);
    CHECK(std::abs(v.value[2] - (std::exp(cplx(0, 1)) - 1.0) / cplx(0, 1)) < 1e-12);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(integrate_interval([](double) { return cplx(NAN); }, 0, 1), NonFiniteError);
    QuadratureConfig c;
    c.max_subdivisions = 2;
    c.rel_tol = 1e-14;
    c.abs_tol = 1e-16;
    CHECK_THROWS_AS(integrate_interval([](double x) { return cplx(std::sin(500 * x)); }, 0, 1, c),
                    SubdivisionLimitError);
    CHECK_THROWS_AS(integrate_interval([](double x) { return cplx(x); }, 1, 0), DomainError);
}

TEST_CASE("integrate_real_line examples") {
    CHECK(std::abs(integrate_real_line([](double u) { return cplx(std::exp(-u * u)); }, 1.0).value - std::sqrt(pi)) <
          1e-11);
    CHECK(std::abs(integrate_real_line([](double u) { return cplx(1 / (pi * (1 + u * u))); }, 1.0).value - 1.0) < 1e-9);
    const auto c = integrate_real_line(
        [](double u) { return std::exp(cplx(0, -0.7 * u)) / (2 * pi * std::pow(std::cosh(u), 4)); }, 4.0);
    const double closed = 4.0 * std::exp(2 * specfun::log_gamma(cplx(2.0, -0.35)).real()) / (pi * 6.0);
    CHECK(std::abs(c.value - closed) < 1e-11);
}

TEST_CASE("derivative examples") {
    const auto d1 = derivative([](double x) { return cplx(std::sin(x)); }, 0.3, 1, 0.1);
    CHECK(std::abs(d1.value - std::cos(0.3)) < 1e-12);
    const auto d2 = derivative([](double x) { return cplx(std::sin(x)); }, pi / 6, 2, 0.1);
    CHECK(std::abs(d2.value + 0.5) < 1e-10);
    ModelParams p;
    p.beta = 2.0;
    const auto dp = derivative([&](double x) { return eval_eigenfunction(p, 0, x); }, 0.5, 1, 0.05);
    const cplx exact = eval_eigenfunction_derivative(p, 0, 0.5);
    CHECK(std::abs(dp.value - exact) < 1e-9 * std::abs(exact));
    CHECK_THROWS_AS(derivative([](double x) { return cplx(x); }, 0.3, 1, 0.0), StepUnderflowError);
    CHECK_THROWS_AS(derivative([](double x) { return cplx(x); }, 0.3, 5, 0.1), DomainError);
}

TEST_CASE("property: error estimates are honest") {
    int cases = 0, honest = 0;
    for (double tol : {1e-6, 1e-8, 1e-10, 1e-12})
        for (const auto& c : smoke_corpus()) {
            QuadratureConfig cfg;
            cfg.rel_tol = tol;
            cfg.abs_tol = tol * 1e-2;
            const auto r = integrate_interval(c.f, c.a, c.b, cfg);
            const double err = std::abs(r.value - c.exact);
            ++cases;
            if (err <= 10 * r.err_est || err <= 4 * std::numeric_limits<double>::epsilon() * std::abs(c.exact))
                ++honest;
            else
                MESSAGE(c.name << " tol " << tol << ": error " << err << " estimate " << r.err_est);
        }
    CHECK(honest >= 0.95 * cases);
}

TEST_CASE("property: refinement monotonicity") {
    for (const auto& c : smoke_corpus()) {
        // rounding in the panel sums scales with the integral of |f|
        const auto fabs = [&](double x) { return cplx(std::abs(c.f(x))); };
        const double noise =
            8 * std::numeric_limits<double>::epsilon() * std::abs(integrate_interval(fabs, c.a, c.b).value);
        double prev = INFINITY;
        for (double tol = 1e-4; tol >= 1e-12; tol /= 2) {
            QuadratureConfig cfg;
            cfg.rel_tol = tol;
            cfg.abs_tol = 1e-300;
            const double err = std::abs(integrate_interval(c.f, c.a, c.b, cfg).value - c.exact);
            CHECK_MESSAGE(err <= std::max(prev, noise), c.name << " at rel_tol " << tol);
            prev = std::max(err, noise);
        }
    }
}

}  // TEST_SUITE
