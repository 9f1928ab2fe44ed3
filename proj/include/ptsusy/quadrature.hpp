#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ptsusy::quad {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(double)>;
// Vector-valued integrand: writes dim values for the abscissa.
using VectorIntegrand = std::function<void(double, std::vector<cplx>&)>;

struct QuadratureConfig {
    int base_rule_order = 15;
    int max_subdivisions = 1 << 14;
    int initial_panels = 1;  // equal split of [a, b] before adaptive bisection
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    bool endpoint_substitution = true;  // x = a + (b-a)(1 - cos t)/2

    void validate() const;
};

struct Result {
    cplx value;
    double err_est = 0.0;
    int evaluations = 0;
};

struct VectorResult {
    std::vector<cplx> value;
    double err_est = 0.0;  // max over components
    int evaluations = 0;
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// Cached n-point rule; thread-safe.
const GaussLegendreRule& gauss_legendre(int n);

// Globally adaptive Gauss-Legendre with panel bisection. The panel error is
// |Q(left) + Q(right) - Q(panel)|.
Result integrate_interval(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {});
VectorResult integrate_interval(const VectorIntegrand& f, int dim, double a, double b,
                                const QuadratureConfig& cfg = {});

// Integral over the real line of f with |f(u)| <~ C exp(-decay_rate |u|) or C / u^2.
// The truncation window grows until |f(+-U)| max(1 / decay_rate, U) fits the budget.
Result integrate_real_line(const Integrand& f, double decay_rate, const QuadratureConfig& cfg = {});

struct DerivativeResult {
    cplx value;
    double err_est = 0.0;
};

// Richardson-extrapolated central difference of order 1..4 (Ridders' tableau).
DerivativeResult derivative(const Integrand& f, double x, int order, double h0);

}  // namespace ptsusy::quad
