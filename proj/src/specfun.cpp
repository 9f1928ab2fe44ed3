#include "ptsusy/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "detail/wide.hpp"
#include "ptsusy/errors.hpp"

namespace ptsusy::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 0.5, on some branch.
cplx lanczos_log_gamma(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
    const cplx i(0.0, 1.0);
    if (z.imag() >= 0.0)
        return -i * kPi * z + std::log(std::exp(2.0 * i * kPi * z) - 1.0) - std::log(2.0 * i);
    return i * kPi * z + std::log(1.0 - std::exp(-2.0 * i * kPi * z)) - std::log(2.0 * i);
}

double principal_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

void check_degree(int n, int cap) {
    if (n < 0) throw DomainError("jacobi_poly: negative degree");
    if (n > cap)
        throw DegreeCapError("jacobi_poly: degree " + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
}

std::vector<detail::WComplex> coefficients(const JacobiParams& p) {
    return detail::jacobi_coefficients(p.degree, detail::WComplex(p.alpha), detail::WComplex(p.beta));
}

}  // namespace

cplx log_gamma(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NonFiniteError("log_gamma: non-finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
    cplx r;
    if (z.real() < 0.5)
        r = std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
    else
        r = lanczos_log_gamma(z);
    return {r.real(), principal_angle(r.imag())};
}

cplx pochhammer(cplx a, int k) {
    cplx p = 1.0;
    for (int j = 0; j < k; ++j) p *= a + static_cast<double>(j);
    return p;
}

cplx pochhammer(cplx a, cplx b, int k) { return pochhammer(a, k) * pochhammer(b, k); }

cplx jacobi_poly(const JacobiParams& p, cplx z, int degree_cap) {
    check_degree(p.degree, degree_cap);
    const auto c = coefficients(p);
    const detail::WComplex w = (detail::WComplex(1) - detail::WComplex(z)) * detail::wreal(0.5);
    std::vector<detail::WComplex> terms(c.size());
    detail::WComplex wk(1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        terms[k] = c[k] * wk;
        wk *= w;
    }
    return detail::compensated_sum(std::move(terms)).value.to_double();
}

cplx jacobi_poly_derivative(const JacobiParams& p, cplx z, int degree_cap) {
    check_degree(p.degree, degree_cap);
    if (p.degree == 0) return 0.0;
    const JacobiParams q{p.degree - 1, p.alpha + 1.0, p.beta + 1.0};
    const cplx f = (static_cast<double>(p.degree) + p.alpha + p.beta + 1.0) / 2.0;
    return f * jacobi_poly(q, z, degree_cap);
}

std::vector<cplx> jacobi_taylor(const JacobiParams& p, cplx z0, int order, int degree_cap) {
    check_degree(p.degree, degree_cap);
    using detail::WComplex;
    // Repeated synthetic division of the w-polynomial at w0 gives its Taylor
    // coefficients in w; dw/dz = -1/2 converts them to z.
    auto c = coefficients(p);
    const WComplex w0 = (WComplex(1) - WComplex(z0)) * detail::wreal(0.5);
    const int n = p.degree;
    std::vector<cplx> out(order + 1, 0.0);
    detail::wreal scale = 1;
    for (int j = 0; j <= std::min(order, n); ++j) {
        // After this pass c[j] holds the j-th Taylor coefficient.
        for (int k = n - 1; k >= j; --k) c[k] = c[k] + w0 * c[k + 1];
        out[j] = (c[j] * scale).to_double();
        scale *= detail::wreal(-0.5);
    }
    return out;
}

}  // namespace ptsusy::specfun
