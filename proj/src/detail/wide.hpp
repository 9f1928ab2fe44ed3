#pragma once

// Binary128 complex arithmetic for the cancellation-prone sums.

#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace ptsusy::detail {

using wreal = boost::multiprecision::float128;

struct WComplex {
    wreal re = 0;
    wreal im = 0;

    WComplex() = default;
    WComplex(wreal r, wreal i = 0) : re(r), im(i) {}
    WComplex(double r) : re(r), im(0) {}
    WComplex(int r) : re(r), im(0) {}
    WComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline WComplex operator+(const WComplex& a, const WComplex& b) { return {a.re + b.re, a.im + b.im}; }
inline WComplex operator-(const WComplex& a, const WComplex& b) { return {a.re - b.re, a.im - b.im}; }
inline WComplex operator-(const WComplex& a) { return {-a.re, -a.im}; }
inline WComplex operator*(const WComplex& a, const WComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline WComplex operator*(const WComplex& a, const wreal& s) { return {a.re * s, a.im * s}; }
inline WComplex operator/(const WComplex& a, const WComplex& b) {
    // Smith's algorithm keeps the intermediate magnitudes bounded.
    using boost::multiprecision::abs;
    if (abs(b.re) >= abs(b.im)) {
        wreal r = b.im / b.re;
        wreal d = b.re + b.im * r;
        return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    wreal r = b.re / b.im;
    wreal d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}
inline WComplex& operator+=(WComplex& a, const WComplex& b) { return a = a + b; }
inline WComplex& operator*=(WComplex& a, const WComplex& b) { return a = a * b; }

inline WComplex conj(const WComplex& a) { return {a.re, -a.im}; }
inline wreal norm(const WComplex& a) { return a.re * a.re + a.im * a.im; }
inline wreal abs(const WComplex& a) {
    using boost::multiprecision::sqrt;
    return sqrt(norm(a));
}

// (a)_k as an explicit product.
inline WComplex pochhammer(const WComplex& a, int k) {
    WComplex p(1);
    for (int j = 0; j < k; ++j) p *= a + WComplex(j);
    return p;
}

inline wreal factorial(int n) {
    wreal f = 1;
    for (int j = 2; j <= n; ++j) f *= j;
    return f;
}

// Coefficients c_k of P_n^{(alpha,beta)} as a polynomial in w = (1 - z)/2,
// c_k = [(-n)_k / k!] (n+alpha+beta+1)_k (alpha+k+1)_{n-k} / n!.
// This form has no denominators that can vanish.
inline std::vector<WComplex> jacobi_coefficients(int n, const WComplex& alpha, const WComplex& beta) {
    std::vector<WComplex> c(n + 1);
    const WComplex s = alpha + beta + WComplex(n + 1);
    const wreal nf = factorial(n);
    for (int k = 0; k <= n; ++k) {
        WComplex t = pochhammer(WComplex(-n), k) * pochhammer(s, k) *
                     pochhammer(alpha + WComplex(k + 1), n - k);
        c[k] = t * (wreal(1) / (factorial(k) * nf));
    }
    return c;
}

struct WideSum {
    WComplex value;
    double digits;  // significant decimal digits surviving cancellation
};

// Compensated (Neumaier) sum over terms ordered by descending magnitude,
// with the cancellation ratio sum|t| / |sum t| reported as lost digits.
inline WideSum compensated_sum(std::vector<WComplex> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const WComplex& a, const WComplex& b) { return norm(a) > norm(b); });
    WComplex s, comp;
    wreal mag = 0;
    for (const auto& t : terms) {
        mag += abs(t);
        for (int part = 0; part < 2; ++part) {
            wreal& acc = part == 0 ? s.re : s.im;
            wreal& c = part == 0 ? comp.re : comp.im;
            const wreal x = part == 0 ? t.re : t.im;
            wreal u = acc + x;
            using boost::multiprecision::abs;
            if (abs(acc) >= abs(x))
                c += (acc - u) + x;
            else
                c += (x - u) + acc;
            acc = u;
        }
    }
    WideSum out{s + comp, 0.0};
    const wreal a = abs(out.value);
    constexpr double working_digits = 33.0;
    if (a == 0)
        out.digits = mag == 0 ? working_digits : 0.0;
    else
        out.digits = std::min(working_digits, working_digits - std::log10(static_cast<double>(mag / a)));
    return out;
}

}  // namespace ptsusy::detail
