#pragma once

// Truncated Taylor series f(x0 + e) = sum_k c[k] e^k, used to carry exact
// derivatives through operator chains.

#include <algorithm>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace ptsusy {

class Jet {
public:
    using value_type = std::complex<double>;

    Jet() : c_(1, 0.0) {}
    explicit Jet(int order, value_type constant = 0.0) : c_(order + 1, 0.0) { c_[0] = constant; }
    explicit Jet(std::vector<value_type> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(0.0);
    }

    // The identity jet x0 + e.
    static Jet variable(double x0, int order) {
        Jet j(order, x0);
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const value_type& operator[](int k) const { return c_[k]; }
    value_type& operator[](int k) { return c_[k]; }
    value_type value() const { return c_[0]; }

    // k-th derivative at x0.
    value_type derivative_value(int k) const {
        double f = 1.0;
        for (int j = 2; j <= k; ++j) f *= j;
        return c_[k] * f;
    }

    // Jet of f' (one order shorter).
    Jet derivative() const {
        if (order() == 0) return Jet(0);
        Jet d(order() - 1);
        for (int k = 0; k < order(); ++k) d.c_[k] = c_[k + 1] * static_cast<double>(k + 1);
        return d;
    }

    Jet truncated(int order) const {
        Jet t(*this);
        t.c_.resize(std::min(order, this->order()) + 1);
        return t;
    }

    Jet& operator+=(const Jet& o) {
        const int n = std::min(order(), o.order());
        c_.resize(n + 1);
        for (int k = 0; k <= n; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        const int n = std::min(order(), o.order());
        c_.resize(n + 1);
        for (int k = 0; k <= n; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(value_type s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    Jet& operator+=(value_type s) {
        c_[0] += s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(Jet a, value_type s) { return a *= s; }
    friend Jet operator*(value_type s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, value_type s) { return a += s; }
    friend Jet operator-(Jet a, value_type s) { return a += -s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        const int n = std::min(a.order(), b.order());
        Jet r(n);
        for (int k = 0; k <= n; ++k) {
            value_type s = 0.0;
            for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
            r.c_[k] = s;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        const int n = std::min(a.order(), b.order());
        Jet q(n);
        for (int k = 0; k <= n; ++k) {
            value_type s = a.c_[k];
            for (int j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
            q.c_[k] = s / b.c_[0];
        }
        return q;
    }

    friend Jet exp(const Jet& f) {
        Jet g(f.order());
        g.c_[0] = std::exp(f.c_[0]);
        for (int k = 1; k <= f.order(); ++k) {
            value_type s = 0.0;
            for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * f.c_[j] * g.c_[k - j];
            g.c_[k] = s / static_cast<double>(k);
        }
        return g;
    }

    friend Jet log(const Jet& f) {
        Jet h(f.order());
        h.c_[0] = std::log(f.c_[0]);
        for (int k = 1; k <= f.order(); ++k) {
            value_type s = 0.0;
            for (int j = 1; j < k; ++j) s += static_cast<double>(j) * h.c_[j] * f.c_[k - j];
            h.c_[k] = (f.c_[k] - s / static_cast<double>(k)) / f.c_[0];
        }
        return h;
    }

    // f^p for a jet whose constant term is off the branch cut.
    friend Jet pow(const Jet& f, double p) { return exp(log(f) * p); }

    friend void sincos(const Jet& f, Jet& s, Jet& c) {
        const int n = f.order();
        s = Jet(n, std::sin(f.c_[0]));
        c = Jet(n, std::cos(f.c_[0]));
        for (int k = 1; k <= n; ++k) {
            value_type ss = 0.0, cc = 0.0;
            for (int j = 1; j <= k; ++j) {
                ss += static_cast<double>(j) * f.c_[j] * c.c_[k - j];
                cc += static_cast<double>(j) * f.c_[j] * s.c_[k - j];
            }
            s.c_[k] = ss / static_cast<double>(k);
            c.c_[k] = -cc / static_cast<double>(k);
        }
    }

    // Evaluates sum_j t[j] (g - g0)^j, i.e. composes a Taylor expansion taken
    // at g0 = g.value() with g.
    friend Jet compose(const std::vector<value_type>& t, const Jet& g) {
        Jet d(g);
        d.c_[0] = 0.0;
        Jet r(g.order(), t.empty() ? 0.0 : t.back());
        for (int j = static_cast<int>(t.size()) - 2; j >= 0; --j) {
            r = r * d;
            r.c_[0] += t[j];
        }
        return r;
    }

private:
    std::vector<value_type> c_;
};

namespace detail {
struct TrigForm;
}

// A function known through its jets: (x, order) -> Taylor series at x.
// fd_based marks operands whose derivatives come from finite differences.
// Eigenfunctions also carry an exact symbolic form that the operators act on.
struct Operand {
    std::function<Jet(double x, int order)> eval;
    bool fd_based = false;
    std::shared_ptr<const detail::TrigForm> form = nullptr;

    Jet operator()(double x, int order) const { return eval(x, order); }
    std::complex<double> value(double x) const { return eval(x, 0).value(); }
};

}  // namespace ptsusy
