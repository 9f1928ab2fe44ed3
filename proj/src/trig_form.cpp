#include "detail/trig_form.hpp"

#include <cmath>
#include <numbers>

#include "detail/base_state.hpp"
#include "ptsusy/errors.hpp"

namespace ptsusy::detail {
namespace {

constexpr double kPi = std::numbers::pi;

struct Laurent {
    int lo = 0;
    std::vector<WComplex> a;
};

Laurent scale(Laurent r, const WComplex& s) {
    for (auto& t : r.a) t *= s;
    return r;
}

// wr r + ws s
Laurent add(const Laurent& r, const WComplex& wr, const Laurent& s, const WComplex& ws) {
    if (r.a.empty()) return scale(s, ws);
    if (s.a.empty()) return scale(r, wr);
    const int lo = std::min(r.lo, s.lo);
    const int hi = std::max(r.lo + int(r.a.size()), s.lo + int(s.a.size()));
    Laurent out{lo, std::vector<WComplex>(hi - lo)};
    for (std::size_t i = 0; i < r.a.size(); ++i) out.a[r.lo - lo + i] += r.a[i] * wr;
    for (std::size_t i = 0; i < s.a.size(); ++i) out.a[s.lo - lo + i] += s.a[i] * ws;
    return out;
}

// (u + 1/u) / 2 and (u - 1/u) / (2i)
Laurent mul_cos(const Laurent& r) {
    Laurent out{r.lo - 1, std::vector<WComplex>(r.a.size() + 2)};
    const wreal h = wreal(1) / 2;
    for (std::size_t i = 0; i < r.a.size(); ++i) {
        out.a[i + 2] += r.a[i] * h;
        out.a[i] += r.a[i] * h;
    }
    return out;
}

Laurent mul_sin(const Laurent& r) {
    Laurent out{r.lo - 1, std::vector<WComplex>(r.a.size() + 2)};
    const WComplex k(wreal(0), wreal(-1) / 2);
    for (std::size_t i = 0; i < r.a.size(); ++i) {
        const WComplex t = r.a[i] * k;
        out.a[i + 2] += t;
        out.a[i] += -t;
    }
    return out;
}

Laurent d_theta(Laurent r) {
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] *= WComplex(wreal(0), wreal(r.lo + int(i)));
    return r;
}

Laurent poly(const TrigForm& f) { return {f.lo, f.a}; }

TrigForm with(const TrigForm& f, wreal sigma, Laurent r) {
    TrigForm out;
    out.L = f.L;
    out.sigma = sigma;
    out.c = f.c;
    out.lo = r.lo;
    out.a = std::move(r.a);
    return out;
}

// dF/dtheta = sin^{sigma-1} e^{-c theta} [sigma cos R + sin (R' - c R)], unreduced.
TrigForm derivative(const TrigForm& f) {
    const Laurent r = poly(f);
    const Laurent q = add(d_theta(r), WComplex(1), r, WComplex(-f.c));
    return with(f, f.sigma - 1, add(mul_cos(r), WComplex(f.sigma), mul_sin(q), WComplex(1)));
}

bool close(const wreal& x, const wreal& y) {
    using boost::multiprecision::abs;
    return abs(x - y) <= wreal(1e-28) * std::max(wreal(1), std::max(abs(x), abs(y)));
}

}  // namespace

TrigForm base_form(const ModelParams& p, int n) {
    const auto base = base_state(p, n);
    // Parameters in binary128 so that ladder images divide by sin exactly.
    const wreal N = wreal(n) + wreal(p.nu) + 1;
    const WComplex alpha(-N, wreal(p.beta) / N);
    const auto coeffs = jacobi_coefficients(n, alpha, conj(alpha));

    // sum_k c_k (-i/2)^k u^k sin^{n-k}, sin^j = (2i)^{-j} sum_r C(j,r) (-1)^{j-r} u^{2r-j}.
    const WComplex prefactor = WComplex(base->phase) * boost::multiprecision::exp(wreal(base->norm.log_K));
    Laurent r{-n, std::vector<WComplex>(2 * n + 1)};
    const WComplex half_mi(wreal(0), wreal(-0.5));
    WComplex pk(1);
    for (int k = 0; k <= n; ++k) {
        const int j = n - k;
        WComplex pref = coeffs[k] * pk * prefactor;
        for (int t = 0; t < j; ++t) pref *= half_mi;
        wreal binom = 1;
        for (int s = 0; s <= j; ++s) {
            const wreal sign = (j - s) % 2 == 0 ? 1 : -1;
            r.a[k + 2 * s - j + n] += pref * (binom * sign);
            binom = binom * (j - s) / (s + 1);
        }
        pk *= half_mi;
    }
    TrigForm f;
    f.L = p.L;
    f.sigma = wreal(p.nu) + 1;
    f.c = wreal(p.beta) / N;
    f.lo = r.lo;
    f.a = std::move(r.a);
    reduce(f);
    return f;
}

TrigForm form_scaled(const TrigForm& f, const WComplex& s) { return with(f, f.sigma, scale(poly(f), s)); }

bool form_compatible(const TrigForm& f, const TrigForm& g) {
    using boost::multiprecision::round;
    const wreal d = f.sigma - g.sigma;
    return f.L == g.L && close(f.c, g.c) && close(d, round(d));
}

TrigForm form_sum(const TrigForm& f, const WComplex& wf, const TrigForm& g, const WComplex& wg) {
    if (!form_compatible(f, g)) throw DomainError("form_sum: incompatible forms");
    const int d = static_cast<int>(boost::multiprecision::round(f.sigma - g.sigma));
    Laurent rf = poly(f), rg = poly(g);
    for (int k = 0; k < d; ++k) rf = mul_sin(rf);
    for (int k = 0; k < -d; ++k) rg = mul_sin(rg);
    TrigForm out = with(f, std::min(f.sigma, g.sigma), add(rf, wf, rg, wg));
    reduce(out);
    return out;
}

TrigForm form_first_order(const TrigForm& f, const WComplex& alpha, const WComplex& beta, const WComplex& gamma) {
    // sin^{sigma-1} e^{-c theta} [(alpha sigma + beta) cos R + sin (alpha (R' - c R) + gamma R)]
    const Laurent r = poly(f);
    const Laurent q = add(d_theta(r), alpha, r, gamma - alpha * WComplex(f.c));
    TrigForm out = with(f, f.sigma - 1, add(mul_cos(r), alpha * WComplex(f.sigma) + beta, mul_sin(q), WComplex(1)));
    reduce(out);
    return out;
}

TrigForm form_second_order(const TrigForm& f, const WComplex& alpha, const WComplex& p, const WComplex& q,
                           const WComplex& r) {
    const TrigForm d2 = derivative(derivative(f));
    const Laurent R = poly(f);
    Laurent acc = add(poly(d2), alpha, R, p);
    acc = add(acc, WComplex(1), mul_sin(mul_cos(R)), q);
    acc = add(acc, WComplex(1), mul_sin(mul_sin(R)), r);
    TrigForm out = with(f, f.sigma - 2, std::move(acc));
    reduce(out);
    return out;
}

void reduce(TrigForm& f) {
    // R / sin = 2i u^{lo+1} Q(u) with u^{-lo} R = (u^2 - 1) Q, by synthetic division.
    while (f.a.size() >= 3) {
        const int d = static_cast<int>(f.a.size()) - 1;
        std::vector<WComplex> q(d - 1);
        for (int i = d - 2; i >= 0; --i) q[i] = f.a[i + 2] + (i + 2 <= d - 2 ? q[i + 2] : WComplex());
        wreal mag = 0;
        for (const auto& t : f.a) mag += abs(t);
        const WComplex r1 = f.a[1] + (d >= 3 ? q[1] : WComplex());
        const WComplex r0 = f.a[0] + q[0];
        if (mag == 0 || abs(r0) + abs(r1) > wreal(1e-24) * mag) return;
        for (auto& t : q) t *= WComplex(wreal(0), wreal(2));
        f.a = std::move(q);
        f.lo += 1;
        f.sigma += 1;
    }
}

namespace {

// d^j R / d theta^j for j = 0..order, summed in binary128.
std::vector<cplx> theta_derivatives(const TrigForm& f, double th, int order) {
    const wreal t = th;
    const WComplex u(boost::multiprecision::cos(t), boost::multiprecision::sin(t));
    const WComplex u_inv = conj(u);
    WComplex ue(1);
    for (int e = 0; e < std::abs(f.lo); ++e) ue *= f.lo < 0 ? u_inv : u;
    std::vector<WComplex> acc(order + 1);
    for (std::size_t i = 0; i < f.a.size(); ++i) {
        const WComplex ie(wreal(0), wreal(f.lo + int(i)));
        WComplex term = f.a[i] * ue;
        for (int j = 0; j <= order; ++j) {
            acc[j] += term;
            term *= ie;
        }
        ue *= u;
    }
    std::vector<cplx> out(order + 1);
    for (int j = 0; j <= order; ++j) out[j] = acc[j].to_double();
    return out;
}

}  // namespace

cplx form_value(const TrigForm& f, double x) {
    if ((x == 0.0 || x == f.L) && f.sigma > 0) return 0.0;
    const double th = kPi * x / f.L;
    const double env = std::exp(static_cast<double>(f.sigma) * std::log(std::sin(th)) - static_cast<double>(f.c) * th);
    return env * theta_derivatives(f, th, 0)[0];
}

Jet form_jet(const TrigForm& f, double x, int order) {
    const double th = kPi * x / f.L;
    const auto d = theta_derivatives(f, th, order);
    std::vector<cplx> coeff(order + 1);
    double scale = 1.0, fact = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j > 0) fact *= j;
        coeff[j] = d[j] * (scale / fact);
        scale *= kPi / f.L;
    }
    const Jet t = Jet::variable(x, order) * cplx(kPi / f.L);
    Jet sn, cs;
    sincos(t, sn, cs);
    const Jet env = exp(log(sn) * static_cast<double>(f.sigma) - t * static_cast<double>(f.c));
    return env * Jet(std::move(coeff));
}

Operand form_operand(FormPtr f) {
    Operand out{[f](double x, int order) {
        if (order == 0) return Jet(0, form_value(*f, x));
        return form_jet(*f, x, order);
    }};
    out.form = std::move(f);
    return out;
}

}  // namespace ptsusy::detail
