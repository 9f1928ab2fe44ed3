#include "ptsusy/wavefn.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "detail/base_state.hpp"
#include "detail/trig_form.hpp"
#include "ptsusy/errors.hpp"
#include "ptsusy/spectrum.hpp"

namespace ptsusy {
namespace detail {
namespace {

constexpr double kPi = std::numbers::pi;

NormalizationData compute_norm(const ModelParams& p, int n) {
    const double N = n + p.nu + 1.0;
    const double b = p.beta / N;
    const WComplex ib(wreal(0), wreal(b));

    // T = n! / |(-n - nu + i b)_n|
    const WComplex tp = pochhammer(WComplex(-n - p.nu) + ib, n);
    const wreal T = factorial(n) / abs(tp);

    // O = Gamma(2nu+3)/|Gamma(nu+2+ib)|^2 * S with
    // S = sum_k sum_s conj(d_k) d_s (2nu+3)_{2n-k-s},
    // d_s = (-n)_s (-2nu-n-1)_s / ((-n-nu+ib)_s s! (nu+2-ib)_{n-s}).
    std::vector<WComplex> d(n + 1);
    for (int s = 0; s <= n; ++s) {
        const WComplex num = pochhammer(WComplex(-n), s) * pochhammer(WComplex(-2.0 * p.nu - n - 1.0), s);
        const WComplex den = pochhammer(WComplex(-n - p.nu) + ib, s) * WComplex(factorial(s)) *
                             pochhammer(WComplex(p.nu + 2.0) - ib, n - s);
        d[s] = num / den;
    }
    std::vector<WComplex> terms;
    terms.reserve((n + 1) * (n + 1));
    for (int k = 0; k <= n; ++k)
        for (int s = 0; s <= n; ++s)
            terms.push_back(conj(d[k]) * d[s] * pochhammer(WComplex(2.0 * p.nu + 3.0), 2 * n - k - s));
    const WideSum S = compensated_sum(std::move(terms));

    NormalizationData out;
    out.O_digits = S.digits;
    const double sre = static_cast<double>(S.value.re);
    const double sim = static_cast<double>(S.value.im);
    out.O_imag_ratio = sre != 0.0 ? std::abs(sim / sre) : std::numeric_limits<double>::infinity();
    if (S.digits < 6.0)
        throw LossOfSignificanceError("normalization_K: double sum keeps " + std::to_string(S.digits) +
                                      " digits at n = " + std::to_string(n));
    if (!(sre > 0.0) || out.O_imag_ratio > 1e-10)
        throw LossOfSignificanceError("normalization_K: double sum is not real positive at n = " +
                                      std::to_string(n));
    const double log_gamma_ratio = specfun::log_gamma(2.0 * p.nu + 3.0).real() -
                                   2.0 * specfun::log_gamma(cplx(p.nu + 2.0, b)).real();
    out.log_O = log_gamma_ratio + std::log(sre);
    out.O_value = std::exp(out.log_O);
    out.T_value = static_cast<double>(T);
    out.log_K = N * std::log(2.0) - 0.5 * std::log(p.L) + std::log(out.T_value) - 0.5 * out.log_O +
                p.beta * kPi / (2.0 * N);
    return out;
}

std::shared_ptr<const BaseState> build(const ModelParams& p, int n) {
    p.validate();
    if (n < 0) throw DomainError("eigenfunction: negative index");
    if (n > p.degree_cap)
        throw DegreeCapError("eigenfunction: n = " + std::to_string(n) + " exceeds degree cap " +
                             std::to_string(p.degree_cap));
    auto s = std::make_shared<BaseState>();
    s->params = p;
    s->n = n;
    s->N = n + p.nu + 1.0;
    s->b = p.beta / s->N;
    const cplx a(-s->N, s->b);
    s->jacobi = {n, a, std::conj(a)};
    s->coeffs = jacobi_coefficients(n, WComplex(a), WComplex(std::conj(a)));
    s->norm = compute_norm(p, n);
    // Leading coefficient of P_n(i c) in c is lc i^n with lc real; undo its phase.
    const cplx lc = specfun::pochhammer(cplx(-n - 2.0 * p.nu - 1.0), n);
    cplx lead = (lc.real() >= 0.0 ? 1.0 : -1.0) * std::pow(cplx(0.0, 1.0), n);
    s->phase = std::conj(lead);
    return s;
}

}  // namespace

std::shared_ptr<const BaseState> base_state(const ModelParams& p, int n) {
    using Key = std::tuple<double, double, double, double, double, int, int>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const BaseState>> cache;
    const Key key{p.nu, p.beta, p.hbar, p.L, p.mass, p.degree_cap, n};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto s = build(p, n);
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 4096) cache.clear();
    cache.emplace(key, s);
    return s;
}

cplx eval_poly(const BaseState& s, cplx z) {
    const WComplex w = (WComplex(1) - WComplex(z)) * wreal(0.5);
    std::vector<WComplex> terms(s.coeffs.size());
    WComplex wk(1);
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
        terms[k] = s.coeffs[k] * wk;
        wk *= w;
    }
    return compensated_sum(std::move(terms)).value.to_double();
}

}  // namespace detail

namespace {

constexpr double kPi = std::numbers::pi;

void check_closed(const ModelParams& p, double x, const char* who) {
    if (!(x >= 0.0 && x <= p.L)) throw DomainError(std::string(who) + ": x outside [0, L]");
}

void check_open(const ModelParams& p, double x, const char* who) {
    if (!(x > 0.0 && x < p.L)) throw DomainError(std::string(who) + ": x must lie strictly inside (0, L)");
}

cplx base_value(const detail::BaseState& s, double x) {
    const ModelParams& p = s.params;
    if (x == 0.0 || x == p.L) return 0.0;
    const double th = kPi * x / p.L;
    const double sn = std::sin(th);
    const cplx P = detail::eval_poly(s, cplx(0.0, std::cos(th) / sn));
    const double env = std::exp(s.norm.log_K + s.N * std::log(sn) - s.b * th);
    return s.phase * env * P;
}

Jet base_jet(const detail::BaseState& s, double x, int order) {
    const ModelParams& p = s.params;
    Jet th = Jet::variable(x, order) * cplx(kPi / p.L);
    Jet sn, cs;
    sincos(th, sn, cs);
    const Jet z = (cs / sn) * cplx(0.0, 1.0);
    const auto taylor = specfun::jacobi_taylor(s.jacobi, z.value(), order, specfun::kJacobiDegreeCap);
    const Jet P = compose(taylor, z);
    const Jet env = exp(log(sn) * s.N - th * s.b + s.norm.log_K);
    return env * P * s.phase;
}

double ladder_log_scale(const ModelParams& p, LevelIndex idx) {
    // log sqrt((2M)^m prod_{k<m} (E_{n+m} - E_k))
    double s = 0.0;
    for (int k = 0; k < idx.m; ++k)
        s += std::log(2.0 * p.mass * (energy(p, idx.n + idx.m) - energy(p, k)));
    return 0.5 * s;
}

// Ladder-built level-m eigenfunction: A_{m-1} ... A_0 applied to the base
// form of phi_{n+m}, each image divided by sin(theta) exactly.
detail::FormPtr build_ladder(const ModelParams& p, LevelIndex idx) {
    using detail::WComplex;
    using detail::wreal;
    const int np = idx.n + idx.m;
    detail::TrigForm f = detail::base_form(p, np);
    const wreal pi = boost::multiprecision::acos(wreal(-1));
    const wreal mom = wreal(p.hbar) * pi / wreal(p.L);
    for (int j = 0; j < idx.m; ++j) {
        const wreal k = wreal(p.nu) + j + 1;
        f = detail::form_first_order(f, WComplex(mom), WComplex(-mom * k), WComplex(mom * wreal(p.beta) / k));
        using boost::multiprecision::abs;
        if (abs(f.sigma - (k + 1)) > wreal(1e-20))
            throw LossOfSignificanceError("ladder: A_" + std::to_string(j) + " image is not divisible by sin");
    }
    return std::make_shared<const detail::TrigForm>(
        detail::form_scaled(f, WComplex(boost::multiprecision::exp(-wreal(ladder_log_scale(p, idx))))));
}

detail::FormPtr cached_form(const ModelParams& p, LevelIndex idx, bool ladder) {
    using Key = std::tuple<double, double, double, double, double, int, int, int, bool>;
    static std::mutex mu;
    static std::map<Key, detail::FormPtr> cache;
    const Key key{p.nu, p.beta, p.hbar, p.L, p.mass, p.degree_cap, idx.m, idx.n, ladder};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    detail::FormPtr f;
    if (ladder) {
        f = build_ladder(p, idx);
    } else {
        // phi_n^{(m)} = (-1)^m phi_n at nu + m
        ModelParams q = p;
        q.nu += idx.m;
        q.degree_cap = std::max(0, p.degree_cap - idx.m);
        f = std::make_shared<const detail::TrigForm>(
            detail::form_scaled(detail::base_form(q, idx.n), detail::WComplex(idx.m % 2 == 0 ? 1 : -1)));
    }
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 4096) cache.clear();
    cache.emplace(key, f);
    return f;
}

void check_level(const ModelParams& p, LevelIndex idx) {
    if (idx.m < 0 || idx.n < 0) throw DomainError("hierarchy_eigenfunction: negative index");
    if (idx.m + idx.n > p.degree_cap)
        throw DegreeCapError("hierarchy_eigenfunction: m + n = " + std::to_string(idx.m + idx.n) +
                             " exceeds degree cap " + std::to_string(p.degree_cap));
}

ModelParams shifted(const ModelParams& p, int m) {
    ModelParams q = p;
    q.nu += m;
    q.degree_cap = std::max(0, p.degree_cap - m);
    return q;
}

}  // namespace

double NormalizationData::K() const { return std::exp(log_K); }

NormalizationData normalization_K(const ModelParams& p, int n) { return detail::base_state(p, n)->norm; }

cplx eigenfunction_phase(const ModelParams& p, int n) { return detail::base_state(p, n)->phase; }

cplx eval_eigenfunction(const ModelParams& p, int n, double x) {
    check_closed(p, x, "eval_eigenfunction");
    return base_value(*detail::base_state(p, n), x);
}

cplx eval_eigenfunction_derivative(const ModelParams& p, int n, double x) {
    check_open(p, x, "eval_eigenfunction_derivative");
    return base_jet(*detail::base_state(p, n), x, 1).derivative_value(1);
}

Jet eigenfunction_jet(const ModelParams& p, int n, double x, int order) {
    check_open(p, x, "eigenfunction_jet");
    return base_jet(*detail::base_state(p, n), x, order);
}

cplx ladder_closed_form_A0(const ModelParams& p, int n, double x) {
    check_open(p, x, "ladder_closed_form_A0");
    auto s = detail::base_state(p, n + 1);
    const double th = kPi * x / p.L;
    const double sn = std::sin(th);
    const cplx z(0.0, std::cos(th) / sn);
    const double N = n + p.nu + 2.0;
    const double dbar = (energy(p, n + 1) - energy(p, 0)) / (n + 1.0);
    const double amp = std::sqrt(2.0 * p.mass * (n + 1.0) * (n + 1.0) * dbar / (n + 2.0 * p.nu + 3.0));
    const cplx a = s->jacobi.alpha;
    const cplx P1 = detail::eval_poly(*s, z);
    const cplx P0 = specfun::jacobi_poly({n, a + 1.0, std::conj(a) + 1.0}, z);
    const cplx bracket = amp * std::cos(th - phase_alpha(p, n)) * P1 +
                         cplx(0.0, kPi * p.hbar * (n + 2.0 * p.nu + 2.0) / (2.0 * p.L * sn)) * P0;
    const double env = std::exp(s->norm.log_K + (p.nu + n + 1.0) * std::log(sn) - p.beta * th / N);
    return s->phase * env * bracket;
}

cplx hierarchy_eigenfunction(const ModelParams& p, LevelIndex idx, double x, Route route) {
    check_closed(p, x, "hierarchy_eigenfunction");
    check_level(p, idx);
    if (x == 0.0 || x == p.L) return 0.0;
    if (route == Route::explicit_m1) {
        if (idx.m != 1) throw DomainError("hierarchy_eigenfunction: explicit route exists only for m = 1");
        const double scale = std::sqrt(2.0 * p.mass * (energy(p, idx.n + 1) - energy(p, 0)));
        return ladder_closed_form_A0(p, idx.n, x) / scale;
    }
    if (idx.m == 0 || route == Route::shifted_base) {
        const double sign = idx.m % 2 == 0 ? 1.0 : -1.0;
        return sign * base_value(*detail::base_state(shifted(p, idx.m), idx.n), x);
    }
    return detail::form_value(*cached_form(p, idx, true), x);
}

Jet hierarchy_eigenfunction_jet(const ModelParams& p, LevelIndex idx, double x, int order, Route route) {
    check_open(p, x, "hierarchy_eigenfunction_jet");
    check_level(p, idx);
    switch (route) {
        case Route::shifted_base: {
            const double sign = idx.m % 2 == 0 ? 1.0 : -1.0;
            return base_jet(*detail::base_state(shifted(p, idx.m), idx.n), x, order) * sign;
        }
        case Route::explicit_m1:
            throw DomainError("hierarchy_eigenfunction_jet: explicit route provides values only");
        case Route::ladder:
            break;
    }
    if (idx.m == 0) return base_jet(*detail::base_state(p, idx.n), x, order);
    return detail::form_jet(*cached_form(p, idx, true), x, order);
}

EigenFunction::EigenFunction(const ModelParams& p, LevelIndex idx, Route route)
    : params_(p), idx_(idx), route_(route) {
    check_level(p, idx);
    if (route == Route::shifted_base) {
        auto s = detail::base_state(shifted(p, idx.m), idx.n);
        log_norm_ = s->norm.log_K;
        phase_ = (idx.m % 2 == 0 ? 1.0 : -1.0) * s->phase;
    } else {
        auto s = detail::base_state(p, idx.n + idx.m);
        log_norm_ = s->norm.log_K - ladder_log_scale(p, idx);
        phase_ = s->phase;
    }
}

double EigenFunction::energy() const { return ptsusy::energy(params_, idx_); }

cplx EigenFunction::operator()(double x) const { return hierarchy_eigenfunction(params_, idx_, x, route_); }

cplx EigenFunction::derivative(double x) const { return jet(x, 1).derivative_value(1); }

Jet EigenFunction::jet(double x, int order) const {
    return hierarchy_eigenfunction_jet(params_, idx_, x, order, route_);
}

Operand EigenFunction::operand() const {
    if (route_ == Route::explicit_m1) throw DomainError("EigenFunction: explicit route provides values only");
    const bool ladder = route_ == Route::ladder && idx_.m > 0;
    return detail::form_operand(cached_form(params_, idx_, ladder));
}

}  // namespace ptsusy
