#include "ptsusy/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail/base_state.hpp"
#include "ptsusy/errors.hpp"
#include "ptsusy/operators.hpp"
#include "ptsusy/wavefn.hpp"

namespace ptsusy {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

using detail::WComplex;

ModelParams ground_params(const ModelParams& p, int m) {
    if (m < 0) throw DomainError("coherent: negative level");
    if (m > p.degree_cap)
        throw DegreeCapError("coherent: level " + std::to_string(m) + " exceeds degree cap " +
                             std::to_string(p.degree_cap));
    ModelParams g = p;
    g.nu += m;
    g.degree_cap = p.degree_cap - m;
    return g;
}

void check_label(const ModelParams& p, double q, const char* who) {
    if (!(q > 0.0 && q < p.L)) throw DomainError(std::string(who) + ": q must lie strictly inside (0, L)");
}

// W_m as a function of u = cot(pi q / L).
double superpotential_u(const ModelParams& p, int m, double u) {
    const double k = p.nu + m + 1.0;
    return -p.momentum_scale() * (k * u - p.beta / k);
}

// log R for the ground state of level m at superpotential value W.
double log_R_at(const ModelParams& ground, double W) {
    const ScaledValue mom = exponential_moment(ground, 0, ground, 0, cplx(2.0 * W * ground.L / ground.hbar, 0.0));
    if (!(mom.mantissa.real() > 0.0))
        throw LossOfSignificanceError("cs_normalization: moment is not positive");
    return -0.5 * (mom.log_scale + std::log(mom.mantissa.real()));
}

double log_ground_density(const ModelParams& ground, double log_K0, double x) {
    const double th = kPi * x / ground.L;
    const double k = ground.nu + 1.0;
    return 2.0 * (log_K0 + k * std::log(std::sin(th)) - ground.beta * th / k);
}

}  // namespace

cplx ScaledValue::value() const { return std::exp(log_scale) * mantissa; }

ScaledValue exponential_moment(const ModelParams& p1, int j1, const ModelParams& p2, int j2, cplx t) {
    if (p1.L != p2.L) throw DomainError("exponential_moment: states live on different intervals");
    const auto s1 = detail::base_state(p1, j1);
    const auto s2 = detail::base_state(p2, j2);
    const double NN = s1->N + s2->N;
    const double Nt = 0.5 * NN;
    const cplx Z = t - kPi * (s1->b + s2->b);
    const cplx w = Z / (2.0 * kPi);

    const cplx log_pref = std::log(p1.L) + s1->norm.log_K + s2->norm.log_K + 0.5 * Z - NN * std::log(2.0) +
                          specfun::log_gamma(NN + 1.0) - specfun::log_gamma(Nt + 1.0 - kI * w) -
                          specfun::log_gamma(Nt + 1.0 + kI * w);

    // Term ratios against k = s = 0:
    // conj(c_k) c'_s (Nt+1-k-iw)_k (Nt+1-s+iw)_s / (NN+1-k-s)_{k+s}.
    std::vector<WComplex> terms;
    terms.reserve(s1->coeffs.size() * s2->coeffs.size());
    const WComplex lo = WComplex(cplx(Nt + 1.0) - kI * w);
    const WComplex hi = WComplex(cplx(Nt + 1.0) + kI * w);
    for (int k = 0; k <= j1; ++k) {
        const WComplex ck = conj(s1->coeffs[k]) * detail::pochhammer(lo - WComplex(k), k);
        for (int s = 0; s <= j2; ++s) {
            const WComplex num = ck * s2->coeffs[s] * detail::pochhammer(hi - WComplex(s), s);
            terms.push_back(num / detail::pochhammer(WComplex(NN + 1.0 - k - s), k + s));
        }
    }
    const detail::WideSum S = detail::compensated_sum(std::move(terms));
    if (S.digits < 6.0)
        throw LossOfSignificanceError("exponential_moment: double sum keeps " + std::to_string(S.digits) +
                                      " digits");
    ScaledValue out;
    out.log_scale = log_pref.real();
    out.mantissa = std::exp(kI * log_pref.imag()) * std::conj(s1->phase) * s2->phase * S.value.to_double();
    return out;
}

double cs_normalization(const ModelParams& p, int m, double q) {
    check_label(p, q, "cs_normalization");
    return log_R_at(ground_params(p, m), superpotential(p, m, q));
}

double cs_normalization_quadrature(const ModelParams& p, int m, double q, const quad::QuadratureConfig& cfg) {
    check_label(p, q, "cs_normalization_quadrature");
    const ModelParams g = ground_params(p, m);
    const double W = superpotential(p, m, q);
    const double log_K0 = normalization_K(g, 0).log_K;
    // Peak of the log integrand on a coarse grid keeps the exponentials in range.
    auto log_f = [&](double x) { return log_ground_density(g, log_K0, x) + 2.0 * W * x / p.hbar; };
    double shift = -1e300;
    for (int i = 1; i < 200; ++i) shift = std::max(shift, log_f(p.L * i / 200.0));
    auto f = [&](double x) -> cplx {
        if (x <= 0.0 || x >= p.L) return 0.0;
        return std::exp(log_f(x) - shift);
    };
    const auto r = quad::integrate_interval(f, 0.0, p.L, cfg);
    return -0.5 * (shift + std::log(r.value.real()));
}

double excited_log_moment(const ModelParams& p, int m, double q) {
    check_label(p, q, "excited_log_moment");
    if (m < 0) throw DomainError("excited_log_moment: negative level");
    const double k = p.nu + m + 1.0;
    const double b = p.beta / k;
    const double c = 1.0 / std::tan(kPi * q / p.L);
    const double log_K = normalization_K(p, m).log_K;

    // L K_m^2 (2^{nu+m+1} m!)^{-2} e^{-pi k c} |(-nu-m+ib)_m|^2 Gamma(2m+2nu+3) / |Gamma(m+nu+2+ikc)|^2
    // times the double sum normalized by its k = s = 0 term.
    const double log_pref = std::log(p.L) + 2.0 * log_K - 2.0 * k * std::log(2.0) -
                            2.0 * std::lgamma(m + 1.0) - kPi * k * c +
                            2.0 * std::log(std::abs(specfun::pochhammer(cplx(-p.nu - m, b), m))) +
                            specfun::log_gamma(2.0 * m + 2.0 * p.nu + 3.0).real() -
                            2.0 * specfun::log_gamma(cplx(m + p.nu + 2.0, k * c)).real();

    std::vector<WComplex> a(m + 1), bs(m + 1);
    const WComplex ib(0.0, b);
    for (int j = 0; j <= m; ++j) {
        const WComplex head = detail::pochhammer(WComplex(-m), j) *
                              detail::pochhammer(WComplex(-2.0 * p.nu - m - 1.0), j);
        a[j] = head / (detail::pochhammer(WComplex(-m - p.nu) - ib, j) * WComplex(detail::factorial(j)));
        bs[j] = head / (detail::pochhammer(WComplex(-m - p.nu) + ib, j) * WComplex(detail::factorial(j)));
    }
    const WComplex up(cplx(m + p.nu + 2.0, k * c));
    const WComplex dn(cplx(m + p.nu + 2.0, -k * c));
    std::vector<WComplex> terms;
    for (int i = 0; i <= m; ++i)
        for (int s = 0; s <= m; ++s)
            terms.push_back(a[i] * bs[s] * detail::pochhammer(up - WComplex(i), i) *
                            detail::pochhammer(dn - WComplex(s), s) /
                            detail::pochhammer(WComplex(2.0 * m + 2.0 * p.nu + 3.0 - i - s), i + s));
    const detail::WideSum S = detail::compensated_sum(std::move(terms));
    const double sre = static_cast<double>(S.value.re);
    if (S.digits < 6.0 || !(sre > 0.0))
        throw LossOfSignificanceError("excited_log_moment: double sum lost its significance");
    return log_pref + std::log(sre);
}

double excited_log_moment_quadrature(const ModelParams& p, int m, double q, const quad::QuadratureConfig& cfg) {
    check_label(p, q, "excited_log_moment_quadrature");
    const double W = superpotential(p, m, q);
    auto f = [&](double x) -> cplx {
        if (x <= 0.0 || x >= p.L) return 0.0;
        return std::exp(2.0 * W * x / p.hbar) * std::norm(eval_eigenfunction(p, m, x));
    };
    return std::log(quad::integrate_interval(f, 0.0, p.L, cfg).value.real());
}

CoherentState::CoherentState(const ModelParams& p, int m, PhasePoint label)
    : params_(p), ground_(ground_params(p, m)), m_(m), label_(label) {
    check_label(p, label.q, "CoherentState");
    if (!std::isfinite(label.p)) throw DomainError("CoherentState: momentum label is not finite");
    log_R_ = log_R_at(ground_, superpotential(p, m, label.q));
    log_K0_ = normalization_K(ground_, 0).log_K;
}

cplx CoherentState::z() const { return cplx(superpotential(params_, m_, label_.q), label_.p); }

cplx CoherentState::operator()(double x) const {
    if (!(x >= 0.0 && x <= params_.L)) throw DomainError("eval_cs: x outside [0, L]");
    if (x == 0.0 || x == params_.L) return 0.0;
    const double th = kPi * x / params_.L;
    const double k = ground_.nu + 1.0;
    const cplx zz = z();
    const double log_amp = log_R_ + log_K0_ + k * std::log(std::sin(th)) - params_.beta * th / k +
                           zz.real() * x / params_.hbar;
    const double sign = m_ % 2 == 0 ? 1.0 : -1.0;
    return sign * std::exp(log_amp) * std::exp(kI * (zz.imag() * x / params_.hbar));
}

Jet CoherentState::jet(double x, int order) const {
    if (!(x > 0.0 && x < params_.L)) throw DomainError("CoherentState::jet: x must lie strictly inside (0, L)");
    const Jet X = Jet::variable(x, order);
    const Jet th = X * cplx(kPi / params_.L);
    Jet sn, cs;
    sincos(th, sn, cs);
    const double k = ground_.nu + 1.0;
    const Jet lj = log(sn) * cplx(k) - th * cplx(params_.beta / k) + X * (z() / params_.hbar) +
                   cplx(log_R_ + log_K0_);
    return exp(lj) * cplx(m_ % 2 == 0 ? 1.0 : -1.0);
}

Operand CoherentState::operand() const {
    const CoherentState self = *this;
    return {[self](double x, int order) { return self.jet(x, order); }};
}

cplx eval_cs(const CoherentState& s, double x) { return s(x); }

cplx cs_overlap(const CoherentState& s1, const CoherentState& s2) {
    if (s1.m() != s2.m()) throw DomainError("cs_overlap: states belong to different levels");
    const ModelParams g1 = ground_params(s1.params(), s1.m());
    const ModelParams g2 = ground_params(s2.params(), s2.m());
    if (g1.hbar != g2.hbar) throw DomainError("cs_overlap: states use different units");
    const cplx t = (s1.z() + std::conj(s2.z())) * g1.L / g1.hbar;
    const ScaledValue mom = exponential_moment(g2, 0, g1, 0, t);
    return std::exp(s1.log_R() + s2.log_R() + mom.log_scale) * mom.mantissa;
}

quad::Result cs_overlap_quadrature(const CoherentState& s1, const CoherentState& s2,
                                   const quad::QuadratureConfig& cfg) {
    if (s1.params().L != s2.params().L) throw DomainError("cs_overlap_quadrature: different intervals");
    auto f = [&](double x) { return std::conj(s2(x)) * s1(x); };
    return quad::integrate_interval(f, 0.0, s1.params().L, cfg);
}

ResolutionPoint resolution_kernel(const ModelParams& p, int m, double x, const quad::QuadratureConfig& cfg) {
    if (!(x > 0.0 && x < p.L)) throw DomainError("resolution_kernel: x must lie strictly inside (0, L)");
    const ModelParams g = ground_params(p, m);
    const double log_K0 = normalization_K(g, 0).log_K;
    const double log_density = log_ground_density(g, log_K0, x);
    const double k = g.nu + 1.0;
    const double X = x / p.L;
    // dq = (L / pi) du / (1 + u^2); the log-space sum keeps R^2 e^{2Wx} finite.
    auto f = [&](double u) -> cplx {
        const double W = superpotential_u(p, m, u);
        const double lg = log_density + 2.0 * log_R_at(g, W) + 2.0 * W * x / p.hbar;
        return std::exp(lg) * (p.L / kPi) / (1.0 + u * u);
    };
    const double rate = 2.0 * kPi * k * std::min(X, 1.0 - X);
    const quad::Result r = quad::integrate_real_line(f, rate, cfg);
    ResolutionPoint out;
    out.x = x;
    out.G = r.value.real();
    out.err_est = r.err_est;
    out.offset = out.G - 1.0;
    out.alt_measure_G = out.G / (4.0 * kPi * kPi);
    return out;
}

std::vector<std::vector<cplx>> resolution_gram(const ModelParams& p, int m, int nmax,
                                               const quad::QuadratureConfig& cfg) {
    if (nmax < 0) throw DomainError("resolution_gram: negative size");
    const int dim = nmax + 1;
    std::vector<EigenFunction> basis;
    for (int n = 0; n <= nmax; ++n) basis.emplace_back(p, LevelIndex{m, n}, Route::shifted_base);
    quad::QuadratureConfig inner = cfg;
    inner.rel_tol = std::min(cfg.rel_tol, 1e-11);
    auto f = [&](double x, std::vector<cplx>& out) {
        std::vector<cplx> v(dim);
        double weight = 0.0;
        for (int i = 0; i < dim; ++i) {
            v[i] = x > 0.0 && x < p.L ? basis[i](x) : 0.0;
            weight = std::max(weight, std::norm(v[i]));
        }
        // Where every |phi_i|^2 is below 1e-20 the products contribute less
        // than 1e-20 L in total, since 0 <= G stays bounded.
        const double G = weight < 1e-20 ? 0.0 : resolution_kernel(p, m, x, inner).G;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) out[i * dim + j] = std::conj(v[i]) * v[j] * G;
    };
    const auto r = quad::integrate_interval(f, dim * dim, 0.0, p.L, cfg);
    std::vector<std::vector<cplx>> gram(dim, std::vector<cplx>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) gram[i][j] = r.value[i * dim + j];
    return gram;
}

cplx master_integral(double delta, cplx z) {
    if (!(delta > -1.5)) throw DomainError("master_integral: delta must exceed -3/2");
    const cplx iz = kI * z / (2.0 * kPi);
    const cplx lg = specfun::log_gamma(2.0 * delta + 3.0) + 0.5 * z - (delta + 1.0) * std::log(4.0) -
                    specfun::log_gamma(delta + 2.0 + iz) - specfun::log_gamma(delta + 2.0 - iz);
    return std::exp(lg);
}

quad::Result master_integral_quadrature(double delta, cplx z, const quad::QuadratureConfig& cfg) {
    if (!(delta > -1.5)) throw DomainError("master_integral_quadrature: delta must exceed -3/2");
    auto f = [&](double x) -> cplx {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return std::exp((2.0 * delta + 2.0) * std::log(std::sin(kPi * x)) + z * x);
    };
    return quad::integrate_interval(f, 0.0, 1.0, cfg);
}

cplx cosh_fourier_pair(double delta, double t) {
    if (!(delta > -1.0)) throw DomainError("cosh_fourier_pair: delta must exceed -1");
    const cplx lg = delta * std::log(4.0) + specfun::log_gamma(cplx(delta + 1.0, -0.5 * t)) +
                    specfun::log_gamma(cplx(delta + 1.0, 0.5 * t)) - specfun::log_gamma(2.0 * delta + 2.0);
    return std::exp(lg) / kPi;
}

quad::Result cosh_fourier_pair_quadrature(double delta, double t, const quad::QuadratureConfig& cfg) {
    if (!(delta > -1.0)) throw DomainError("cosh_fourier_pair_quadrature: delta must exceed -1");
    auto f = [&](double u) -> cplx {
        const double a = std::abs(u);
        const double log_cosh = a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
        return std::exp(-kI * (t * u) - (2.0 * delta + 2.0) * log_cosh) / (2.0 * kPi);
    };
    return quad::integrate_real_line(f, 2.0 * delta + 2.0, cfg);
}

}  // namespace ptsusy
