#include "ptsusy/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "detail/trig_form.hpp"
#include "ptsusy/errors.hpp"
#include "ptsusy/quadrature.hpp"
#include "ptsusy/spectrum.hpp"
#include "ptsusy/wavefn.hpp"

namespace ptsusy {
namespace {

constexpr double kPi = std::numbers::pi;

void check_interior(const ModelParams& p, double x, const char* who) {
    if (!(x > 0.0 && x < p.L)) throw DomainError(std::string(who) + ": x must lie strictly inside (0, L)");
}

Jet theta_jet(const ModelParams& p, double x, int order) {
    return Jet::variable(x, order) * cplx(kPi / p.L);
}

Jet cot_jet(const ModelParams& p, double x, int order) {
    Jet s, c;
    sincos(theta_jet(p, x, order), s, c);
    return c / s;
}

Jet inv_sin2_jet(const ModelParams& p, double x, int order) {
    Jet s, c;
    sincos(theta_jet(p, x, order), s, c);
    return Jet(order, 1.0) / (s * s);
}

}  // namespace

double superpotential(const ModelParams& p, int m, double x) {
    check_interior(p, x, "superpotential");
    const double k = p.nu + m + 1.0;
    return -p.momentum_scale() * (k / std::tan(kPi * x / p.L) - p.beta / k);
}

Jet superpotential_jet(const ModelParams& p, int m, double x, int order) {
    check_interior(p, x, "superpotential");
    const double k = p.nu + m + 1.0;
    return (cot_jet(p, x, order) * k - p.beta / k) * (-p.momentum_scale());
}

double potential(const ModelParams& p, int m, double x, PotentialRoute route) {
    check_interior(p, x, "potential");
    const double e0 = p.epsilon0();
    const double th = kPi * x / p.L;
    const double s = std::sin(th), cot = std::cos(th) / s;
    switch (route) {
        case PotentialRoute::closed_form:
            return e0 * ((p.nu + m) * (p.nu + m + 1.0) / (s * s) - 2.0 * p.beta * cot);
        case PotentialRoute::from_W: {
            const Jet w = superpotential_jet(p, m, x, 1);
            const double W = w[0].real(), dW = w[1].real();
            return (W * W - p.hbar * dW) / (2.0 * p.mass) + energy(p, LevelIndex{m, 0});
        }
        case PotentialRoute::partner: {
            if (m < 1) throw DomainError("potential: partner route requires m >= 1");
            const Jet w = superpotential_jet(p, m - 1, x, 1);
            const double W = w[0].real(), dW = w[1].real();
            return (W * W + p.hbar * dW) / (2.0 * p.mass) + energy(p, LevelIndex{m - 1, 0});
        }
        case PotentialRoute::cross_relation: {
            const double v0 = e0 * (p.nu * (p.nu + 1.0) / (s * s) - 2.0 * p.beta * cot);
            // (ln sin(pi x/L))'' = -(pi/L)^2 / sin^2
            const double lnsin2 = -(kPi / p.L) * (kPi / p.L) / (s * s);
            return v0 - p.hbar * p.hbar * m * (2.0 * p.nu + m + 1.0) / (2.0 * p.mass) * lnsin2;
        }
    }
    throw DomainError("potential: unknown route");
}

Jet potential_jet(const ModelParams& p, int m, double x, int order) {
    check_interior(p, x, "potential");
    const double e0 = p.epsilon0();
    return (inv_sin2_jet(p, x, order) * ((p.nu + m) * (p.nu + m + 1.0)) - cot_jet(p, x, order) * (2.0 * p.beta)) * e0;
}

namespace {

using detail::TrigForm;
using detail::WComplex;
using detail::wreal;

Operand lift(TrigForm f) { return detail::form_operand(std::make_shared<const TrigForm>(std::move(f))); }

// A_m F (dagger = false) or A_m^dagger F on a jet; the result is one order shorter.
Jet jet_A(const ModelParams& p, int m, const Jet& F, double x, double w_sign, bool dagger) {
    const int order = F.order() - 1;
    return F.derivative() * (dagger ? -p.hbar : p.hbar) + superpotential_jet(p, m, x, order) * w_sign * F;
}

// -(hbar^2/2M) F'' + (a / sin^2 + b cot + c) F; two orders shorter.
Jet jet_S(const ModelParams& p, const Jet& F, double x, double a, double b, double c) {
    const int order = F.order() - 2;
    return F.derivative().derivative() * (-p.hbar * p.hbar / (2.0 * p.mass)) +
           (inv_sin2_jet(p, x, order) * a + cot_jet(p, x, order) * b + c) * F;
}

// hbar d/dx + s W_m = (pi hbar / L) [+-d/dtheta - s k cot + s beta / k] in theta = pi x / L.
TrigForm form_A(const ModelParams& p, int m, const TrigForm& f, double w_sign, bool dagger) {
    const wreal mom = wreal(p.hbar) * boost::multiprecision::acos(wreal(-1)) / wreal(p.L);
    const wreal k = wreal(p.nu) + m + 1;
    const wreal s = w_sign;
    return detail::form_first_order(f, WComplex(dagger ? -mom : mom), WComplex(-s * mom * k),
                                    WComplex(s * mom * wreal(p.beta) / k));
}

struct Centrifugal {
    int c1, c0;

    double value(const ModelParams& p) const { return p.nu * p.nu + c1 * p.nu + c0; }
};

Centrifugal level_centrifugal(int m) { return {2 * m + 1, m * (m + 1)}; }

TrigForm form_S(const ModelParams& p, const TrigForm& f, Centrifugal g, double e) {
    const wreal pi = boost::multiprecision::acos(wreal(-1));
    const wreal nu = p.nu;
    const wreal e0 = wreal(p.hbar) * wreal(p.hbar) / (2 * wreal(p.mass)) * (pi / wreal(p.L)) * (pi / wreal(p.L));
    return detail::form_second_order(f, WComplex(-e0), WComplex(e0 * (nu * nu + g.c1 * nu + g.c0)),
                                     WComplex(-2 * e0 * wreal(p.beta)), WComplex(-wreal(e)));
}

Operand apply_S(const ModelParams& p, Centrifugal g, double e, const Operand& f) {
    if (f.form) return lift(form_S(p, *f.form, g, e));
    const double a = p.epsilon0() * g.value(p), b = -2.0 * p.epsilon0() * p.beta;
    return {[p, a, b, e, f](double x, int order) { return jet_S(p, f(x, order + 2), x, a, b, -e); }, f.fd_based};
}

}  // namespace

Operand apply_A(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o) {
    if (f.form) return lift(form_A(p, m, *f.form, o.w_sign, false));
    return {[p, m, f, o](double x, int order) { return jet_A(p, m, f(x, order + 1), x, o.w_sign, false); },
            f.fd_based};
}

Operand apply_A_dagger(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o) {
    if (f.form) return lift(form_A(p, m, *f.form, o.w_sign, true));
    return {[p, m, f, o](double x, int order) { return jet_A(p, m, f(x, order + 1), x, o.w_sign, true); },
            f.fd_based};
}

Operand apply_A_range(const ModelParams& p, int lo, int hi, const Operand& f, const OperatorOptions& o) {
    Operand g = f;
    for (int j = lo; j <= hi; ++j) g = apply_A(p, j, g, o);
    return g;
}

Operand apply_A_dagger_range(const ModelParams& p, int lo, int hi, const Operand& f, const OperatorOptions& o) {
    Operand g = f;
    for (int j = hi; j >= lo; --j) g = apply_A_dagger(p, j, g, o);
    return g;
}

Operand apply_B_chain(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o) {
    if (m < 0) throw DomainError("apply_B_chain: negative order");
    return apply_A_range(p, 0, m, f, o);
}

Operand apply_B_dagger_chain(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o) {
    if (m < 0) throw DomainError("apply_B_dagger_chain: negative order");
    return apply_A_dagger_range(p, 0, m, f, o);
}

Operand schrodinger_apply(const ModelParams& p, int c1, int c0, double e, const Operand& f) {
    return apply_S(p, {c1, c0}, e, f);
}

Operand hamiltonian_apply(const ModelParams& p, int m, const Operand& f) { return apply_S(p, level_centrifugal(m), 0.0, f); }

Operand factorized_hamiltonian_apply(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o) {
    const double e0 = energy(p, LevelIndex{m, 0});
    if (f.form) {
        const TrigForm aa = form_A(p, m, form_A(p, m, *f.form, o.w_sign, false), o.w_sign, true);
        return lift(detail::form_sum(aa, WComplex(wreal(1) / (2 * wreal(p.mass))), *f.form, WComplex(e0)));
    }
    return {[p, m, f, o, e0](double x, int order) {
                const Jet F = f(x, order + 2);
                const Jet aa = jet_A(p, m, jet_A(p, m, F, x, o.w_sign, false), x, o.w_sign, true);
                return aa * (1.0 / (2.0 * p.mass)) + F.truncated(order) * e0;
            },
            f.fd_based};
}

Operand energy_product_apply(const ModelParams& p, int level, int lo, int hi, const Operand& f) {
    if (f.form) {
        TrigForm g = *f.form;
        for (int k = lo; k <= hi; ++k) g = form_S(p, g, level_centrifugal(level), energy(p, k));
        return lift(std::move(g));
    }
    const double a = p.epsilon0() * level_centrifugal(level).value(p), b = -2.0 * p.epsilon0() * p.beta;
    return {[p, a, b, lo, hi, f](double x, int order) {
                const int factors = std::max(0, hi - lo + 1);
                Jet g = f(x, order + 2 * factors);
                for (int k = lo; k <= hi; ++k) g = jet_S(p, g, x, a, b, -energy(p, k));
                return g;
            },
            f.fd_based};
}

Operand scaled(const Operand& f, cplx s) {
    if (f.form) return lift(detail::form_scaled(*f.form, WComplex(s)));
    return {[f, s](double x, int order) { return f(x, order) * s; }, f.fd_based};
}

Operand difference(const Operand& a, const Operand& b) {
    if (a.form && b.form && detail::form_compatible(*a.form, *b.form))
        return lift(detail::form_sum(*a.form, WComplex(1), *b.form, WComplex(-1)));
    return {[a, b](double x, int order) { return a(x, order) - b(x, order); }, a.fd_based || b.fd_based};
}

Operand finite_difference_operand(std::function<cplx(double)> f, double h0) {
    return {[f, h0](double x, int order) {
                if (order > kMaxFiniteDifferenceOrder)
                    throw DepthError("finite-difference operand: derivative order " + std::to_string(order) +
                                     " exceeds the nesting cap (chain order m <= 3)");
                Jet j(order, f(x));
                double fact = 1.0;
                for (int k = 1; k <= order; ++k) {
                    fact *= k;
                    j[k] = quad::derivative(f, x, k, h0).value / fact;
                }
                return j;
            },
            true};
}

std::vector<double> interior_grid(const ModelParams& p, int points) {
    if (points < 1) throw DomainError("interior_grid: need at least one point");
    std::vector<double> g(points);
    const double lo = 1e-6 * p.L, hi = (1.0 - 1e-6) * p.L;
    for (int i = 0; i < points; ++i) g[i] = std::clamp(p.L * (i + 1.0) / (points + 1.0), lo, hi);
    return g;
}

SampledFunction sample(const Operand& f, const std::vector<double>& grid) {
    SampledFunction s{grid, {}};
    s.values.reserve(grid.size());
    for (double x : grid) s.values.push_back(f(x, 0).value());
    return s;
}

double relative_residual(const SampledFunction& a, const SampledFunction& b, double floor) {
    if (a.values.size() != b.values.size()) throw DomainError("relative_residual: size mismatch");
    double diff = 0.0, scale = floor;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
        scale = std::max(scale, std::abs(b.values[i]));
    }
    if (scale == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / scale;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

Operand bump(const ModelParams& p, double centre, double width, double kappa, double amp) {
    return {[p, centre, width, kappa, amp](double x, int order) {
        const double t0 = (x - centre) / width;
        if (std::abs(t0) >= 1.0) return Jet(order, 0.0);
        const Jet t = (Jet::variable(x, order) - centre) * (1.0 / width);
        const Jet q = Jet(order, 1.0) - t * t;
        const Jet phase = Jet::variable(x, order) * cplx(0.0, kappa);
        return exp(phase - Jet(order, 1.0) / q) * amp;
    }};
}

}  // namespace

std::vector<TestFunction> test_corpus(const ModelParams& p, int m) {
    std::vector<TestFunction> out;
    for (int n = 0; n < 8; ++n)
        out.push_back({"phi_" + std::to_string(n) + "^(" + std::to_string(m) + ")",
                       EigenFunction(p, LevelIndex{m, n}, Route::shifted_base).operand()});
    std::mt19937_64 g(20240917ULL);
    for (int i = 0; i < 4; ++i) {
        const double width = p.L * (0.12 + 0.12 * unit(g));
        const double centre = width + 0.02 * p.L + (p.L - 2.0 * width - 0.04 * p.L) * unit(g);
        const double kappa = (kPi / p.L) * (-3.0 + 6.0 * unit(g));
        const double amp = 0.5 + 1.5 * unit(g);
        out.push_back({"bump_" + std::to_string(i), bump(p, centre, width, kappa, amp)});
    }
    return out;
}

}  // namespace ptsusy
