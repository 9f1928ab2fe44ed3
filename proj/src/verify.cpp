#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <string>

#include "ptsusy/errors.hpp"
#include "ptsusy/operators.hpp"
#include "ptsusy/spectrum.hpp"
#include "ptsusy/wavefn.hpp"

namespace ptsusy {
namespace {

constexpr double kPi = std::numbers::pi;
// The compact bumps of the corpus need a starting partition finer than their support.
constexpr int kInitialPanels = 32;

struct Checker {
    const ModelParams& p;
    const VerifyOptions& opt;
    std::vector<double> grid;

    Checker(const ModelParams& params, const VerifyOptions& o)
        : p(params), opt(o), grid(interior_grid(params, o.grid_points)) {}

    double max_abs(const Operand& f) const {
        double m = 0.0;
        for (double x : grid) m = std::max(m, std::abs(f(x, 0).value()));
        return m;
    }

    // max |lhs - rhs| / max(max |rhs|, floor_scale * max |f|)
    double pointwise(const Operand& lhs, const Operand& rhs, const Operand& f, double floor_scale) const {
        const double floor = floor_scale > 0.0 ? floor_scale * max_abs(f) : 0.0;
        return relative_residual(sample(lhs, grid), sample(rhs, grid), floor);
    }

    template <class Lhs, class Rhs>
    double over_corpus(int level, Lhs lhs, Rhs rhs, double floor_scale) const {
        double worst = 0.0;
        for (const auto& t : test_corpus(p, level)) worst = std::max(worst, pointwise(lhs(t.f), rhs(t.f), t.f, floor_scale));
        return worst;
    }

    cplx mean_value(const Operand& psi, const Operand& xpsi) const {
        auto integrand = [&](double x) {
            if (x <= 0.0 || x >= p.L) return cplx(0.0);
            return std::conj(psi(x, 0).value()) * xpsi(x, 0).value();
        };
        quad::QuadratureConfig cfg = opt.quad;
        cfg.initial_panels = std::max(cfg.initial_panels, kInitialPanels);
        return quad::integrate_interval(integrand, lo(), hi(), cfg).value;
    }

    // Interior window shared with the sampling grid.
    double lo() const { return 1e-6 * p.L; }
    double hi() const { return (1.0 - 1e-6) * p.L; }

    // || g ||_2 by quadrature, with an absolute floor matched to `scale`.
    double l2_norm(const Operand& g, double scale) const {
        quad::QuadratureConfig cfg = opt.quad;
        cfg.abs_tol = std::pow(1e-9 * scale, 2);
        cfg.rel_tol = 1e-3;
        cfg.initial_panels = std::max(cfg.initial_panels, kInitialPanels);
        auto integrand = [&](double x) {
            if (x <= 0.0 || x >= p.L) return cplx(0.0);
            return cplx(std::norm(g(x, 0).value()));
        };
        return std::sqrt(quad::integrate_interval(integrand, lo(), hi(), cfg).value.real());
    }

    // operator scales for residual floors
    double scale_A(int m) const { return p.momentum_scale() * (p.nu + m + 1.0); }
    double scale_H(int m) const { return p.epsilon0() * std::pow(p.nu + m + 1.0, 2); }
};

IdentityResult make(std::string name, int n, int m, double r, int grid, double thr, bool mandatory = true,
                    std::string variant = "", std::string note = "") {
    IdentityResult out;
    out.identity = std::move(name);
    out.variant = std::move(variant);
    out.n = n;
    out.m = m;
    out.max_residual = r;
    out.grid_size = grid;
    out.threshold = thr;
    out.mandatory = mandatory;
    out.passed = std::isfinite(r) && r < thr;
    out.note = std::move(note);
    return out;
}

double energy_product(const ModelParams& p, double e, int lo, int hi) {
    double prod = 1.0;
    for (int k = lo; k <= hi; ++k) prod *= 2.0 * p.mass * (e - energy(p, k));
    return prod;
}

// -(hbar^2/2M) f'' + (V_0 + eps0 (m+1)(2nu+m+2)/sin^2) f - e f: the lower block factor of H^ss.
Operand lower_block_factor(const ModelParams& p, int m, const Operand& f, double e) {
    // nu (nu + 1) + (m + 1)(2 nu + m + 2) = nu^2 + (2m + 3) nu + (m + 1)(m + 2)
    return schrodinger_apply(p, 2 * m + 3, (m + 1) * (m + 2), e, f);
}

Operand lower_block_product(const ModelParams& p, int m, const Operand& f) {
    Operand g = f;
    for (int k = 0; k <= m; ++k) g = lower_block_factor(p, m, g, energy(p, k));
    return g;
}

// A task computes the residuals of the named identities; if it throws,
// those identities are reported as failed with the error text.
struct Task {
    std::vector<std::string> names;
    std::function<std::vector<IdentityResult>()> run;
};

std::vector<IdentityResult> run_tasks(std::vector<Task> tasks, int n, int m, int grid, bool mandatory = true) {
    std::vector<std::future<std::vector<IdentityResult>>> futures;
    futures.reserve(tasks.size());
    for (auto& t : tasks) futures.push_back(std::async(std::launch::async, t.run));
    std::vector<IdentityResult> out;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
            auto part = futures[i].get();
            out.insert(out.end(), part.begin(), part.end());
        } catch (const std::exception& e) {
            for (const auto& name : tasks[i].names) {
                IdentityResult r = make(name, n, m, std::numeric_limits<double>::infinity(), grid, 0.0);
                r.passed = false;
                r.mandatory = mandatory;
                r.note = std::string("error: ") + e.what();
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

}  // namespace

std::vector<IdentityResult> verify_operator_identities(const ModelParams& p, int n, int m, const VerifyOptions& opt) {
    p.validate();
    if (n < 0 || m < 0) throw DomainError("verify_operator_identities: negative index");
    if (n + m + 1 > p.degree_cap) throw DegreeCapError("verify_operator_identities: n + m + 1 exceeds degree cap");
    const Checker c(p, opt);
    const int G = static_cast<int>(c.grid.size());
    const auto& op = opt.op;
    const double mom = p.momentum_scale();
    std::vector<Task> tasks;

    // Ground-state annihilation A_m phi_0^{(m)} = 0.
    tasks.push_back({{"annihilation"}, [&, G] {
        const Operand phi0 = EigenFunction(p, {m, 0}).operand();
        const double r = c.max_abs(apply_A(p, m, phi0, op)) / (c.max_abs(phi0) * c.scale_A(m));
        return std::vector{make("annihilation", 0, m, r, G, 1e-9)};
    }});

    // H^{(m)} = (1/2M) A^dagger A + E_0^{(m)} on the corpus.
    tasks.push_back({{"factorization"}, [&, G] {
        const double r = c.over_corpus(
            m, [&](const Operand& f) { return factorized_hamiltonian_apply(p, m, f, op); },
            [&](const Operand& f) { return hamiltonian_apply(p, m, f); }, c.scale_H(m));
        return std::vector{make("factorization", -1, m, r, G, 1e-9)};
    }});

    // Eigen-residuals at level m and m+1 (isospectrality).
    tasks.push_back({{"eigen_residual", "isospectral_residual"}, [&, G] {
        std::vector<IdentityResult> out;
        for (int lvl : {m, m + 1}) {
            const EigenFunction phi(p, {lvl, n});
            const Operand f = phi.operand();
            const double e = phi.energy();
            const double scale = std::max(std::abs(e), p.epsilon0());
            const Operand res = difference(hamiltonian_apply(p, lvl, f), scaled(f, e));
            out.push_back(make(lvl == m ? "eigen_residual" : "isospectral_residual", n, lvl,
                               c.l2_norm(res, scale) / scale, G, 1e-6));
        }
        return out;
    }});

    // B_m phi_{n+m+1} = (pi hbar/L)^{m+1} M(n,m) phi_n^{(m+1)}, right side on the shifted-base route.
    tasks.push_back({{"ladder_pointwise"}, [&, G] {
        const Operand base = EigenFunction(p, {0, n + m + 1}).operand();
        const Operand target = EigenFunction(p, {m + 1, n}, Route::shifted_base).operand();
        const double k = std::pow(mom, m + 1) * gap_factor_M(p, n, m);
        const double r = c.pointwise(apply_B_chain(p, m, base, op), scaled(target, k), target, 0.0);
        return std::vector{make("ladder_pointwise", n, m, r, G, 1e-8)};
    }});

    // Mean values of B B^dagger and B^dagger B.
    tasks.push_back({{"mean_B_Bdagger", "mean_Bdagger_B"}, [&, G] {
        const double expected = std::pow(std::pow(mom, m + 1) * gap_factor_M(p, n, m), 2);
        const Operand up = EigenFunction(p, {m + 1, n}, Route::shifted_base).operand();
        const Operand down = EigenFunction(p, {0, n + m + 1}).operand();
        const cplx v1 = c.mean_value(up, apply_B_chain(p, m, apply_B_dagger_chain(p, m, up, op), op));
        const cplx v2 = c.mean_value(down, apply_B_dagger_chain(p, m, apply_B_chain(p, m, down, op), op));
        return std::vector{make("mean_B_Bdagger", n, m, std::abs(v1 - expected) / expected, G, 1e-8),
                           make("mean_Bdagger_B", n + m + 1, m, std::abs(v2 - expected) / expected, G, 1e-8)};
    }});

    // H^{(m+1)} A_m = A_m H^{(m)} and H^{(m)} A_m^dagger = A_m^dagger H^{(m+1)}.
    tasks.push_back({{"intertwining_A", "intertwining_A_dagger"}, [&, G] {
        const double fs = c.scale_A(m) * c.scale_H(m + 1);
        const double r1 = c.over_corpus(
            m, [&](const Operand& f) { return hamiltonian_apply(p, m + 1, apply_A(p, m, f, op)); },
            [&](const Operand& f) { return apply_A(p, m, hamiltonian_apply(p, m, f), op); }, fs);
        const double r2 = c.over_corpus(
            m + 1, [&](const Operand& f) { return hamiltonian_apply(p, m, apply_A_dagger(p, m, f, op)); },
            [&](const Operand& f) { return apply_A_dagger(p, m, hamiltonian_apply(p, m + 1, f), op); }, fs);
        return std::vector{make("intertwining_A", -1, m, r1, G, 1e-7), make("intertwining_A_dagger", -1, m, r2, G, 1e-7)};
    }});

    // B_m H = H^{(m+1)} B_m and H B_m^dagger = B_m^dagger H^{(m+1)}.
    tasks.push_back({{"intertwining_B", "intertwining_B_dagger"}, [&, G] {
        const double fs = std::pow(c.scale_A(m), m + 1) * c.scale_H(m + 1);
        const double r1 = c.over_corpus(
            0, [&](const Operand& f) { return apply_B_chain(p, m, hamiltonian_apply(p, 0, f), op); },
            [&](const Operand& f) { return hamiltonian_apply(p, m + 1, apply_B_chain(p, m, f, op)); }, fs);
        const double r2 = c.over_corpus(
            m + 1, [&](const Operand& f) { return hamiltonian_apply(p, 0, apply_B_dagger_chain(p, m, f, op)); },
            [&](const Operand& f) { return apply_B_dagger_chain(p, m, hamiltonian_apply(p, m + 1, f), op); }, fs);
        return std::vector{make("intertwining_B", -1, m, r1, G, 1e-7), make("intertwining_B_dagger", -1, m, r2, G, 1e-7)};
    }});

    // B^dagger B and B B^dagger on eigenstates against scalar energy products.
    tasks.push_back({{"product_Bdagger_B", "product_B_Bdagger"}, [&, G] {
        const int j = n + m + 1;
        const double s = energy_product(p, energy(p, j), 0, m);
        const Operand down = EigenFunction(p, {0, j}).operand();
        const Operand up = EigenFunction(p, {m + 1, n}, Route::shifted_base).operand();
        const double r1 = c.pointwise(apply_B_dagger_chain(p, m, apply_B_chain(p, m, down, op), op), scaled(down, s), down, 0.0);
        const double r2 = c.pointwise(apply_B_chain(p, m, apply_B_dagger_chain(p, m, up, op), op), scaled(up, s), up, 0.0);
        return std::vector{make("product_Bdagger_B", j, m, r1, G, 1e-9), make("product_B_Bdagger", n, m, r2, G, 1e-9)};
    }});

    // Diagonal blocks of {Q, Q^dagger} = H^ss with H^ss products applied as operators.
    tasks.push_back({{"superalgebra_upper_block", "superalgebra_lower_block"}, [&, G] {
        const double scale = std::pow(2.0 * p.mass * c.scale_H(m + 1), m + 1);
        const double r1 = c.over_corpus(
            0, [&](const Operand& f) { return apply_B_dagger_chain(p, m, apply_B_chain(p, m, f, op), op); },
            [&](const Operand& f) { return scaled(energy_product_apply(p, 0, 0, m, f), std::pow(2.0 * p.mass, m + 1)); },
            scale);
        const double r2 = c.over_corpus(
            m + 1, [&](const Operand& f) { return apply_B_chain(p, m, apply_B_dagger_chain(p, m, f, op), op); },
            [&](const Operand& f) { return scaled(lower_block_product(p, m, f), std::pow(2.0 * p.mass, m + 1)); }, scale);
        return std::vector{make("superalgebra_upper_block", -1, m, r1, G, 1e-7),
                           make("superalgebra_lower_block", -1, m, r2, G, 1e-7)};
    }});

    // [H^ss, Q] = 0: lower-left block prod(H^{(m+1)} - E_k) B_m = B_m prod(H - E_k).
    tasks.push_back({{"supercharge_commutation"}, [&, G] {
        const double scale = std::pow(2.0 * p.mass * c.scale_H(m + 1), m + 1) * std::pow(c.scale_A(m), m + 1);
        const double r = c.over_corpus(
            0, [&](const Operand& f) { return lower_block_product(p, m, apply_B_chain(p, m, f, op)); },
            [&](const Operand& f) { return apply_B_chain(p, m, energy_product_apply(p, 0, 0, m, f), op); }, scale);
        return std::vector{make("supercharge_commutation", -1, m, r, G, 1e-7)};
    }});

    // Explicit m = 1 closed form against the ladder route.
    tasks.push_back({{"m1_closed_form"}, [&, G] {
        const Operand ladder = EigenFunction(p, {1, n}).operand();
        const Operand closed{[&p, n](double x, int) { return Jet(0, hierarchy_eigenfunction(p, {1, n}, x, Route::explicit_m1)); }};
        return std::vector{make("m1_closed_form", n, 1, c.pointwise(ladder, closed, closed, 0.0), G, 1e-9)};
    }});

    // <A psi, phi> = <psi, A^dagger phi> on Dirichlet pairs.
    tasks.push_back({{"adjointness"}, [&, G] {
        const auto lo = test_corpus(p, m);
        const auto hi = test_corpus(p, m + 1);
        double worst = 0.0;
        for (std::size_t i : {0u, 3u, 9u})
            for (std::size_t j : {1u, 4u, 10u}) {
                const cplx l = c.mean_value(apply_A(p, m, lo[i].f, op), hi[j].f);
                const cplx r = c.mean_value(lo[i].f, apply_A_dagger(p, m, hi[j].f, op));
                worst = std::max(worst, std::abs(l - r) / std::max(std::abs(r), c.scale_A(m)));
            }
        return std::vector{make("adjointness", -1, m, worst, G, 1e-9)};
    }});

    // Potential routes and the log-derivative definition of W.
    tasks.push_back({{"potential_routes", "superpotential_log_derivative"}, [&, G] {
        double rv = 0.0, rw = 0.0;
        const EigenFunction g0(p, {m, 0});
        for (double x : c.grid) {
            const double v = potential(p, m, x);
            const double scale = std::max(std::abs(v), p.epsilon0());
            rv = std::max(rv, std::abs(potential(p, m, x, PotentialRoute::from_W) - v) / scale);
            rv = std::max(rv, std::abs(potential(p, m, x, PotentialRoute::cross_relation) - v) / scale);
            if (m >= 1) rv = std::max(rv, std::abs(potential(p, m, x, PotentialRoute::partner) - v) / scale);
            const Jet j = g0.jet(x, 1);
            const double w = superpotential(p, m, x);
            const double logd = (-p.hbar * j[1] / j[0]).real();
            rw = std::max(rw, std::abs(logd - w) / std::max(std::abs(w), c.scale_A(m)));
        }
        return std::vector{make("potential_routes", -1, m, rv, G, 1e-10),
                           make("superpotential_log_derivative", -1, m, rw, G, 1e-9)};
    }});

    return run_tasks(std::move(tasks), n, m, G);
}

std::vector<IdentityResult> verify_open_identities(const ModelParams& p, int a, int b, const VerifyOptions& opt) {
    p.validate();
    if (a < 0 || b < 0 || a == b) throw DomainError("verify_open_identities: need distinct nonnegative a, b");
    if (std::max(a, b) + 8 > p.degree_cap) throw DegreeCapError("verify_open_identities: indices exceed degree cap");
    const Checker c(p, opt);
    const int G = static_cast<int>(c.grid.size());
    const auto& op = opt.op;
    const double two_m = 2.0 * p.mass;
    const double mom = p.momentum_scale();
    const int hi = std::max(a, b), lo = std::min(a, b);
    std::vector<Task> tasks;

    // B_a B_b^dagger on level b+1: printed case assignment against the interchanged one.
    tasks.push_back({{"mixed_product_B_Bdagger"}, [&, G] {
        auto direct = [&](const Operand& f) { return apply_B_chain(p, a, apply_B_dagger_chain(p, b, f, op), op); };
        auto lambda_form = [&](const Operand& f) {
            // (2M)^{b+1} A_a ... A_{b+1} prod_{k<=b}(H^{(b+1)} - E_k); the chain is empty for a < b
            return scaled(apply_A_range(p, b + 1, a, energy_product_apply(p, b + 1, 0, b, f), op), std::pow(two_m, b + 1));
        };
        auto theta_form = [&](const Operand& f) {
            // (2M)^{a+1} prod_{k<=a}(H^{(a+1)} - E_k) A_{a+1}^dagger ... A_b^dagger; empty chain for a > b
            return scaled(energy_product_apply(p, a + 1, 0, a, apply_A_dagger_range(p, a + 1, b, f, op)), std::pow(two_m, a + 1));
        };
        const double scale = std::pow(two_m * c.scale_H(hi + 1), lo + 1) * std::pow(c.scale_A(hi), hi - lo);
        const double r_lambda = c.over_corpus(b + 1, direct, lambda_form, scale);
        const double r_theta = c.over_corpus(b + 1, direct, theta_form, scale);
        const double r_printed = a > b ? r_lambda : r_theta;
        const double r_swapped = a > b ? r_theta : r_lambda;
        const std::string match = r_printed < 1e-7 && !(r_swapped < 1e-7)   ? "printed case labels match"
                                  : r_swapped < 1e-7 && !(r_printed < 1e-7) ? "interchanged case labels match"
                                  : r_printed < 1e-7                        ? "both forms match"
                                                                            : "neither form matches";
        return std::vector{make("mixed_product_B_Bdagger", a, b, r_printed, G, 1e-7, false, "printed", match),
                           make("mixed_product_B_Bdagger", a, b, r_swapped, G, 1e-7, false, "interchanged", match)};
    }});

    // Lambda = A_hi ... A_{lo+1} (a > b) or Theta = A_{lo+1}^dagger ... A_hi^dagger (a < b):
    // X X^dagger on level lo... see the two product identities, prefactor (2M) or (2 m) with m = b.
    tasks.push_back({{"product_open"}, [&, G] {
        std::vector<IdentityResult> out;
        const int len = hi - lo;
        // The two operators of each identity act on these levels.
        const int outer = a > b ? a + 1 : a + 1;  // X X^dagger acts on level a+1
        const int inner = b + 1;                  // X^dagger X acts on level b+1
        auto xxd = [&](const Operand& f) {
            if (a > b) return apply_A_range(p, lo + 1, hi, apply_A_dagger_range(p, lo + 1, hi, f, op), op);
            return apply_A_dagger_range(p, lo + 1, hi, apply_A_range(p, lo + 1, hi, f, op), op);
        };
        auto xdx = [&](const Operand& f) {
            if (a > b) return apply_A_dagger_range(p, lo + 1, hi, apply_A_range(p, lo + 1, hi, f, op), op);
            return apply_A_range(p, lo + 1, hi, apply_A_dagger_range(p, lo + 1, hi, f, op), op);
        };
        const std::string X = a > b ? "Lambda" : "Theta";
        const double scale = std::pow(two_m * c.scale_H(hi + 1), len);
        for (const auto& [variant, pref] : {std::pair<std::string, double>{"2M", two_m}, {"2m", 2.0 * b}}) {
            const double k = std::pow(pref, len);
            const double r1 = c.over_corpus(
                outer, xxd, [&](const Operand& f) { return scaled(energy_product_apply(p, outer, lo + 1, hi, f), k); }, scale);
            const double r2 = c.over_corpus(
                inner, xdx, [&](const Operand& f) { return scaled(energy_product_apply(p, inner, lo + 1, hi, f), k); }, scale);
            out.push_back(make(X + "_" + X + "dagger_product", a, b, r1, G, 1e-7, false, variant));
            out.push_back(make(X + "dagger_" + X + "_product", a, b, r2, G, 1e-7, false, variant));
        }
        return out;
    }});

    // Mean values of X X^dagger on phi_a^{(a+1)} and X^dagger X on phi_a^{(b+1)}.
    tasks.push_back({{"mean_open"}, [&, G] {
        const std::string X = a > b ? "Lambda" : "Theta";
        const Operand s_outer = EigenFunction(p, {a + 1, a}, Route::shifted_base).operand();
        const Operand s_inner = EigenFunction(p, {b + 1, a}, Route::shifted_base).operand();
        Operand xxd, xdx;
        if (a > b) {
            xxd = apply_A_range(p, lo + 1, hi, apply_A_dagger_range(p, lo + 1, hi, s_outer, op), op);
            xdx = apply_A_dagger_range(p, lo + 1, hi, apply_A_range(p, lo + 1, hi, s_inner, op), op);
        } else {
            xxd = apply_A_dagger_range(p, lo + 1, hi, apply_A_range(p, lo + 1, hi, s_outer, op), op);
            xdx = apply_A_range(p, lo + 1, hi, apply_A_dagger_range(p, lo + 1, hi, s_inner, op), op);
        }
        const int len = hi - lo;
        double e1, e2;
        if (a > b) {
            e1 = std::pow(mom, 2 * len) * std::exp(log_gap_factor_N(p, a, a) - log_gap_factor_N(p, a, b));
            e2 = std::pow(std::pow(mom, len) * std::exp(log_gap_factor_M(p, b, a) - log_gap_factor_M(p, a, b)), 2);
        } else {
            e1 = std::pow(mom, 2 * len) * std::exp(log_gap_factor_N(p, a, b) - log_gap_factor_N(p, a, a));
            e2 = std::pow(std::pow(mom, len) * std::exp(log_gap_factor_M(p, a, b) - log_gap_factor_M(p, b, a)), 2);
        }
        const cplx v1 = c.mean_value(s_outer, xxd);
        const cplx v2 = c.mean_value(s_inner, xdx);
        return std::vector{make("mean_" + X + "_" + X + "dagger", a, b, std::abs(v1 - e1) / e1, G, 1e-8, false),
                           make("mean_" + X + "dagger_" + X, a, b, std::abs(v2 - e2) / e2, G, 1e-8, false)};
    }});

    return run_tasks(std::move(tasks), a, b, G, false);
}

}  // namespace ptsusy
