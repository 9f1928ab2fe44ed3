#pragma once

#include <string>
#include <vector>

#include "ptsusy/jet.hpp"
#include "ptsusy/model.hpp"
#include "ptsusy/quadrature.hpp"
#include "ptsusy/specfun.hpp"

namespace ptsusy {

// W_m(x) = -(pi hbar / L) [ (nu+m+1) cot(pi x / L) - beta/(nu+m+1) ].
double superpotential(const ModelParams& p, int m, double x);
Jet superpotential_jet(const ModelParams& p, int m, double x, int order);

enum class PotentialRoute {
    closed_form,     // eps0 [ (nu+m)(nu+m+1)/sin^2 - 2 beta cot ]
    from_W,          // (W_m^2 - hbar W_m')/2M + E_0^{(m)}
    partner,         // (W_{m-1}^2 + hbar W_{m-1}')/2M + E_0^{(m-1)}, m >= 1
    cross_relation,  // V_0 - (hbar^2 m (2 nu + m + 1)/2M) (ln sin)''
};

double potential(const ModelParams& p, int m, double x, PotentialRoute route = PotentialRoute::closed_form);
Jet potential_jet(const ModelParams& p, int m, double x, int order);

struct OperatorOptions {
    double w_sign = 1.0;  // -1 flips every superpotential (negative control)
};

Operand apply_A(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o = {});
Operand apply_A_dagger(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o = {});
// B_m = A_m ... A_1 A_0 and B_m^dagger = A_0^dagger ... A_m^dagger.
Operand apply_B_chain(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o = {});
Operand apply_B_dagger_chain(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o = {});
// A_hi ... A_lo and A_lo^dagger ... A_hi^dagger for lo <= hi; identity when lo > hi.
Operand apply_A_range(const ModelParams& p, int lo, int hi, const Operand& f, const OperatorOptions& o = {});
Operand apply_A_dagger_range(const ModelParams& p, int lo, int hi, const Operand& f,
                             const OperatorOptions& o = {});

// -(hbar^2/2M) f'' + eps0 [(nu^2 + c1 nu + c0) / sin^2 - 2 beta cot] f - e f, with sin and
// cot of pi x / L. Level m has c1 = 2m + 1, c0 = m (m + 1).
Operand schrodinger_apply(const ModelParams& p, int c1, int c0, double e, const Operand& f);
// -(hbar^2/2M) f'' + V_m f.
Operand hamiltonian_apply(const ModelParams& p, int m, const Operand& f);
// (1/2M) A_m^dagger A_m f + E_0^{(m)} f.
Operand factorized_hamiltonian_apply(const ModelParams& p, int m, const Operand& f, const OperatorOptions& o = {});
// prod_{k=lo}^{hi} (H^{(level)} - E_k) f, factors applied as operators.
Operand energy_product_apply(const ModelParams& p, int level, int lo, int hi, const Operand& f);

Operand scaled(const Operand& f, cplx s);
Operand difference(const Operand& a, const Operand& b);

// Operand from plain values; derivatives by Richardson differences (order <= 4).
// Requests beyond order 4 throw DepthError.
Operand finite_difference_operand(std::function<cplx(double)> f, double h0);
inline constexpr int kMaxFiniteDifferenceOrder = 4;

struct SampledFunction {
    std::vector<double> grid;
    std::vector<cplx> values;
};

// Strictly increasing interior grid of `points` nodes, clamped to
// [1e-6 L, (1 - 1e-6) L].
std::vector<double> interior_grid(const ModelParams& p, int points);
SampledFunction sample(const Operand& f, const std::vector<double>& grid);

// max |a - b| / max(max |b|, floor).
double relative_residual(const SampledFunction& a, const SampledFunction& b, double floor = 0.0);

struct TestFunction {
    std::string name;
    Operand f;
};

// Eigenfunctions n = 0..7 of level m (shifted-base route) and four fixed
// smooth compactly supported bumps.
std::vector<TestFunction> test_corpus(const ModelParams& p, int m);

struct IdentityResult {
    std::string identity;
    std::string variant;  // empty for single-form identities
    int n = 0;
    int m = 0;
    double max_residual = 0.0;
    int grid_size = 0;
    double threshold = 0.0;
    bool mandatory = true;
    bool passed = false;
    std::string note;
};

struct VerifyOptions {
    int grid_points = 201;
    OperatorOptions op;
    quad::QuadratureConfig quad;
};

// Residual report for every identity at (n, m).
std::vector<IdentityResult> verify_operator_identities(const ModelParams& p, int n, int m,
                                                       const VerifyOptions& opt = {});

// Informational checks whose printed form is in doubt: mixed products
// B_a B_b^dagger, the Lambda/Theta norms with both prefactors, and the
// Lambda/Theta mean values.
std::vector<IdentityResult> verify_open_identities(const ModelParams& p, int a, int b,
                                                   const VerifyOptions& opt = {});

}  // namespace ptsusy
