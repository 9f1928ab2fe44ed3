#pragma once

#include <vector>

#include "ptsusy/jet.hpp"
#include "ptsusy/model.hpp"
#include "ptsusy/quadrature.hpp"
#include "ptsusy/specfun.hpp"

namespace ptsusy {

struct PhasePoint {
    double q = 0.5;  // position label in (0, L)
    double p = 0.0;  // momentum label
};

// int_0^L conj(phi_j^{(nu,beta)}) phi_j'^{(nu',beta')} exp(t x / L) dx for
// base-level eigenfunctions, from the Gamma double sum. Returned as
// exp(log_scale) * mantissa so that large |t| does not overflow.
struct ScaledValue {
    double log_scale = 0.0;
    cplx mantissa;

    cplx value() const;
};
ScaledValue exponential_moment(const ModelParams& p1, int j1, const ModelParams& p2, int j2, cplx t);

// log R_m(q) for eta = R exp(z x / hbar) phi_0^{(m)} with z = W_m(q) + i p.
double cs_normalization(const ModelParams& p, int m, double q);
// Same quantity from adaptive quadrature of exp(2 W x / hbar) |phi_0^{(m)}|^2.
double cs_normalization_quadrature(const ModelParams& p, int m, double q, const quad::QuadratureConfig& cfg = {});

// The Gamma double sum written for exp(z x / hbar) phi_m^{(nu,beta)}, the
// order-m base eigenfunction. Returns log of int exp(2 W_m(q) x / hbar) |phi_m|^2.
double excited_log_moment(const ModelParams& p, int m, double q);
double excited_log_moment_quadrature(const ModelParams& p, int m, double q, const quad::QuadratureConfig& cfg = {});

class CoherentState {
public:
    CoherentState(const ModelParams& p, int m, PhasePoint label);

    const ModelParams& params() const { return params_; }
    int m() const { return m_; }
    const PhasePoint& label() const { return label_; }
    double log_R() const { return log_R_; }
    // Eigenvalue of A_m.
    cplx z() const;

    cplx operator()(double x) const;
    Jet jet(double x, int order) const;
    Operand operand() const;

private:
    ModelParams params_;
    ModelParams ground_;  // nu shifted by m
    int m_;
    PhasePoint label_;
    double log_R_;
    double log_K0_;
};

cplx eval_cs(const CoherentState& s, double x);

// <s2|s1> = int conj(eta_2) eta_1 dx.
cplx cs_overlap(const CoherentState& s1, const CoherentState& s2);
quad::Result cs_overlap_quadrature(const CoherentState& s1, const CoherentState& s2,
                                   const quad::QuadratureConfig& cfg = {});

struct ResolutionPoint {
    double x = 0.0;
    double G = 0.0;
    double err_est = 0.0;
    double offset = 0.0;          // G - 1
    double alt_measure_G = 0.0;  // G under the alternative measure with an extra 1/(4 pi^2)
};

// G(x) = |phi_0^{(m)}(x)|^2 int_0^L dq R_m(q)^2 exp(2 W_m(q) x / hbar), the
// diagonal of the phase-space integral with measure dq dp / (2 pi hbar)
// after the p-integral is done by Parseval. The q-integral runs over
// u = cot(pi q / L).
ResolutionPoint resolution_kernel(const ModelParams& p, int m, double x, const quad::QuadratureConfig& cfg = {});

// int dx conj(phi_i^{(m)}) phi_j^{(m)} G(x) for i, j = 0..nmax.
std::vector<std::vector<cplx>> resolution_gram(const ModelParams& p, int m, int nmax,
                                               const quad::QuadratureConfig& cfg = {});

// int_0^1 sin^{2 delta + 2}(pi x) exp(z x) dx in closed form; delta > -3/2.
cplx master_integral(double delta, cplx z);
quad::Result master_integral_quadrature(double delta, cplx z, const quad::QuadratureConfig& cfg = {});

// int_R exp(-i t u) / (2 pi cosh^{2 delta + 2} u) du.
cplx cosh_fourier_pair(double delta, double t);
quad::Result cosh_fourier_pair_quadrature(double delta, double t, const quad::QuadratureConfig& cfg = {});

}  // namespace ptsusy
