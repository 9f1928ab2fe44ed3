#include "ptsusy/spectrum.hpp"

#include <cmath>

#include "ptsusy/errors.hpp"

namespace ptsusy {

void ModelParams::validate() const {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("nu must be a finite value >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be a finite value >= 0");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive");
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive");
    if (degree_cap < 0) throw DomainError("degree cap must be nonnegative");
}

double energy(const ModelParams& p, LevelIndex idx) {
    if (idx.m < 0 || idx.n < 0) throw DomainError("energy: negative index");
    const double N = idx.n + idx.m + p.nu + 1.0;
    return p.epsilon0() * (N * N - p.beta * p.beta / (N * N));
}

namespace {

// log of prod_{k=0}^{m} (j-k+1)(j+2nu+k+3)(1 + beta^2/[(k+nu+1)(j+nu+2)]^2)
double log_gap_product(const ModelParams& p, int j, int m) {
    double s = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double a = j - k + 1.0;
        const double b = j + 2.0 * p.nu + k + 3.0;
        const double r = p.beta / ((k + p.nu + 1.0) * (j + p.nu + 2.0));
        s += std::log(a) + std::log(b) + std::log1p(r * r);
    }
    return s;
}

void check_nonneg(int n, int m) {
    if (n < 0 || m < 0) throw DomainError("gap factor: negative index");
}

}  // namespace

double log_gap_factor_M(const ModelParams& p, int n, int m) {
    check_nonneg(n, m);
    return 0.5 * log_gap_product(p, n + m, m);
}

double gap_factor_M(const ModelParams& p, int n, int m) { return std::exp(log_gap_factor_M(p, n, m)); }

double log_gap_factor_N(const ModelParams& p, int n, int m) {
    check_nonneg(n, m);
    if (m > 2 * n) throw DomainError("gap_factor_N: requires m <= 2n");
    return log_gap_product(p, 2 * n, m);
}

double gap_factor_N(const ModelParams& p, int n, int m) { return std::exp(log_gap_factor_N(p, n, m)); }

double phase_alpha(const ModelParams& p, int n) {
    return std::atan(p.beta / ((p.nu + 1.0) * (p.nu + n + 2.0)));
}

}  // namespace ptsusy
