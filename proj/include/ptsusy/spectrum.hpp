#pragma once

#include "ptsusy/model.hpp"

namespace ptsusy {

// E_n^{(m)} = eps0 [ (n+m+nu+1)^2 - beta^2/(n+m+nu+1)^2 ].
double energy(const ModelParams& p, LevelIndex idx);
// Base-level shorthand E_n = E_n^{(0)}.
inline double energy(const ModelParams& p, int n) { return energy(p, LevelIndex{0, n}); }

// M(n, m; nu, beta) from the product over k = 0..m, accumulated in logs.
double gap_factor_M(const ModelParams& p, int n, int m);
double log_gap_factor_M(const ModelParams& p, int n, int m);

// N(n, m; nu, beta); N(n, n) = M(n, n)^2.
double gap_factor_N(const ModelParams& p, int n, int m);
double log_gap_factor_N(const ModelParams& p, int n, int m);

// alpha_{nu,beta}(n) = arctan(beta / ((nu+1)(nu+n+2))).
double phase_alpha(const ModelParams& p, int n);

}  // namespace ptsusy
