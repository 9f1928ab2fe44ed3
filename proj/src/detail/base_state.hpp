#pragma once

// Shared per-(parameters, n) data of a base-level eigenfunction.

#include <memory>
#include <vector>

#include "detail/wide.hpp"
#include "ptsusy/model.hpp"
#include "ptsusy/specfun.hpp"
#include "ptsusy/wavefn.hpp"

namespace ptsusy::detail {

struct BaseState {
    ModelParams params;
    int n = 0;
    double N = 0.0;  // n + nu + 1
    double b = 0.0;  // beta / N
    specfun::JacobiParams jacobi;
    std::vector<WComplex> coeffs;  // P_n in w = (1 - z)/2
    NormalizationData norm;
    cplx phase;
};

// Cached, thread-safe.
std::shared_ptr<const BaseState> base_state(const ModelParams& p, int n);

// P_n(z) in binary128, rounded.
cplx eval_poly(const BaseState& s, cplx z);

}  // namespace ptsusy::detail
