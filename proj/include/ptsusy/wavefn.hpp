#pragma once

#include <memory>

#include "ptsusy/jet.hpp"
#include "ptsusy/model.hpp"
#include "ptsusy/specfun.hpp"

namespace ptsusy {

struct NormalizationData {
    double log_K = 0.0;
    double O_value = 0.0;  // the conjugate double sum, real and positive
    double log_O = 0.0;
    double T_value = 0.0;
    double O_imag_ratio = 0.0;  // |Im O| / |Re O| before discarding Im O
    double O_digits = 0.0;      // significant digits left after cancellation

    double K() const;
};

// K_n from T, O and the exponential prefactor. Throws DegreeCapError and
// LossOfSignificanceError.
NormalizationData normalization_K(const ModelParams& p, int n);

// Normalized base-level eigenfunction; phase fixed so that phi > 0 just right of 0.
cplx eval_eigenfunction(const ModelParams& p, int n, double x);
cplx eval_eigenfunction_derivative(const ModelParams& p, int n, double x);
Jet eigenfunction_jet(const ModelParams& p, int n, double x, int order);
// Unit-modulus constant multiplying the unnormalized formula.
cplx eigenfunction_phase(const ModelParams& p, int n);

enum class Route {
    ladder,        // A_{m-1} ... A_0 phi_{n+m}, normalized
    shifted_base,  // (-1)^m phi_n with nu -> nu + m
    explicit_m1,   // closed form for m = 1 (values only)
};

cplx hierarchy_eigenfunction(const ModelParams& p, LevelIndex idx, double x, Route route = Route::ladder);
Jet hierarchy_eigenfunction_jet(const ModelParams& p, LevelIndex idx, double x, int order,
                                Route route = Route::ladder);

// A_0 phi_{n+1} written with cos(pi x / L - alpha(n)), as derived for the m = 1 level.
cplx ladder_closed_form_A0(const ModelParams& p, int n, double x);

class EigenFunction {
public:
    EigenFunction(const ModelParams& p, LevelIndex idx, Route route = Route::ladder);

    const ModelParams& params() const { return params_; }
    LevelIndex index() const { return idx_; }
    Route route() const { return route_; }
    double log_norm() const { return log_norm_; }
    cplx phase() const { return phase_; }
    double energy() const;

    cplx operator()(double x) const;
    cplx derivative(double x) const;
    Jet jet(double x, int order) const;
    Operand operand() const;

private:
    ModelParams params_;
    LevelIndex idx_;
    Route route_;
    double log_norm_;
    cplx phase_;
};

}  // namespace ptsusy
