#pragma once

// Exact operator algebra on F(theta) = sin^sigma(theta) e^{-c theta} R(u), with
// R a Laurent polynomial in u = e^{i theta} and theta = pi x / L. Every
// eigenfunction of the hierarchy has this form, and A_j, A_j^dagger and H^{(j)}
// map the class into itself.

#include <memory>
#include <vector>

#include "detail/wide.hpp"
#include "ptsusy/jet.hpp"
#include "ptsusy/model.hpp"

namespace ptsusy::detail {

struct TrigForm {
    double L = 1.0;
    wreal sigma = 0;
    wreal c = 0;
    int lo = 0;  // exponent of a[0]
    std::vector<WComplex> a;
};

using FormPtr = std::shared_ptr<const TrigForm>;

// phi_n of the base level, normalization and phase included.
TrigForm base_form(const ModelParams& p, int n);

TrigForm form_scaled(const TrigForm& f, const WComplex& s);

// Same L and c, sigma differing by an integer.
bool form_compatible(const TrigForm& f, const TrigForm& g);
// wf f + wg g; requires form_compatible.
TrigForm form_sum(const TrigForm& f, const WComplex& wf, const TrigForm& g, const WComplex& wg);

// alpha dF/dtheta + (beta cot + gamma) F
TrigForm form_first_order(const TrigForm& f, const WComplex& alpha, const WComplex& beta, const WComplex& gamma);
// alpha d^2F/dtheta^2 + (p / sin^2 + q cot + r) F
TrigForm form_second_order(const TrigForm& f, const WComplex& alpha, const WComplex& p, const WComplex& q,
                           const WComplex& r);

// Divides R by sin(theta) while it vanishes at u = +-1 to working precision.
void reduce(TrigForm& f);

std::complex<double> form_value(const TrigForm& f, double x);
Jet form_jet(const TrigForm& f, double x, int order);

Operand form_operand(FormPtr f);

}  // namespace ptsusy::detail
