#pragma once

#include <complex>
#include <vector>

namespace ptsusy {

using cplx = std::complex<double>;

namespace specfun {

inline constexpr int kJacobiDegreeCap = 40;

// Principal branch of log Gamma(z); imaginary part in (-pi, pi].
// Throws PoleError for z in {0, -1, -2, ...}.
cplx log_gamma(cplx z);

// (a)_k = a (a+1) ... (a+k-1), formed as a product.
cplx pochhammer(cplx a, int k);
// Two-symbol shorthand (a, b)_k = (a)_k (b)_k.
cplx pochhammer(cplx a, cplx b, int k);

struct JacobiParams {
    int degree = 0;
    cplx alpha;
    cplx beta;
};

// P_n^{(alpha,beta)}(z) from the terminating hypergeometric sum.
cplx jacobi_poly(const JacobiParams& p, cplx z, int degree_cap = kJacobiDegreeCap);

// dP_n^{(alpha,beta)}/dz = ((n+alpha+beta+1)/2) P_{n-1}^{(alpha+1,beta+1)}(z).
cplx jacobi_poly_derivative(const JacobiParams& p, cplx z, int degree_cap = kJacobiDegreeCap);

// Taylor coefficients P^{(j)}(z0)/j! for j = 0..order.
std::vector<cplx> jacobi_taylor(const JacobiParams& p, cplx z0, int order,
                                int degree_cap = kJacobiDegreeCap);

}  // namespace specfun
}  // namespace ptsusy
