#pragma once

#include <cstddef>
#include <vector>

#include "fwx/mp.hpp"

// Exact combinatorial kernels: Bernoulli numbers and polynomials, generalized
// Bernoulli (Norlund) polynomials, signless non-central Stirling numbers of
// the first kind, complete Bell polynomials, and the determinant form of the
// logarithmic recursion coefficients.

namespace fwx {

// B_0..B_n as exact rationals (B_1 = -1/2).
const std::vector<mp_rational>& bernoulli_numbers(std::size_t n);

// Classical Bernoulli polynomial at a complex point: exact rational
// coefficients through order 64, floating 50-digit coefficients above.
mp_cplx bernoulli_polynomial(std::size_t m, const mp_cplx& x);
cplx bernoulli_polynomial(std::size_t m, const cplx& x);

// k! [t^k] (t/(e^t-1))^sigma e^{xt}.
mp_cplx norlund_polynomial(std::size_t k, const mp_cplx& sigma, const mp_cplx& x);
cplx norlund_polynomial(std::size_t k, const cplx& sigma, const cplx& x);

// Coefficient of x^l in prod_{j=0}^{n-1} (x + sigma + j).
mp_cplx noncentral_stirling_first(const mp_cplx& sigma, std::size_t n, std::size_t l);
cplx noncentral_stirling_first(const cplx& sigma, std::size_t n, std::size_t l);

// Equivalent closed form binom(-l-1, n-l) * B^{(n+1)}_{n-l}(1-sigma), with the
// binomial taken through rising factorials. Exposed for cross-validation.
mp_cplx noncentral_stirling_first_nb(const mp_cplx& sigma, std::size_t n, std::size_t l);

// Complete Bell polynomial Y_n(x_1..x_n); `x` holds x_1..x_n. The default
// route goes through exponentiating the generating function.
mp_cplx bell_complete(const std::vector<mp_cplx>& x);
cplx bell_complete(const std::vector<cplx>& x);
// Explicit partition-sum route, kept separate so the two can be compared.
mp_cplx bell_complete_partitions(const std::vector<mp_cplx>& x);

// det(Omega_r)/r! for the lower-Hessenberg matrix built from q_1..q_r; equals
// the r-th coefficient of exp(sum q_m t^m / m).
mp_cplx nair_determinant(const std::vector<mp_cplx>& q, std::size_t r);
cplx nair_determinant(const std::vector<cplx>& q, std::size_t r);

} // namespace fwx
