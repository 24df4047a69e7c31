#pragma once

#include <vector>

#include "fwx/mp.hpp"
#include "fwx/params.hpp"

namespace fwx {

// Remainder-model basis function psi(N) = phase^N * N^(-exponent) * log(N)^logpow.
struct BasisTerm {
    mp_cplx exponent;
    int logpow = 0;
};

struct TailFitResult {
    mp_cplx sum;
    double err = 0;
    int terms_used = 0;
};

// Exponent ladder of the expansion coefficients: the points a_k/A_k stepped
// by 1/A_k, refined by unit shifts, shifted by `weight_power`, merged with
// multiplicity (near-coincident exponents get log factors). Returns the
// `count` slowest-decaying entries.
std::vector<BasisTerm> pole_ladder_basis(const ParameterSet& ps, double weight_power, int count);

// Same construction from explicit base exponents (exponent, multiplicity).
std::vector<BasisTerm> ladder_basis_from(const std::vector<std::pair<cplx, int>>& base,
                                         double weight_power, int count);

// Sums t_0 + t_1 + ... to infinity given the computed prefix t_0..t_N, by
// fitting the remainder after the partial sums at collocation points in
// [N/2, N] to the prescribed basis. The terms must follow the model
// t_n ~ phase^n * n^{-gamma_i-1} asymptotically; the fit is solved in
// 50-digit precision because neighboring exponents make the design matrix
// ill-conditioned.
TailFitResult tail_fit_sum(const std::vector<mp_cplx>& terms,
                           const std::vector<BasisTerm>& basis,
                           const mp_cplx& phase = mp_cplx(1));

// Plain partial sum with the last-term heuristic, for tails that are already
// geometric; shares the result shape with tail_fit_sum.
TailFitResult direct_sum(const std::vector<mp_cplx>& terms);

} // namespace fwx
