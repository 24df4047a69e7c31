#pragma once

#include <optional>
#include <string>

#include "fwx/engine.hpp"
#include "fwx/params.hpp"

namespace fwx {

enum class Rep { maclaurin, residue, singular, singular_log, at_rho };

// Stable tag strings used in CLI output: "maclaurin", "residue", "singular",
// "singular-log", "at-rho".
std::string rep_name(Rep rep);

struct EvalResult {
    cplx value;
    Rep representation = Rep::maclaurin;
    int terms_used = 0;
    double err_estimate = 0;
    // Empty unless the evaluation crossed a numerically delicate regime
    // (currently: mu within 1e-4 of an integer on the two-series path).
    std::string warning;
};

// Jump and average of the function across the branch cut at a point x > rho.
// For real parameter vectors the jump is purely imaginary and the average
// purely real; both are computed from manifestly real sums so the other
// component is exactly zero.
struct CutValues {
    double x = 0;
    cplx jump;
    cplx average;
};

// Power series at the origin; z is the plain (unscaled) argument. Valid for
// |z| < rho, and on |z| = rho when Re mu > 0. Near the rim the tail is summed
// by remainder fitting instead of term accumulation.
EvalResult eval_maclaurin(const ParameterSet& ps, const cplx& z, double tol = default_tol,
                          long max_terms = default_max_terms);

// Exterior expansion over the gamma-pole ladders; z unscaled, |z| > rho
// (boundary included when Re mu > 0), z off the cut, all exponents simple.
EvalResult eval_residue_series(const ParameterSet& ps, const cplx& z, double tol = default_tol,
                               long max_terms = default_max_terms);

// Expansion around the singular point. `w` is the scaled argument: the result
// approximates the function at rho*w, for |1-w| < 1/2 and w off [1, inf).
// Non-integer mu uses the two-series (power plus regular) form; integer mu
// the logarithmic form, tagged singular-log.
EvalResult eval_singular_expansion(const ParameterSet& ps, const cplx& w,
                                   std::optional<double> sigma = std::nullopt,
                                   double tol = default_tol, long max_terms = default_max_terms);

// Value exactly at z = rho via the sigma-weighted coefficient sum.
EvalResult eval_at_rho(const ParameterSet& ps, std::optional<double> sigma = std::nullopt,
                       double tol = default_tol, long max_terms = default_max_terms);

// Region dispatch on the unscaled argument: singular expansion when
// |1 - z/rho| < 0.4, Maclaurin when |z| < 0.95 rho, residue series when
// |z| > 1.05 rho; in the leftover band every applicable representation is
// evaluated and the two best are averaged, with their disagreement folded
// into the error estimate.
EvalResult eval_auto(const ParameterSet& ps, const cplx& z, double tol = default_tol,
                     long max_terms = default_max_terms,
                     std::optional<double> sigma = std::nullopt);

cplx jump_on_cut(const ParameterSet& ps, double x, double tol = default_tol,
                 long max_terms = default_max_terms);
cplx average_on_cut(const ParameterSet& ps, double x, double tol = default_tol,
                    long max_terms = default_max_terms);
CutValues cut_values(const ParameterSet& ps, double x, double tol = default_tol,
                     long max_terms = default_max_terms);

} // namespace fwx
