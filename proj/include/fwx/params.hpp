#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fwx/mp.hpp"

namespace fwx {

// Scalars derived from a validated parameter set. `delta` is the balance
// sum(B)-sum(A), `rho` the radius of convergence, `mu` the singularity
// exponent, `nu` the leading-coefficient constant and `alpha` the decay rate
// min Re(a_k/A_k) controlling every tail in the expansions.
struct DerivedScalars {
    double delta = 0;
    double rho = 0;
    cplx mu;
    cplx nu;
    double alpha = 0;
};

class ParameterSet {
public:
    // Validates shapes, the balance condition delta = -1 (tolerance 1e-12)
    // and alpha > 0. Scales below 1/6 are accepted here; the expansions that
    // need them larger check at call time.
    ParameterSet(std::vector<cplx> a, std::vector<double> A,
                 std::vector<cplx> b, std::vector<double> B);

    const std::vector<cplx>& a() const { return a_; }
    const std::vector<double>& A() const { return A_; }
    const std::vector<cplx>& b() const { return b_; }
    const std::vector<double>& B() const { return B_; }
    std::size_t p() const { return a_.size(); }
    std::size_t q() const { return b_.size(); }

    const DerivedScalars& derived() const { return derived_; }
    double rho() const { return derived_.rho; }
    cplx mu() const { return derived_.mu; }
    cplx nu() const { return derived_.nu; }
    double alpha() const { return derived_.alpha; }

    bool all_real() const { return all_real_; }
    bool scales_above_sixth() const { return scales_above_sixth_; }

    // mu is treated as an integer when within 1e-8 of one; between 1e-8 and
    // 1e-4 evaluations attach a cancellation warning.
    bool mu_is_integer() const;
    long mu_integer_value() const;
    bool mu_near_integer_warning() const;

    // Stable identity for caching coefficient tables.
    const std::string& cache_key() const { return key_; }

private:
    std::vector<cplx> a_;
    std::vector<double> A_;
    std::vector<cplx> b_;
    std::vector<double> B_;
    DerivedScalars derived_;
    bool all_real_ = false;
    bool scales_above_sixth_ = false;
    std::string key_;
};

double radius_rho(const ParameterSet& ps);
cplx mu(const ParameterSet& ps);
cplx mu_sigma(const ParameterSet& ps, double sigma);
cplx nu_constant(const ParameterSet& ps);

// Returns `requested` when it is positive and keeps Re(mu)+sigma > 0,
// otherwise the default max(1, ceil(-Re mu)+1). A bad request throws.
double choose_sigma(const ParameterSet& ps, std::optional<double> requested);

// Complex literal of the form [-]ddd[.ddd][(+|-)ddd[.ddd]i], no spaces.
cplx parse_complex_literal(const std::string& text);
std::string format_complex_literal(const cplx& z);

// Comma-separated lists of the above.
std::vector<cplx> parse_complex_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

} // namespace fwx
