#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fwx/mp.hpp"
#include "fwx/params.hpp"
#include "fwx/tailfit.hpp"

namespace fwx {

inline constexpr double default_tol = 1e-10;
inline constexpr long default_max_terms = 100000;

struct SeriesValue {
    mp_cplx value;
    double err = 0;
    int terms_used = 0;
};

// One index of the integer-mu expansion: the coefficients of
// (1-z)^power * log(1-z) and of (1-z)^power.
struct LogCaseCoeffs {
    long power = 0;
    mp_cplx log_coeff;
    mp_cplx regular_coeff;
};

// Per-parameter-set cache of every expansion coefficient family. Sequences
// are grown lazily and append-only: extending a table never changes entries
// already handed out. All public methods are serialized internally, so the
// object is safe to share between threads.
class Engine {
public:
    explicit Engine(ParameterSet ps);

    const ParameterSet& params() const { return ps_; }

    mp_cplx q_m(double sigma, int m);
    mp_cplx l_r(double sigma, int r);
    mp_cplx q_m_theta(double sigma, double theta, int m);
    mp_cplx l_r_theta(double sigma, double theta, int r);

    // Normalized-recursion form of V_n.
    mp_cplx v_n(double sigma, double theta, int n);
    // Independent generalized-Bernoulli form, for cross-validation.
    mp_cplx v_n_norlund(double sigma, double theta, int n);
    // Copy of V_0..V_upto (extends the cache as needed).
    std::vector<mp_cplx> v_prefix(double sigma, double theta, int upto);

    mp_cplx coeff_R(double sigma, int m);
    // Tail certification measures tol against |inner sum| + |V_0|, so exact
    // cancellations still certify.
    mp_cplx coeff_W(double sigma, int m, double tol = default_tol,
                    long max_terms = default_max_terms);
    // Arbitrary-theta variants of the same coefficients; must agree with the
    // theta = 0 forms (tested, not assumed).
    mp_cplx coeff_R_theta(double sigma, double theta, int m);
    mp_cplx coeff_W_theta(double sigma, double theta, int m, double tol = default_tol,
                          long max_terms = default_max_terms);

    // The auxiliary near-unit series: t^{theta+1} (1-t)^{mu_sigma-1}
    // sum_n V_n(theta) (1-t)^n, convergent for |1-t| < 1.
    SeriesValue h_series(double sigma, double theta, const cplx& t, double tol = default_tol,
                         long max_terms = default_max_terms);

    // Integer-mu expansion coefficients at one power of (1-z). For mu >= 0
    // the admissible indices are j >= -mu (power = mu + j); for mu < 0 they
    // are j >= mu (power = j).
    LogCaseCoeffs log_case_coeffs(double sigma, long j, double tol = default_tol,
                                  long max_terms = default_max_terms);

    // Cauchy root-test estimate of the radius of sum W_m (1-z)^m.
    double w_radius_estimate(double sigma, int mmax = 60);

    // Largest multiplicity among the slowest-decaying exponent-ladder points;
    // the (log n)^{r-1} power in the coefficient growth bound.
    int leading_multiplicity() const;

private:
    struct Table;
    Table& table(double sigma, double theta);
    void extend_l(Table& t, int upto);
    void extend_v(Table& t, int upto);
    void require_scales() const;

    ParameterSet ps_;
    mp_cplx mu_mp_;
    mp_cplx nu_mp_;
    std::map<std::pair<double, double>, std::unique_ptr<Table>> tables_;
    std::mutex guard_;
};

// Shared engine registry so evaluators and the CLI reuse coefficient tables
// for identical parameter sets.
std::shared_ptr<Engine> engine_for(const ParameterSet& ps);

} // namespace fwx
