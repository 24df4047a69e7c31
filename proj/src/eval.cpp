#include "fwx/eval.hpp"

#include <algorithm>
#include <boost/math/special_functions/sin_pi.hpp>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "fwx/errors.hpp"
#include "fwx/special.hpp"
#include "fwx/tailfit.hpp"

namespace fwx {

namespace {

// Relative half-width of the shell treated as |z| = rho exactly.
constexpr double boundary_band = 1e-12;
// |z|/rho above which the Maclaurin sum switches to remainder fitting.
constexpr double accel_ratio = 0.9;
// Rounding floor attached to every double-precision result.
constexpr double double_floor = 1e-15;
// Deepest coefficient table the remainder fits will request.
constexpr long fit_table_cap = 1920;

double cmag(const mp_cplx& z) { return to_double(abs(z)); }

std::string num_str(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Geometric tail bound driven by the largest of the last three term-to-term
// magnitude ratios. Exact-zero terms keep the previous state.
class TailGauge {
public:
    void push(double mag)
    {
        if (mag <= 0) return;
        if (last_ > 0) {
            ratios_[slot_ % 3] = mag / last_;
            ++slot_;
        }
        last_ = mag;
    }

    double bound() const
    {
        if (slot_ < 3 || last_ <= 0) return -1;
        double r = std::max({ratios_[0], ratios_[1], ratios_[2]});
        if (r >= 1) return -1;
        return last_ * r / (1 - r);
    }

private:
    double last_ = 0;
    double ratios_[3] = {0, 0, 0};
    int slot_ = 0;
};

mp_cplx mu_mp_of(const ParameterSet& ps)
{
    mp_cplx m = mp_cplx(mp_real(int(ps.p()) - int(ps.q()) - 1)) / 2;
    for (const auto& b : ps.b()) m += to_mp(b);
    for (const auto& a : ps.a()) m -= to_mp(a);
    return m;
}

bool on_cut(const ParameterSet& ps, const cplx& z)
{
    return z.imag() == 0.0 && z.real() >= ps.rho() * (1 - boundary_band);
}

// The exterior expansion and the cut formulas need all exponents
// (a_k + n)/A_k distinct across parameter slots.
void require_simple_exponents(const ParameterSet& ps)
{
    constexpr double coincide_tol = 1e-9;
    constexpr long scan_depth = 64;
    const auto& a = ps.a();
    const auto& A = ps.A();
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t i = k + 1; i < a.size(); ++i) {
            for (long n = 0; n < scan_depth; ++n) {
                cplx u = (a[k] + double(n)) / A[k];
                double m = std::round((u * A[i] - a[i]).real());
                if (m < 0) continue;
                cplx other = (a[i] + m) / A[i];
                if (std::abs(u - other) < coincide_tol)
                    throw PoleCollisionError(
                        "exponents (a_k+n)/A_k coincide within 1e-9 for slots " +
                        std::to_string(k) + " and " + std::to_string(i) +
                        "; the simple-pole exterior expansion does not apply");
            }
        }
    }
}

// log Gamma of a real argument together with the sign of Gamma itself.
// Negative non-integer arguments go through the reflection formula.
mp_real signed_log_gamma(const mp_real& x, int& sign)
{
    if (x > 0) {
        sign = 1;
        return log_gamma(mp_cplx(x)).real();
    }
    mp_real s = boost::math::sin_pi(x);
    sign = s > 0 ? 1 : -1;
    using boost::math::constants::pi;
    return log(pi<mp_real>()) - log(abs(s)) - log_gamma(mp_cplx(1 - x)).real();
}

bool near_gamma_pole(const mp_real& x)
{
    return detail::near_nonpositive_integer(mp_cplx(x));
}

bool near_gamma_pole(const mp_cplx& z) { return detail::near_nonpositive_integer(z); }

struct MaclaurinTerms {
    std::vector<mp_cplx> terms;
    mp_cplx log_z;
    mp_real log_fact{0};
    long next = 0;

    void extend(const ParameterSet& ps, long upto)
    {
        terms.reserve(upto);
        for (long n = next; n < upto; ++n) {
            if (n > 0) log_fact += log(mp_real(n));
            bool zero = false;
            for (std::size_t j = 0; j < ps.q() && !zero; ++j)
                if (detail::near_nonpositive_integer(to_mp(ps.b()[j]) + mp_real(ps.B()[j]) * n))
                    zero = true;
            if (zero) {
                terms.push_back(mp_cplx(0));
                continue;
            }
            mp_cplx lt = mp_real(n) * log_z - log_fact;
            for (std::size_t k = 0; k < ps.p(); ++k)
                lt += log_gamma(to_mp(ps.a()[k]) + mp_real(ps.A()[k]) * n);
            for (std::size_t j = 0; j < ps.q(); ++j)
                lt -= log_gamma(to_mp(ps.b()[j]) + mp_real(ps.B()[j]) * n);
            terms.push_back(exp(lt));
        }
        next = std::max(next, upto);
    }
};

EvalResult maclaurin_direct(const ParameterSet& ps, const cplx& z, double tol, long max_terms)
{
    EvalResult out;
    out.representation = Rep::maclaurin;
    MaclaurinTerms gen;
    gen.log_z = log(to_mp(z));
    mp_cplx acc(0);
    TailGauge gauge;
    double unit = 0;
    for (long n = 0; n < max_terms; ++n) {
        gen.extend(ps, n + 1);
        const mp_cplx& t = gen.terms[n];
        acc += t;
        double mag = cmag(t);
        if (n == 0) unit = mag;
        gauge.push(mag);
        double b = gauge.bound();
        if (n >= 8 && b >= 0 && b <= tol * (cmag(acc) + unit)) {
            out.value = to_cplx(acc);
            out.terms_used = int(n + 1);
            out.err_estimate = b + double_floor * std::abs(out.value);
            return out;
        }
    }
    throw ToleranceError("maclaurin sum did not certify tolerance " + num_str(tol) +
                         " within " + std::to_string(max_terms) + " terms");
}

EvalResult maclaurin_rim(const ParameterSet& ps, const cplx& z, double tol, long max_terms)
{
    EvalResult out;
    out.representation = Rep::maclaurin;
    MaclaurinTerms gen;
    gen.log_z = log(to_mp(z));
    mp_cplx phase = to_mp(z) / mp_real(ps.rho());
    long cap = std::clamp<long>(max_terms, 240, fit_table_cap);

    // The tail model is an asymptotic ladder in 1/(n log(1/phase)); it only
    // represents the remainder once n |log phase| is well past one.  Closer to
    // the branch point the fit can look self-consistent while its extrapolated
    // sum is wrong, so refuse outright instead of trusting the residual.
    double u_abs = to_double(abs(log(phase)));
    long n_floor = (u_abs > 0) ? long(std::ceil(12.0 / u_abs)) : cap + 1;
    if (n_floor > cap)
        throw ToleranceError("the rim acceleration is unreliable this close to the branch "
                             "point; use the singular expansion (or the at-rho summation "
                             "at z = rho)");

    auto basis = ladder_basis_from({{ps.mu() + 1.0, 1}}, 1.0, 14);
    TailFitResult fit;
    double err = 0;
    for (long n_terms = 240;; n_terms = std::min(n_terms * 2, cap)) {
        if (n_terms >= n_floor) {
            gen.extend(ps, n_terms);
            fit = tail_fit_sum(gen.terms, basis, phase);
            err = fit.err;
            double unit = cmag(gen.terms[0]);
            if (err <= tol * (cmag(fit.sum) + unit)) {
                out.value = to_cplx(fit.sum);
                out.terms_used = fit.terms_used;
                out.err_estimate = err + double_floor * std::abs(out.value);
                return out;
            }
        }
        if (n_terms >= cap) break;
    }
    throw ToleranceError("maclaurin rim acceleration did not certify tolerance " +
                         num_str(tol) + "; error gauge " + num_str(err));
}

// Collects candidate evaluations for the near-circle band of eval_auto.
struct Candidate {
    EvalResult result;
    bool ok = false;
    std::string error;
};

template <class F> Candidate try_eval(F&& f)
{
    Candidate c;
    try {
        c.result = f();
        c.ok = true;
    } catch (const Error& e) {
        c.error = e.what();
    }
    return c;
}

} // namespace

std::string rep_name(Rep rep)
{
    switch (rep) {
    case Rep::maclaurin: return "maclaurin";
    case Rep::residue: return "residue";
    case Rep::singular: return "singular";
    case Rep::singular_log: return "singular-log";
    case Rep::at_rho: return "at-rho";
    }
    return "unknown";
}

EvalResult eval_maclaurin(const ParameterSet& ps, const cplx& z, double tol, long max_terms)
{
    double rho = ps.rho();
    double r = std::abs(z);
    if (r > rho * (1 + boundary_band))
        throw DomainError("maclaurin series requires |z| <= rho = " + num_str(rho));
    bool rim = r >= rho * (1 - boundary_band);
    if (rim && ps.mu().real() <= 0)
        throw DomainError("|z| = rho lies outside the region of absolute convergence "
                          "unless Re mu > 0");
    if (z == cplx(0)) {
        EvalResult out;
        out.representation = Rep::maclaurin;
        out.terms_used = 1;
        bool zero = false;
        for (const auto& b : ps.b())
            if (detail::near_nonpositive_integer(to_mp(b))) zero = true;
        if (!zero) {
            mp_cplx lt(0);
            for (const auto& a : ps.a()) lt += log_gamma(to_mp(a));
            for (const auto& b : ps.b()) lt -= log_gamma(to_mp(b));
            out.value = to_cplx(exp(lt));
        }
        out.err_estimate = double_floor * std::abs(out.value);
        return out;
    }
    if (r < accel_ratio * rho) return maclaurin_direct(ps, z, tol, max_terms);
    return maclaurin_rim(ps, z, tol, max_terms);
}

EvalResult eval_residue_series(const ParameterSet& ps, const cplx& z, double tol, long max_terms)
{
    double rho = ps.rho();
    double r = std::abs(z);
    if (on_cut(ps, z))
        throw CutError("z = " + format_complex_literal(z) + " lies on the branch cut [rho, inf)");
    if (r < rho * (1 - boundary_band))
        throw DomainError("exterior expansion requires |z| >= rho = " + num_str(rho));
    bool rim = r <= rho * (1 + boundary_band);
    if (rim && ps.mu().real() <= 0)
        throw DomainError("|z| = rho lies outside the region of absolute convergence "
                          "unless Re mu > 0");
    require_simple_exponents(ps);

    long per_family = std::max<long>(64, max_terms / long(ps.a().size()));
    if (rim)
        throw ToleranceError("the exterior expansion decays only polynomially on |z| = rho "
                             "and its direct sum cannot certify a tolerance there");
    double a_max = *std::max_element(ps.A().begin(), ps.A().end());
    double need = a_max * (-std::log(tol)) / std::log(r / rho);
    if (need > 3.0 * double(per_family))
        throw ToleranceError("the exterior expansion at |z|/rho = " + num_str(r / rho) +
                             " needs roughly " + std::to_string(long(need)) +
                             " terms per family; raise the term budget or move z outward");

    const auto& a = ps.a();
    const auto& A = ps.A();
    const auto& b = ps.b();
    const auto& B = ps.B();
    mp_cplx log_minus_z = log(-to_mp(z));

    EvalResult out;
    out.representation = Rep::residue;
    mp_cplx acc(0);
    double unit = 0;
    double err = 0;
    long total = 0;

    for (std::size_t k = 0; k < a.size(); ++k) {
        TailGauge gauge;
        mp_real log_fact(0);
        bool closed = false;
        for (long n = 0; n < per_family; ++n) {
            if (n > 0) log_fact += log(mp_real(n));
            mp_cplx u = (to_mp(a[k]) + mp_real(n)) / mp_real(A[k]);
            bool zero_term = false;
            for (std::size_t j = 0; j < b.size() && !zero_term; ++j)
                if (near_gamma_pole(to_mp(b[j]) - mp_real(B[j]) * u)) zero_term = true;
            if (zero_term) {
                ++total;
                continue;
            }
            mp_cplx lt = log_gamma(u) - u * log_minus_z - log_fact - log(mp_real(A[k]));
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i == k) continue;
                mp_cplx arg = to_mp(a[i]) - mp_real(A[i]) * u;
                if (near_gamma_pole(arg))
                    throw PoleCollisionError("exterior expansion hit a shared gamma pole at "
                                             "exponent index " + std::to_string(n));
                lt += log_gamma(arg);
            }
            for (std::size_t j = 0; j < b.size(); ++j)
                lt -= log_gamma(to_mp(b[j]) - mp_real(B[j]) * u);
            mp_cplx term = exp(lt);
            if (n % 2 == 1) term = -term;
            acc += term;
            ++total;
            double mag = cmag(term);
            if (unit == 0) unit = mag;
            gauge.push(mag);
            double bd = gauge.bound();
            if (n >= 8 && bd >= 0 && bd <= tol * (cmag(acc) + unit) / double(a.size())) {
                err += bd;
                closed = true;
                break;
            }
        }
        if (!closed)
            throw ToleranceError("exterior expansion family " + std::to_string(k) +
                                 " did not certify tolerance " + num_str(tol));
    }
    out.value = to_cplx(acc);
    out.terms_used = int(total);
    out.err_estimate = err + double_floor * std::abs(out.value);
    return out;
}

EvalResult eval_singular_expansion(const ParameterSet& ps, const cplx& w,
                                   std::optional<double> sigma_req, double tol, long max_terms)
{
    if (!ps.scales_above_sixth())
        throw ScaleError("the singular expansion needs every scale above 1/6");
    cplx d = 1.0 - w;
    if (std::abs(d) >= 0.5)
        throw DomainError("singular expansion requires |1 - z| < 1/2 in the scaled variable");
    if (w.imag() == 0.0 && w.real() >= 1.0)
        throw CutError("scaled argument " + format_complex_literal(w) +
                       " lies on the branch cut [1, inf)");
    double sigma = choose_sigma(ps, sigma_req);
    auto eng = engine_for(ps);
    mp_cplx dm = to_mp(d);
    mp_cplx log_d = log(dm);

    EvalResult out;
    mp_cplx acc(0);
    double coeff_mass = 0;
    TailGauge gauge;
    int small_run = 0;
    long used = 0;
    bool closed = false;

    if (ps.mu_is_integer()) {
        out.representation = Rep::singular_log;
        long mu_int = ps.mu_integer_value();
        long j0 = mu_int >= 0 ? -mu_int : mu_int;
        constexpr long j_cap = 120;
        for (long j = j0; j < j0 + j_cap; ++j) {
            LogCaseCoeffs lc = eng->log_case_coeffs(sigma, j, tol, max_terms);
            mp_cplx pw = exp(mp_real(lc.power) * log_d);
            mp_cplx term = (lc.regular_coeff + lc.log_coeff * log_d) * pw;
            acc += term;
            ++used;
            double mag = cmag(term);
            coeff_mass += mag;
            gauge.push(mag);
            small_run = mag <= tol * cmag(acc) ? small_run + 1 : 0;
            if (j - j0 >= 8 && small_run >= 3) {
                closed = true;
                break;
            }
        }
    } else {
        out.representation = Rep::singular;
        if (ps.mu_near_integer_warning())
            out.warning = "mu is within 1e-4 of an integer; the two-series form loses "
                          "accuracy to sin(pi mu) cancellation";
        mp_cplx mu = mu_mp_of(ps);
        mp_cplx d_mu = exp(mu * log_d);
        mp_cplx d_pow(1);
        constexpr long m_cap = 200;
        for (long m = 0; m < m_cap; ++m) {
            mp_cplx term = eng->coeff_R(sigma, int(m)) * d_mu * d_pow +
                           eng->coeff_W(sigma, int(m), tol, max_terms) * d_pow;
            acc += term;
            d_pow *= dm;
            ++used;
            double mag = cmag(term);
            coeff_mass += mag;
            gauge.push(mag);
            small_run = mag <= tol * cmag(acc) ? small_run + 1 : 0;
            if (m >= 8 && small_run >= 3) {
                closed = true;
                break;
            }
        }
    }
    if (!closed)
        throw ToleranceError("singular expansion did not reach tolerance " + num_str(tol) +
                             " at |1-z| = " + num_str(std::abs(d)));
    out.value = to_cplx(acc);
    out.terms_used = int(used);
    double tail = std::max(gauge.bound(), 0.0);
    out.err_estimate = tail + tol * coeff_mass + double_floor * std::abs(out.value);
    return out;
}

EvalResult eval_at_rho(const ParameterSet& ps, std::optional<double> sigma_req, double tol,
                       long max_terms)
{
    if (!ps.scales_above_sixth())
        throw ScaleError("the at-rho summation needs every scale above 1/6");
    cplx mu = ps.mu();
    if (std::abs(mu.imag()) <= 1e-12) {
        double nearest = std::round(mu.real());
        if (nearest <= 0 && std::abs(mu.real() - nearest) <= 1e-12)
            throw IntegerMuError("the at-rho sum has a pole at non-positive integer mu");
    }
    double sigma = choose_sigma(ps, sigma_req);
    auto eng = engine_for(ps);
    mp_cplx mu_hi = mu_mp_of(ps);
    auto basis = pole_ladder_basis(ps, 1.0, 16);
    long cap = std::clamp<long>(max_terms, 144, fit_table_cap);
    TailFitResult fit;
    double unit = 0;
    for (long n_terms = 144;; n_terms = std::min(n_terms * 2, cap)) {
        auto v = eng->v_prefix(sigma, 0.0, int(n_terms - 1));
        std::vector<mp_cplx> terms(v.size());
        for (std::size_t n = 0; n < v.size(); ++n) terms[n] = v[n] / (mu_hi + mp_real(double(n)));
        unit = cmag(terms[0]);
        fit = tail_fit_sum(terms, basis);
        if (fit.err <= tol * (cmag(fit.sum) + unit)) {
            mp_cplx value = gamma(mp_cplx(mp_real(sigma))) * fit.sum;
            EvalResult out;
            out.representation = Rep::at_rho;
            out.value = to_cplx(value);
            out.terms_used = fit.terms_used;
            out.err_estimate = fit.err * to_double(abs(gamma(mp_cplx(mp_real(sigma))))) +
                               double_floor * std::abs(out.value);
            return out;
        }
        if (n_terms >= cap) break;
    }
    throw ToleranceError("at-rho summation did not certify tolerance " + num_str(tol) +
                         "; error gauge " + num_str(fit.err));
}

EvalResult eval_auto(const ParameterSet& ps, const cplx& z, double tol, long max_terms,
                     std::optional<double> sigma)
{
    double rho = ps.rho();
    if (z.imag() == 0.0 && std::abs(z.real() - rho) <= rho * boundary_band &&
        ps.mu().real() > 0)
        return eval_at_rho(ps, sigma, tol, max_terms);
    if (on_cut(ps, z))
        throw CutError("z = " + format_complex_literal(z) +
                       " lies on the branch cut [rho, inf); only the jump and the average "
                       "are defined there");
    cplx w = z / rho;
    double r = std::abs(w);
    if (std::abs(1.0 - w) < 0.4) return eval_singular_expansion(ps, w, sigma, tol, max_terms);
    if (r < 0.95) return eval_maclaurin(ps, z, tol, max_terms);
    if (r > 1.05) return eval_residue_series(ps, z, tol, max_terms);

    // Near-circle band: evaluate every representation that is valid at this
    // point and average the two most accurate ones as a cross-check.
    bool rim = std::abs(r - 1.0) <= boundary_band;
    bool rim_ok = ps.mu().real() > 0;
    std::vector<Candidate> cands;
    if (r < 1 - boundary_band || (rim && rim_ok))
        cands.push_back(try_eval([&] { return eval_maclaurin(ps, z, tol, max_terms); }));
    if (r > 1 + boundary_band) {
        double a_max = *std::max_element(ps.A().begin(), ps.A().end());
        double need = a_max * (-std::log(tol)) / std::log(r);
        if (need < double(std::min<long>(max_terms, 20000)))
            cands.push_back(try_eval([&] { return eval_residue_series(ps, z, tol, max_terms); }));
    }
    if (std::abs(1.0 - w) < 0.5 && ps.scales_above_sixth())
        cands.push_back(try_eval([&] { return eval_singular_expansion(ps, w, sigma, tol, max_terms); }));

    std::vector<EvalResult> good;
    std::string first_error;
    for (auto& c : cands) {
        if (c.ok)
            good.push_back(std::move(c.result));
        else if (first_error.empty())
            first_error = c.error;
    }
    if (good.empty())
        throw DomainError("no representation converged near |z| = rho" +
                          (first_error.empty() ? std::string() : ": " + first_error));
    std::sort(good.begin(), good.end(),
              [](const EvalResult& x, const EvalResult& y) { return x.err_estimate < y.err_estimate; });
    if (good.size() == 1) return good.front();

    EvalResult out = good[0];
    double gap = std::abs(good[0].value - good[1].value);
    out.value = (good[0].value + good[1].value) / 2.0;
    out.terms_used = good[0].terms_used + good[1].terms_used;
    out.err_estimate = std::max({good[0].err_estimate, good[1].err_estimate, gap / 2});
    if (!good[1].warning.empty() && out.warning.empty()) out.warning = good[1].warning;
    return out;
}

namespace {

struct CutSums {
    mp_real jump{0};
    mp_real average{0};
    long terms = 0;
    double err = 0;
};

// One of the two bank series (jump or average); terms that land on a
// reciprocal-gamma pole are exact zeros and are tracked separately so a
// family whose terms all vanish still closes.
struct CutStream {
    mp_real sum{0};
    TailGauge gauge;
    long zero_run = 0;
    bool closed = false;
    double bound_err = 0;

    void add(const mp_real& t)
    {
        sum += t;
        gauge.push(to_double(abs(t)));
        zero_run = 0;
    }
};

CutSums cut_sums(const ParameterSet& ps, double x, double tol, long max_terms)
{
    const auto& a = ps.a();
    const auto& A = ps.A();
    const auto& b = ps.b();
    const auto& B = ps.B();
    mp_real log_x_inv = -log(mp_real(x));
    CutSums out;
    mp_real jump_total(0), avg_total(0);
    long per_family = std::max<long>(64, max_terms / long(a.size()));

    for (std::size_t k = 0; k < a.size(); ++k) {
        CutStream jump, avg;
        mp_real log_fact(0);
        double unit = 0;
        const long zero_limit = long(std::ceil(4 * A[k])) + 8;
        for (long n = 0; n < per_family && !(jump.closed && avg.closed); ++n) {
            if (n > 0) log_fact += log(mp_real(n));
            mp_real u = (mp_real(a[k].real()) + n) / mp_real(A[k]);
            int sgn = n % 2 == 0 ? 1 : -1;
            mp_real base = u * log_x_inv - log_fact - log(mp_real(A[k]));
            bool zero_base = false;
            for (std::size_t j = 0; j < b.size() && !zero_base; ++j)
                if (near_gamma_pole(mp_real(b[j].real()) - mp_real(B[j]) * u)) zero_base = true;
            if (!zero_base) {
                for (std::size_t i = 0; i < a.size(); ++i) {
                    if (i == k) continue;
                    mp_real arg = mp_real(a[i].real()) - mp_real(A[i]) * u;
                    if (near_gamma_pole(arg))
                        throw PoleCollisionError("cut series hit a shared gamma pole at index " +
                                                 std::to_string(n));
                    int s = 1;
                    base += signed_log_gamma(arg, s);
                    sgn *= s;
                }
                for (std::size_t j = 0; j < b.size(); ++j) {
                    int s = 1;
                    base -= signed_log_gamma(mp_real(b[j].real()) - mp_real(B[j]) * u, s);
                    sgn *= s;
                }
            }
            ++out.terms;
            if (!jump.closed) {
                if (zero_base || near_gamma_pole(1 - u)) {
                    ++jump.zero_run;
                } else {
                    int s = 1;
                    mp_real lg = signed_log_gamma(1 - u, s);
                    mp_real t = exp(base - lg);
                    if (sgn * s < 0) t = -t;
                    jump.add(t);
                    if (unit == 0) unit = to_double(abs(t));
                }
            }
            if (!avg.closed) {
                if (zero_base || near_gamma_pole(mp_real(1.5) - u) ||
                    near_gamma_pole(u - mp_real(0.5))) {
                    ++avg.zero_run;
                } else {
                    int s1 = 1, s2 = 1;
                    mp_real lg = signed_log_gamma(mp_real(1.5) - u, s1) +
                                 signed_log_gamma(u - mp_real(0.5), s2);
                    mp_real t = exp(base + log_gamma(mp_cplx(u)).real() - lg);
                    if (sgn * s1 * s2 < 0) t = -t;
                    avg.add(t);
                    if (unit == 0) unit = to_double(abs(t));
                }
            }
            double scale = (to_double(abs(jump_total + jump.sum)) +
                            to_double(abs(avg_total + avg.sum)) + unit) /
                           double(a.size());
            for (CutStream* s : {&jump, &avg}) {
                if (s->closed) continue;
                if (s->zero_run > zero_limit) {
                    s->closed = true;
                    continue;
                }
                double bd = s->gauge.bound();
                if (n >= 8 && bd >= 0 && bd <= tol * scale) {
                    s->closed = true;
                    s->bound_err = bd;
                }
            }
        }
        if (!(jump.closed && avg.closed))
            throw ToleranceError("cut series for family " + std::to_string(k) +
                                 " did not certify tolerance " + num_str(tol));
        jump_total += jump.sum;
        avg_total += avg.sum;
        out.err += jump.bound_err + avg.bound_err;
    }
    out.jump = jump_total;
    out.average = avg_total;
    return out;
}

CutValues cut_values_impl(const ParameterSet& ps, double x, double tol, long max_terms)
{
    if (!ps.all_real())
        throw DomainError("jump and average on the cut are defined for real parameter "
                          "vectors only");
    if (!(x > ps.rho() * (1 + boundary_band)))
        throw DomainError("cut values need x > rho = " + num_str(ps.rho()));
    require_simple_exponents(ps);
    CutSums s = cut_sums(ps, x, tol, max_terms);
    using boost::math::constants::pi;
    CutValues out;
    out.x = x;
    out.jump = cplx(0.0, to_double(2 * pi<mp_real>() * s.jump));
    out.average = cplx(to_double(-pi<mp_real>() * s.average), 0.0);
    return out;
}

} // namespace

cplx jump_on_cut(const ParameterSet& ps, double x, double tol, long max_terms)
{
    return cut_values_impl(ps, x, tol, max_terms).jump;
}

cplx average_on_cut(const ParameterSet& ps, double x, double tol, long max_terms)
{
    return cut_values_impl(ps, x, tol, max_terms).average;
}

CutValues cut_values(const ParameterSet& ps, double x, double tol, long max_terms)
{
    return cut_values_impl(ps, x, tol, max_terms);
}

} // namespace fwx
