#include "fwx/engine.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <limits>

#include "fwx/errors.hpp"
#include "fwx/kernels.hpp"
#include "fwx/special.hpp"

namespace fwx {

namespace {

constexpr double collision_tolerance = 1e-9;

// The coefficient table is quadratic to extend, so tail certification stops
// deepening here regardless of the caller's overall term budget.
constexpr long mp_table_cap = 1920;

mp_real factorial_mp(long n)
{
    mp_real acc = 1;
    for (long j = 2; j <= n; ++j) acc *= mp_real(j);
    return acc;
}

mp_real pow_int(double base, int m)
{
    mp_real acc = 1;
    const mp_real b(base);
    for (int i = 0; i < m; ++i) acc *= b;
    return acc;
}

// terms[n] = Gamma(mu + n - m) / Gamma(mu + theta + n + 1) * v[n], advanced by
// the one-step ratio instead of per-index log_gamma calls.  The two startup
// log_gamma calls still reject pole-adjacent arguments: every later Gamma
// argument differs from a startup one by a positive integer, so it can only
// sit near a non-positive integer if the startup argument already does.
std::vector<mp_cplx> gamma_shift_terms(const std::vector<mp_cplx>& v, const mp_cplx& mu, int m,
                                       double theta)
{
    using std::exp;
    std::vector<mp_cplx> terms(v.size());
    mp_cplx a = mu - mp_real(m);
    mp_cplx b = mu + mp_real(theta) + mp_real(1);
    mp_cplx ratio = exp(log_gamma(a) - log_gamma(b));
    for (std::size_t n = 0; n < v.size(); ++n) {
        terms[n] = ratio * v[n];
        ratio *= a / b;
        a += mp_real(1);
        b += mp_real(1);
    }
    return terms;
}

} // namespace

struct Engine::Table {
    double sigma = 0;
    double theta = 0;
    mp_cplx mu_sigma;
    mp_cplx c;  // theta + mu_sigma, the shift entering the recursion row
    std::vector<mp_cplx> q_plain;  // index m >= 1; [0] unused
    std::vector<mp_cplx> l_plain;
    std::vector<mp_cplx> q_theta;
    std::vector<mp_cplx> l_theta;
    std::vector<mp_cplx> lambda;  // l_theta[r] / Gamma(r + mu_sigma)
    std::vector<mp_cplx> urow;    // recursion row for the current n
    int n_cur = -1;
    std::vector<mp_cplx> v;
    std::vector<mp_cplx> r_coef;
    std::vector<mp_cplx> w_coef;
    std::vector<double> w_err;
};

Engine::Engine(ParameterSet ps) : ps_(std::move(ps))
{
    using std::exp;
    using std::log;
    const long half_count = static_cast<long>(ps_.p()) - static_cast<long>(ps_.q()) - 1;
    mu_mp_ = mp_cplx(mp_real(half_count) / 2);
    for (const cplx& v : ps_.b()) mu_mp_ += to_mp(v);
    for (const cplx& v : ps_.a()) mu_mp_ -= to_mp(v);

    mp_cplx log_nu = mp_real(half_count) / 2 * log(2 * boost::math::constants::pi<mp_real>());
    for (std::size_t k = 0; k < ps_.p(); ++k)
        log_nu += (to_mp(ps_.a()[k]) - mp_real(0.5)) * log(mp_real(ps_.A()[k]));
    for (std::size_t j = 0; j < ps_.q(); ++j)
        log_nu += (mp_real(0.5) - to_mp(ps_.b()[j])) * log(mp_real(ps_.B()[j]));
    nu_mp_ = exp(log_nu);
}

void Engine::require_scales() const
{
    if (!ps_.scales_above_sixth())
        throw ScaleError("expansion requires every scale entry to exceed 1/6");
}

Engine::Table& Engine::table(double sigma, double theta)
{
    if (!(sigma > 0)) throw SigmaError("sigma must be positive");
    const auto key = std::make_pair(sigma, theta);
    auto it = tables_.find(key);
    if (it != tables_.end()) return *it->second;

    auto t = std::make_unique<Table>();
    t->sigma = sigma;
    t->theta = theta;
    t->mu_sigma = mu_mp_ + mp_real(sigma);
    if (!(t->mu_sigma.real() > 0))
        throw SigmaError("sigma leaves Re(mu) + sigma non-positive");
    t->c = t->mu_sigma + mp_real(theta);
    t->q_plain.push_back(mp_cplx(0));
    t->q_theta.push_back(mp_cplx(0));
    t->l_plain.push_back(mp_cplx(1));
    t->l_theta.push_back(mp_cplx(1));
    t->lambda.push_back(mp_cplx(1) / gamma(t->mu_sigma));
    auto [pos, inserted] = tables_.emplace(key, std::move(t));
    return *pos->second;
}

void Engine::extend_l(Table& t, int upto)
{
    while (static_cast<int>(t.q_plain.size()) <= upto) {
        const int m = static_cast<int>(t.q_plain.size());
        mp_cplx bracket(0);
        for (std::size_t k = 0; k < ps_.p(); ++k)
            bracket += bernoulli_polynomial(m + 1, to_mp(ps_.a()[k])) / pow_int(ps_.A()[k], m);
        for (std::size_t j = 0; j < ps_.q(); ++j)
            bracket -= bernoulli_polynomial(m + 1, to_mp(ps_.b()[j])) / pow_int(ps_.B()[j], m);
        bracket -= bernoulli_polynomial(m + 1, mp_cplx(mp_real(t.sigma)));
        const mp_real front = mp_real(m % 2 == 0 ? -1 : 1) / mp_real(m + 1);
        t.q_plain.push_back(front * bracket);

        const mp_cplx extra = bernoulli_polynomial(m + 1, mp_cplx(mp_real(t.theta)) + t.mu_sigma) -
                              bernoulli_polynomial(m + 1, mp_cplx(mp_real(t.theta) + 1));
        t.q_theta.push_back(front * (bracket + extra));
    }
    while (static_cast<int>(t.l_plain.size()) <= upto) {
        const int r = static_cast<int>(t.l_plain.size());
        mp_cplx acc_plain(0), acc_theta(0);
        for (int m = 1; m <= r; ++m) {
            acc_plain += t.q_plain[m] * t.l_plain[r - m];
            acc_theta += t.q_theta[m] * t.l_theta[r - m];
        }
        t.l_plain.push_back(acc_plain / mp_real(r));
        t.l_theta.push_back(acc_theta / mp_real(r));
        t.lambda.push_back(t.l_theta.back() / gamma(t.mu_sigma + mp_real(r)));
    }
}

void Engine::extend_v(Table& t, int upto)
{
    extend_l(t, upto);
    if (t.n_cur < 0) {
        t.urow.assign(1, mp_cplx(1));
        t.n_cur = 0;
        t.v.push_back(nu_mp_ * t.lambda[0]);
    }
    while (t.n_cur < upto) {
        const int n = t.n_cur;
        std::vector<mp_cplx> next(n + 2);
        const mp_cplx denom = t.mu_sigma + mp_real(n);
        const mp_cplx cn = t.c + mp_real(n);
        for (int l = 0; l <= n + 1; ++l) {
            mp_cplx acc(0);
            if (l >= 1) acc += (t.mu_sigma + mp_real(l - 1)) * t.urow[l - 1];
            if (l <= n) acc += cn * t.urow[l];
            next[l] = acc / denom;
        }
        t.urow.swap(next);
        t.n_cur = n + 1;
        mp_cplx sum(0);
        for (int r = 0; r <= t.n_cur; ++r) sum += t.lambda[r] * t.urow[r];
        t.v.push_back(nu_mp_ * sum);
    }
}

mp_cplx Engine::q_m(double sigma, int m)
{
    if (m < 1) throw IndexError("q_m: m starts at 1");
    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, 0.0);
    extend_l(t, m);
    return t.q_plain[m];
}

mp_cplx Engine::l_r(double sigma, int r)
{
    if (r < 0) throw IndexError("l_r: r must be non-negative");
    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, 0.0);
    extend_l(t, r);
    return t.l_plain[r];
}

mp_cplx Engine::q_m_theta(double sigma, double theta, int m)
{
    if (m < 1) throw IndexError("q_m_theta: m starts at 1");
    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, theta);
    extend_l(t, m);
    return t.q_theta[m];
}

mp_cplx Engine::l_r_theta(double sigma, double theta, int r)
{
    if (r < 0) throw IndexError("l_r_theta: r must be non-negative");
    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, theta);
    extend_l(t, r);
    return t.l_theta[r];
}

mp_cplx Engine::v_n(double sigma, double theta, int n)
{
    if (n < 0) throw IndexError("v_n: n must be non-negative");
    require_scales();
    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, theta);
    extend_v(t, n);
    return t.v[n];
}

std::vector<mp_cplx> Engine::v_prefix(double sigma, double theta, int upto)
{
    if (upto < 0) throw IndexError("v_prefix: upto must be non-negative");
    require_scales();
    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, theta);
    extend_v(t, upto);
    return std::vector<mp_cplx>(t.v.begin(), t.v.begin() + upto + 1);
}

mp_cplx Engine::v_n_norlund(double sigma, double theta, int n)
{
    if (n < 0) throw IndexError("v_n_norlund: n must be non-negative");
    require_scales();
    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, theta);
    extend_l(t, n);
    const mp_cplx order = t.mu_sigma + mp_real(n);
    mp_cplx sum(0);
    for (int r = 0; r <= n; ++r) {
        const int k = n - r;
        mp_cplx term = t.l_plain[r] * norlund_polynomial(k, order, mp_cplx(-mp_real(theta)));
        term /= factorial_mp(k) * gamma(t.mu_sigma + mp_real(r));
        if (k % 2 == 1) term = -term;
        sum += term;
    }
    return nu_mp_ * sum;
}

mp_cplx Engine::coeff_R(double sigma, int m)
{
    if (m < 0) throw IndexError("coeff_R: m must be non-negative");
    if (ps_.mu_is_integer())
        throw IntegerMuError("coeff_R: mu is an integer; use the logarithmic expansion");
    require_scales();
    v_prefix(sigma, 0.0, m);

    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, 0.0);
    using std::sin;
    const mp_real pi = boost::math::constants::pi<mp_real>();
    while (static_cast<int>(t.r_coef.size()) <= m) {
        const int mm = static_cast<int>(t.r_coef.size());
        mp_cplx inner(0);
        for (int n = 0; n <= mm; ++n) {
            mp_cplx term = t.v[n] / (gamma(mu_mp_ + mp_real(n + 1)) * factorial_mp(mm - n));
            if (n % 2 == 1) term = -term;
            inner += term;
        }
        const mp_cplx front = -pi * gamma(t.mu_sigma + mp_real(mm)) / sin(pi * mu_mp_);
        t.r_coef.push_back(front * inner);
    }
    return t.r_coef[m];
}

mp_cplx Engine::coeff_R_theta(double sigma, double theta, int m)
{
    if (m < 0) throw IndexError("coeff_R_theta: m must be non-negative");
    if (ps_.mu_is_integer())
        throw IntegerMuError("coeff_R_theta: mu is an integer; use the logarithmic expansion");
    require_scales();
    std::vector<mp_cplx> v = v_prefix(sigma, theta, m);

    using std::sin;
    const mp_real pi = boost::math::constants::pi<mp_real>();
    mp_cplx inner(0);
    for (int n = 0; n <= m; ++n) {
        mp_cplx term = v[n] / (gamma(mu_mp_ + mp_real(theta) + mp_real(n + 1)) * factorial_mp(m - n));
        if (n % 2 == 1) term = -term;
        inner += term;
    }
    const mp_cplx front = -pi * gamma(mu_mp_ + mp_real(sigma) + mp_real(m)) *
                          gamma(mu_mp_ + mp_real(theta) + mp_real(m + 1)) /
                          (sin(pi * mu_mp_) * gamma(mu_mp_ + mp_real(m + 1)));
    return front * inner;
}

mp_cplx Engine::coeff_W(double sigma, int m, double tol, long max_terms)
{
    if (m < 0) throw IndexError("coeff_W: m must be non-negative");
    if (ps_.mu_is_integer())
        throw IntegerMuError("coeff_W: mu is an integer; use the logarithmic expansion");
    require_scales();
    {
        std::lock_guard<std::mutex> lock(guard_);
        Table& t = table(sigma, 0.0);
        if (m < static_cast<int>(t.w_coef.size()) && t.w_err[m] <= tol) return t.w_coef[m];
    }

    using std::abs;
    mp_cplx front = gamma(mp_cplx(mp_real(sigma) + m));
    if (m % 2 == 1) front = -front;

    SeriesValue best;
    best.err = std::numeric_limits<double>::infinity();
    bool certified = false;
    for (long n_terms = 240; n_terms <= std::clamp<long>(max_terms, 240, mp_table_cap); n_terms *= 2) {
        std::vector<mp_cplx> v = v_prefix(sigma, 0.0, static_cast<int>(n_terms));
        std::vector<mp_cplx> terms = gamma_shift_terms(v, mu_mp_, m, 0.0);
        // For larger m the summand decays so quickly the plain partial sum is
        // already converged; only fall back to the tail fit when it is not.
        const double unit = to_double(abs(v[0]));
        const TailFitResult direct = direct_sum(terms);
        const double direct_err = to_double(abs(terms.back()) * mp_real(n_terms) /
                                            mp_real(std::max(1.0, m + ps_.alpha() - 1.0)));
        if (direct_err <= tol * (to_double(abs(direct.sum)) + unit)) {
            best.value = direct.sum;
            best.err = direct_err;
            best.terms_used = direct.terms_used;
            certified = true;
            break;
        }
        const auto basis = pole_ladder_basis(ps_, m + 1.0, 16);
        const TailFitResult fit = tail_fit_sum(terms, basis);
        if (fit.err < best.err) {
            best.value = fit.sum;
            best.err = fit.err;
            best.terms_used = fit.terms_used;
        }
        if (fit.err <= tol * (to_double(abs(fit.sum)) + unit)) {
            certified = true;
            break;
        }
    }
    if (!certified)
        throw ToleranceError("coeff_W: tail could not be certified within the term budget");

    const mp_cplx value = front * best.value;
    std::lock_guard<std::mutex> lock(guard_);
    Table& t = table(sigma, 0.0);
    while (static_cast<int>(t.w_coef.size()) <= m) {
        t.w_coef.push_back(mp_cplx(0));
        t.w_err.push_back(std::numeric_limits<double>::infinity());
    }
    if (best.err < t.w_err[m]) {
        t.w_coef[m] = value;
        t.w_err[m] = best.err;
    }
    return t.w_coef[m];
}

mp_cplx Engine::coeff_W_theta(double sigma, double theta, int m, double tol, long max_terms)
{
    if (m < 0) throw IndexError("coeff_W_theta: m must be non-negative");
    if (ps_.mu_is_integer())
        throw IntegerMuError("coeff_W_theta: mu is an integer; use the logarithmic expansion");
    require_scales();
    using std::abs;
    mp_cplx front = gamma(mp_cplx(mp_real(sigma) + m)) * gamma(mp_cplx(mp_real(theta) + m + 1)) /
                    factorial_mp(m);
    if (m % 2 == 1) front = -front;

    for (long n_terms = 240; n_terms <= std::clamp<long>(max_terms, 240, mp_table_cap); n_terms *= 2) {
        std::vector<mp_cplx> v = v_prefix(sigma, theta, static_cast<int>(n_terms));
        std::vector<mp_cplx> terms = gamma_shift_terms(v, mu_mp_, m, theta);
        // The theta growth of V_n cancels the extra theta decay of the gamma
        // ratio, so the remainder ladder matches the theta = 0 one.
        const auto basis = pole_ladder_basis(ps_, m + 1.0, 16);
        const TailFitResult fit = tail_fit_sum(terms, basis);
        if (fit.err <= tol * (to_double(abs(fit.sum)) + to_double(abs(v[0])))) return front * fit.sum;
    }
    throw ToleranceError("coeff_W_theta: tail could not be certified within the term budget");
}

SeriesValue Engine::h_series(double sigma, double theta, const cplx& t, double tol, long max_terms)
{
    require_scales();
    using std::abs;
    using std::exp;
    using std::log;
    const mp_cplx tm = to_mp(t);
    if (tm == mp_cplx(0)) return SeriesValue{mp_cplx(0), 0.0, 1};
    const mp_cplx w = mp_cplx(1) - tm;
    const mp_real wabs = abs(w);
    if (!(wabs < 1.0 - 1e-14)) throw DomainError("h_series: requires |1 - t| < 1");

    std::lock_guard<std::mutex> lock(guard_);
    Table& tab = table(sigma, theta);
    mp_cplx acc(0);
    mp_cplx wpow(1);
    mp_real recent(0);
    double err = 0;
    int n = 0;
    const long cap = std::min<long>(max_terms, 20000);
    for (;; ++n) {
        if (n > cap) throw ToleranceError("h_series: did not converge within the term budget");
        extend_v(tab, n);
        const mp_cplx term = tab.v[n] * wpow;
        acc += term;
        const mp_real mag = abs(term);
        recent *= mp_real(0.75);
        if (mag > recent) recent = mag;
        wpow *= w;
        if (n >= 8) {
            const mp_real bound = recent * wabs / (mp_real(1) - wabs);
            if (bound <= mp_real(tol) * abs(acc)) {
                err = to_double(bound);
                break;
            }
        }
    }
    const mp_cplx prefactor = exp((mp_real(theta) + 1) * log(tm) + (tab.mu_sigma - 1) * log(w));
    SeriesValue out;
    out.value = prefactor * acc;
    out.err = err * to_double(abs(prefactor));
    out.terms_used = n + 1;
    return out;
}

LogCaseCoeffs Engine::log_case_coeffs(double sigma, long j, double tol, long max_terms)
{
    if (!ps_.mu_is_integer()) throw IntegerMuError("log_case_coeffs: mu is not an integer");
    require_scales();
    const long mu = ps_.mu_integer_value();
    if (mu < 0 && !(sigma > static_cast<double>(-mu)))
        throw SigmaError("log_case_coeffs: mu < 0 requires sigma > -mu");
    if (mu >= 0 && j < -mu) throw IndexError("log_case_coeffs: index below -mu");
    if (mu < 0 && j < mu) throw IndexError("log_case_coeffs: index below mu");

    using std::abs;
    auto digamma_real = [](double x) { return boost::math::digamma(mp_real(x)); };

    LogCaseCoeffs out;
    const mp_real sig(sigma);

    // The finite part below index zero (mu < 0 only) needs no tail work.
    if (mu < 0 && j < 0) {
        out.power = j;
        std::vector<mp_cplx> v = v_prefix(sigma, 0.0, static_cast<int>(j - mu));
        mp_cplx s(0);
        for (long n = 0; n <= j - mu; ++n)
            s += v[n] * factorial_mp(-mu - n - 1) / factorial_mp(-mu - n + j);
        out.log_coeff = mp_cplx(0);
        out.regular_coeff = gamma(mp_cplx(sig + mp_real(j))) * s;
        return out;
    }

    const long weight = (mu >= 0 ? mu + j : j) + 1;
    for (long n_terms = 240; n_terms <= std::clamp<long>(max_terms, 240, mp_table_cap); n_terms *= 2) {
        std::vector<mp_cplx> v =
            v_prefix(sigma, 0.0, static_cast<int>(n_terms + std::max<long>(0, -mu)));

        mp_cplx s_log(0), s_h(0);
        std::vector<mp_cplx> terms;
        if (mu >= 0) {
            if (j >= 0) {
                for (long n = 0; n <= j; ++n) {
                    const long m = j - n;
                    mp_cplx base = v[n] / (factorial_mp(mu + n) * factorial_mp(m));
                    if ((mu + n) % 2 == 1) base = -base;
                    const mp_real h = digamma_real(static_cast<double>(m + 1)) -
                                      digamma_real(static_cast<double>(m + mu + n) + sigma);
                    s_log += base;
                    s_h += base * h;
                }
            }
            const long n0 = std::max<long>(0, j + 1);
            terms.assign(v.size(), mp_cplx(0));
            for (long n = n0; n < static_cast<long>(v.size()); ++n) {
                mp_cplx poch(1);
                for (long i = 0; i < mu + j + 1; ++i) poch *= mp_real(-mu - n + i);
                terms[n] = v[n] / poch;
            }
        } else {
            for (long n = 0; n <= j; ++n) {
                const long m = j - n;
                mp_cplx base = v[n - mu] / (factorial_mp(n) * factorial_mp(m));
                if (n % 2 == 1) base = -base;
                const mp_real h = digamma_real(static_cast<double>(m + 1)) -
                                  digamma_real(static_cast<double>(m + n) + sigma);
                s_log += base;
                s_h += base * h;
            }
            terms.assign(v.size() + mu, mp_cplx(0));
            for (long n = j + 1; n < static_cast<long>(terms.size()); ++n) {
                mp_cplx poch(1);
                for (long i = 0; i <= j; ++i) poch *= mp_real(-n + i);
                terms[n] = v[n - mu] / poch;
            }
        }

        const auto basis = pole_ladder_basis(ps_, static_cast<double>(weight), 16);
        const TailFitResult fit = tail_fit_sum(terms, basis);
        const double gauge = to_double(abs(fit.sum)) + to_double(abs(s_h)) +
                             to_double(abs(s_log)) + to_double(abs(v[0]));
        if (fit.err <= tol * gauge) {
            const mp_cplx g =
                mu >= 0 ? gamma(mu_mp_ + sig + mp_real(j)) : gamma(mp_cplx(sig + mp_real(j)));
            out.power = mu >= 0 ? mu + j : j;
            out.log_coeff = -g * s_log;
            out.regular_coeff = g * (s_h - fit.sum);
            return out;
        }
    }
    throw ToleranceError("log_case_coeffs: tail could not be certified within the term budget");
}

double Engine::w_radius_estimate(double sigma, int mmax)
{
    using std::abs;
    using std::exp;
    using std::log;
    std::vector<double> estimates;
    for (int m = std::max(4, mmax / 2); m <= mmax; ++m) {
        const mp_cplx w = coeff_W(sigma, m, 1e-6);
        const mp_real mag = abs(w);
        if (mag == 0) continue;
        estimates.push_back(to_double(exp(-log(mag) / mp_real(m))));
    }
    if (estimates.empty()) return std::numeric_limits<double>::infinity();
    std::nth_element(estimates.begin(), estimates.begin() + estimates.size() / 2, estimates.end());
    return estimates[estimates.size() / 2];
}

int Engine::leading_multiplicity() const
{
    std::vector<cplx> pts;
    for (std::size_t k = 0; k < ps_.p(); ++k)
        for (int step = 0; step < 8; ++step)
            pts.push_back((ps_.a()[k] + cplx(step)) / ps_.A()[k]);
    const double lead = ps_.alpha();
    int best = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::abs(pts[i].real() - lead) > collision_tolerance) continue;
        int count = 0;
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (std::abs(pts[i] - pts[k]) < collision_tolerance) ++count;
        best = std::max(best, count);
    }
    return best;
}

std::shared_ptr<Engine> engine_for(const ParameterSet& ps)
{
    static std::map<std::string, std::shared_ptr<Engine>> registry;
    static std::mutex guard;
    std::lock_guard<std::mutex> lock(guard);
    auto it = registry.find(ps.cache_key());
    if (it != registry.end()) return it->second;
    auto engine = std::make_shared<Engine>(ps);
    registry.emplace(ps.cache_key(), engine);
    return engine;
}

} // namespace fwx
