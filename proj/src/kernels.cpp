#include "fwx/kernels.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <cmath>
#include <mutex>

#include "fwx/errors.hpp"
#include "fwx/linalg.hpp"
#include "fwx/series.hpp"

namespace fwx {

namespace {

mp_rational binomial_rational(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    mp_rational acc = 1;
    for (std::size_t j = 0; j < k; ++j) {
        acc *= mp_rational(static_cast<unsigned long>(n - j));
        acc /= mp_rational(static_cast<unsigned long>(j + 1));
    }
    return acc;
}

mp_real factorial_mp(std::size_t n)
{
    mp_real acc = 1;
    for (std::size_t j = 2; j <= n; ++j) acc *= mp_real(static_cast<unsigned long>(j));
    return acc;
}

const mp_real& factorial_cached(std::size_t n)
{
    static std::vector<mp_real> cache{mp_real(1), mp_real(1)};
    static std::mutex guard;
    std::lock_guard<std::mutex> lock(guard);
    while (cache.size() <= n)
        cache.push_back(cache.back() * mp_real(static_cast<unsigned long>(cache.size())));
    return cache[n];
}

// Floating-point Bernoulli numbers; the exact rational recurrence is kept for
// low orders only because the numerators grow super-exponentially.
mp_real bernoulli_float(std::size_t k)
{
    if (k == 0) return mp_real(1);
    if (k == 1) return mp_real(-1) / 2;
    if (k % 2 == 1) return mp_real(0);
    return boost::math::bernoulli_b2n<mp_real>(static_cast<int>(k / 2));
}

mp_cplx ipow(mp_cplx base, std::size_t e)
{
    mp_cplx acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// Direct binomial sum, accurate for Re x in [0,1) where the terms never
// exceed the result by more than e^{2*pi}.
mp_cplx bernoulli_polynomial_unit(std::size_t m, const mp_cplx& x)
{
    const mp_real& fm = factorial_cached(m);
    mp_cplx acc(0);
    for (std::size_t k = 0; k <= m; ++k) {
        mp_real coeff = fm / (factorial_cached(k) * factorial_cached(m - k)) * bernoulli_float(k);
        acc = acc * x + coeff;
    }
    return acc;
}

constexpr std::size_t exact_bernoulli_limit = 64;

} // namespace

const std::vector<mp_rational>& bernoulli_numbers(std::size_t n)
{
    static std::vector<mp_rational> cache{mp_rational(1)};
    static std::mutex guard;
    std::lock_guard<std::mutex> lock(guard);
    while (cache.size() <= n) {
        std::size_t m = cache.size();
        mp_rational acc = 0;
        for (std::size_t k = 0; k < m; ++k)
            acc += binomial_rational(m + 1, k) * cache[k];
        cache.push_back(-acc / mp_rational(static_cast<unsigned long>(m + 1)));
    }
    return cache;
}

mp_cplx bernoulli_polynomial(std::size_t m, const mp_cplx& x)
{
    if (m <= exact_bernoulli_limit) {
        const auto& b = bernoulli_numbers(m);
        // Horner over the exact coefficients binom(m,k) B_k of x^{m-k}.
        mp_cplx acc(0);
        for (std::size_t k = 0; k <= m; ++k) {
            mp_rational coeff = binomial_rational(m, k) * b[k];
            acc = acc * x + mp_real(coeff);
        }
        return acc;
    }
    // High orders: floating coefficients, with the argument shifted into the
    // unit strip first so the binomial sum stays well conditioned.
    const long f = static_cast<long>(std::floor(to_double(x.real())));
    if (f == 0) return bernoulli_polynomial_unit(m, x);
    const mp_cplx y = x - mp_real(f);
    mp_cplx corr(0);
    if (f > 0)
        for (long t = 0; t < f; ++t) corr += ipow(y + mp_real(t), m - 1);
    else
        for (long t = 1; t <= -f; ++t) corr -= ipow(y - mp_real(t), m - 1);
    return bernoulli_polynomial_unit(m, y) + mp_real(m) * corr;
}

cplx bernoulli_polynomial(std::size_t m, const cplx& x)
{
    return to_cplx(bernoulli_polynomial(m, to_mp(x)));
}

mp_cplx norlund_polynomial(std::size_t k, const mp_cplx& sigma, const mp_cplx& x)
{
    const auto& b = bernoulli_numbers(k);
    FormalSeries<mp_cplx> base(k);
    mp_real kfac = 1;
    for (std::size_t j = 0; j <= k; ++j) {
        if (j >= 2) kfac *= mp_real(static_cast<unsigned long>(j));
        base[j] = mp_cplx(mp_real(b[j])) / (j >= 2 ? kfac : mp_real(1));
    }
    FormalSeries<mp_cplx> powed = base.pow(sigma);
    FormalSeries<mp_cplx> expx(k);
    mp_cplx term(1);
    for (std::size_t j = 0; j <= k; ++j) {
        expx[j] = term;
        term *= x / mp_real(static_cast<unsigned long>(j + 1));
    }
    return powed.mul(expx)[k] * factorial_mp(k);
}

cplx norlund_polynomial(std::size_t k, const cplx& sigma, const cplx& x)
{
    return to_cplx(norlund_polynomial(k, to_mp(sigma), to_mp(x)));
}

mp_cplx noncentral_stirling_first(const mp_cplx& sigma, std::size_t n, std::size_t l)
{
    if (l > n) throw IndexError("noncentral_stirling_first: l exceeds n");
    std::vector<mp_cplx> poly{mp_cplx(1)};
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<mp_cplx> next(poly.size() + 1, mp_cplx(0));
        mp_cplx shift = sigma + mp_real(static_cast<unsigned long>(j));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] += shift * poly[i];
        }
        poly.swap(next);
    }
    return poly[l];
}

cplx noncentral_stirling_first(const cplx& sigma, std::size_t n, std::size_t l)
{
    return to_cplx(noncentral_stirling_first(to_mp(sigma), n, l));
}

mp_cplx noncentral_stirling_first_nb(const mp_cplx& sigma, std::size_t n, std::size_t l)
{
    if (l > n) throw IndexError("noncentral_stirling_first_nb: l exceeds n");
    std::size_t m = n - l;
    // binom(-l-1, m) = (-1)^m (l+1)_m / m!, kept away from gamma poles.
    mp_real rising = 1;
    for (std::size_t j = 0; j < m; ++j) rising *= mp_real(static_cast<unsigned long>(l + 1 + j));
    mp_real binom = rising / factorial_mp(m);
    if (m % 2 == 1) binom = -binom;
    return binom * norlund_polynomial(m, mp_cplx(mp_real(static_cast<unsigned long>(n + 1))), mp_cplx(1) - sigma);
}

mp_cplx bell_complete(const std::vector<mp_cplx>& x)
{
    if (x.empty()) throw ShapeError("bell_complete: needs at least one argument");
    std::size_t n = x.size();
    FormalSeries<mp_cplx> g(n);
    mp_real fac = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        fac *= mp_real(static_cast<unsigned long>(m));
        g[m] = x[m - 1] / fac;
    }
    return g.exp()[n] * factorial_mp(n);
}

cplx bell_complete(const std::vector<cplx>& x)
{
    std::vector<mp_cplx> lifted(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) lifted[i] = to_mp(x[i]);
    return to_cplx(bell_complete(lifted));
}

namespace {

void bell_partition_walk(const std::vector<mp_cplx>& x, std::size_t remaining, std::size_t max_part,
                         const mp_cplx& weight, mp_cplx& total)
{
    if (remaining == 0) {
        total += weight;
        return;
    }
    for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
        // Count multiplicities of `part` directly so each unordered partition
        // is visited once with its 1/(k! (i!)^k) weight.
        mp_real part_fac = factorial_mp(part);
        mp_cplx w = weight;
        std::size_t used = 0;
        std::size_t count = 0;
        while (used + part <= remaining) {
            used += part;
            ++count;
            w *= x[part - 1] / part_fac / mp_real(static_cast<unsigned long>(count));
            bell_partition_walk(x, remaining - used, part - 1, w, total);
        }
        if (part == 1) break;
    }
}

} // namespace

mp_cplx bell_complete_partitions(const std::vector<mp_cplx>& x)
{
    if (x.empty()) throw ShapeError("bell_complete_partitions: needs at least one argument");
    mp_cplx total(0);
    bell_partition_walk(x, x.size(), x.size(), mp_cplx(1), total);
    return total * factorial_mp(x.size());
}

mp_cplx nair_determinant(const std::vector<mp_cplx>& q, std::size_t r)
{
    if (r < 1) throw IndexError("nair_determinant: r must be at least 1");
    if (q.size() < r) throw ShapeError("nair_determinant: needs q_1..q_r");
    detail::mat omega(r, std::vector<mp_cplx>(r, mp_cplx(0)));
    std::vector<mp_real> fac(r + 1);
    fac[0] = 1;
    for (std::size_t j = 1; j <= r; ++j) fac[j] = fac[j - 1] * mp_real(static_cast<unsigned long>(j));
    for (std::size_t i = 1; i <= r; ++i) {
        for (std::size_t j = 1; j <= r; ++j) {
            if (i >= j)
                omega[i - 1][j - 1] = fac[i - 1] * q[i - j] / fac[j - 1];
            else if (i + 1 == j)
                omega[i - 1][j - 1] = mp_cplx(-1);
        }
    }
    return detail::det_gauss(std::move(omega)) / fac[r];
}

cplx nair_determinant(const std::vector<cplx>& q, std::size_t r)
{
    std::vector<mp_cplx> lifted(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) lifted[i] = to_mp(q[i]);
    return to_cplx(nair_determinant(lifted, r));
}

} // namespace fwx
