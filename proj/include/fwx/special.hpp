#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "fwx/errors.hpp"
#include "fwx/mp.hpp"

// Gamma-family kernels over both std::complex<double> and the 50-digit
// complex type. Everything below follows the principal branch with the
// imaginary part continuous along paths avoiding (-inf, 0].

namespace fwx {

inline constexpr double pole_tolerance = 1e-12;

namespace detail {

template <class C> struct precision_plan {
    using R = typename scalar_traits<C>::real_type;
    // Shift arguments right of `shift_edge` before applying the divergent
    // asymptotic series; `terms` is matched to the target precision.
    static constexpr int shift_edge = std::numeric_limits<R>::digits10 <= 17 ? 12 : 40;
    static constexpr int terms = std::numeric_limits<R>::digits10 <= 17 ? 10 : 32;
};

template <class R> const std::vector<R>& stirling_coefficients(int terms)
{
    static const std::vector<R> table = [terms] {
        std::vector<R> c(terms + 1);
        for (int k = 1; k <= terms; ++k) {
            R b2k = boost::math::bernoulli_b2n<R>(k);
            c[k] = b2k / (R(2 * k) * R(2 * k - 1));
        }
        return c;
    }();
    return table;
}

template <class C> bool near_nonpositive_integer(const C& z)
{
    using traits = scalar_traits<C>;
    using R = typename traits::real_type;
    using std::abs;
    using std::floor;
    R x = traits::re(z);
    R y = traits::im(z);
    if (abs(y) > R(pole_tolerance)) return false;
    if (x > R(0.5)) return false;
    R nearest = floor(x + R(0.5));
    return nearest <= R(0) && abs(x - nearest) <= R(pole_tolerance);
}

// exp(w) - 1 without cancellation for small |w|.
template <class C> C cexpm1(const C& w)
{
    using traits = scalar_traits<C>;
    using R = typename traits::real_type;
    using std::cos;
    using std::exp;
    using std::expm1;
    using std::sin;
    R x = traits::re(w);
    R y = traits::im(w);
    R ex = exp(x);
    R half = sin(y / 2);
    R re = expm1(x) * cos(y) - 2 * half * half;
    R im = ex * sin(y);
    return traits::make(re, im);
}

} // namespace detail

// log(sin(pi z)) with the branch that makes log_gamma's reflection formula
// produce an imaginary part continuous off the negative real axis.
template <class C> C log_sin_pi(const C& z)
{
    using traits = scalar_traits<C>;
    using R = typename traits::real_type;
    using std::log;
    const R pi = boost::math::constants::pi<R>();
    const C i = traits::make(R(0), R(1));
    if (traits::im(z) >= R(0)) {
        C w = -detail::cexpm1(C(R(2) * pi) * i * z);
        return traits::make(-log(R(2)), pi / 2) - i * pi * z + log(w);
    }
    C c = log_sin_pi(traits::make(traits::re(z), -traits::im(z)));
    return traits::make(traits::re(c), -traits::im(c));
}

template <class C> C log_gamma(const C& z)
{
    using traits = scalar_traits<C>;
    using R = typename traits::real_type;
    using plan = detail::precision_plan<C>;
    using std::log;
    const R pi = boost::math::constants::pi<R>();

    if (detail::near_nonpositive_integer(z))
        throw PoleError("log_gamma: argument within pole tolerance of a non-positive integer");

    if (traits::re(z) < R(0.5)) {
        // Reflection; log_sin_pi carries the branch bookkeeping.
        return log(pi) - log_sin_pi(z) - log_gamma(C(R(1)) - z);
    }

    C w = z;
    C shift_log(R(0));
    while (traits::re(w) < R(plan::shift_edge)) {
        shift_log += log(w);
        w += R(1);
    }

    const auto& coef = detail::stirling_coefficients<R>(plan::terms);
    C winv2 = C(R(1)) / (w * w);
    C series(R(0));
    C wpow = C(R(1)) / w;
    for (int k = 1; k <= plan::terms; ++k) {
        series += coef[k] * wpow;
        wpow *= winv2;
    }
    C result = (w - C(R(0.5))) * log(w) - w + log(R(2) * pi) / R(2) + series;
    return result - shift_log;
}

template <class C> C gamma(const C& z)
{
    using std::exp;
    return exp(log_gamma(z));
}

// cot(pi z), overflow-free for large |Im z|.
template <class C> C cot_pi(const C& z)
{
    using traits = scalar_traits<C>;
    using R = typename traits::real_type;
    const R pi = boost::math::constants::pi<R>();
    const C i = traits::make(R(0), R(1));
    using std::exp;
    R y = traits::im(z);
    if (y == R(0)) {
        R x = traits::re(z);
        return traits::make(boost::math::cos_pi(x) / boost::math::sin_pi(x), R(0));
    }
    if (y > R(0)) {
        C e = exp(C(R(2) * pi) * i * z);
        return i * (e + C(R(1))) / (e - C(R(1)));
    }
    C c = cot_pi(traits::make(traits::re(z), -y));
    return traits::make(traits::re(c), -traits::im(c));
}

template <class C> C digamma(const C& z)
{
    using traits = scalar_traits<C>;
    using R = typename traits::real_type;
    using plan = detail::precision_plan<C>;
    using std::log;
    const R pi = boost::math::constants::pi<R>();

    if (detail::near_nonpositive_integer(z))
        throw PoleError("digamma: argument within pole tolerance of a non-positive integer");

    if (traits::re(z) < R(0.5))
        return digamma(C(R(1)) - z) - pi * cot_pi(z);

    C w = z;
    C shift(R(0));
    while (traits::re(w) < R(plan::shift_edge)) {
        shift += C(R(1)) / w;
        w += R(1);
    }

    const auto& coef = detail::stirling_coefficients<R>(plan::terms);
    C winv2 = C(R(1)) / (w * w);
    C series(R(0));
    C wpow = winv2;
    for (int k = 1; k <= plan::terms; ++k) {
        // B_{2k} / (2k w^{2k}) recovered from the cached B_{2k}/(2k(2k-1)).
        series += coef[k] * R(2 * k - 1) * wpow;
        wpow *= winv2;
    }
    return log(w) - C(R(1)) / (R(2) * w) - series - shift;
}

template <class C> C rising_factorial(const C& a, long n)
{
    using traits = scalar_traits<C>;
    using R = typename traits::real_type;
    if (n < 0) throw IndexError("rising_factorial: negative order");
    C acc(R(1));
    for (long j = 0; j < n; ++j) acc *= a + R(j);
    return acc;
}

} // namespace fwx
