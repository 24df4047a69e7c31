#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "fwx/errors.hpp"
#include "fwx/params.hpp"
#include "fwx/tailfit.hpp"

using fwx::BasisTerm;
using fwx::cplx;
using fwx::mp_cplx;
using fwx::mp_real;

namespace {

mp_real abs_gap(const mp_cplx& got, const mp_cplx& want) { return abs(got - want); }

} // namespace

TEST_CASE("polynomially decaying tail sums to the zeta value")
{
    // t_n = (n+1)^-2, total = pi^2 / 6, from only 400 computed terms.
    std::vector<mp_cplx> terms(400);
    for (std::size_t n = 0; n < terms.size(); ++n)
        terms[n] = mp_real(1) / (mp_real(double(n + 1)) * mp_real(double(n + 1)));
    auto basis = fwx::ladder_basis_from({{cplx(1.0, 0.0), 1}}, 1.0, 10);
    auto fit = fwx::tail_fit_sum(terms, basis);

    mp_real want = boost::math::constants::pi<mp_real>() *
                   boost::math::constants::pi<mp_real>() / 6;
    mp_real err = abs_gap(fit.sum, mp_cplx(want));
    CHECK(err < mp_real(1e-12));
    // The reported gauge must cover the actual miss.
    CHECK(err <= mp_real(5) * mp_real(fit.err) + mp_real(1e-13));
}

TEST_CASE("rotating geometric-times-power tail matches brute-force summation")
{
    const cplx phase_d = 0.8 * std::polar(1.0, 3.14159265358979323846 / 5);
    const mp_cplx phase = fwx::to_mp(phase_d);

    auto term_at = [&](long n) {
        return pow(phase, n) * exp(mp_real(-1.3) * log(mp_real(double(n + 1))));
    };
    // Reference: direct summation converges geometrically.
    mp_cplx want(0);
    for (long n = 0; n < 600; ++n) want += term_at(n);

    std::vector<mp_cplx> terms(160);
    for (long n = 0; n < 160; ++n) terms[std::size_t(n)] = term_at(n);
    auto basis = fwx::ladder_basis_from({{cplx(1.3, 0.0), 1}}, 1.0, 8);
    auto fit = fwx::tail_fit_sum(terms, basis, phase);

    mp_real err = abs_gap(fit.sum, want);
    CHECK(err < mp_real(1e-12));
    CHECK(err <= mp_real(5) * mp_real(fit.err) + mp_real(1e-13));
}

TEST_CASE("logarithmic tail needs the multiplicity-two ladder")
{
    // t_n = n^-1.5 log n for n >= 1; the total is -zeta'(3/2), taken here
    // from a central difference of the zeta function in 50-digit precision.
    std::vector<mp_cplx> terms(1600, mp_cplx(0));
    for (std::size_t n = 1; n < terms.size(); ++n) {
        mp_real x{double(n)};
        terms[n] = exp(mp_real(-1.5) * log(x)) * log(x);
    }
    mp_real h("1e-18");
    mp_real want = -(boost::math::zeta(mp_real(1.5) + h) - boost::math::zeta(mp_real(1.5) - h)) /
                   (2 * h);

    auto basis = fwx::ladder_basis_from({{cplx(0.5, 0.0), 2}}, 1.0, 10);
    auto fit = fwx::tail_fit_sum(terms, basis);
    mp_real err = abs_gap(fit.sum, mp_cplx(want));
    CHECK(err < mp_real(1e-9));
    CHECK(err <= mp_real(5) * mp_real(fit.err) + mp_real(1e-12));

    // A log-blind basis over the same data must either miss or report a
    // large gauge; certifying a wrong sum is the one forbidden outcome.
    auto blind = fwx::ladder_basis_from({{cplx(0.5, 0.0), 1}}, 1.0, 10);
    auto bad = fwx::tail_fit_sum(terms, blind);
    mp_real miss = abs_gap(bad.sum, mp_cplx(want));
    CHECK((miss <= mp_real(5) * mp_real(bad.err) + mp_real(1e-12) || bad.err > 1e-6));
}

TEST_CASE("basis that decays faster than the data cannot certify")
{
    std::vector<mp_cplx> terms(400);
    for (std::size_t n = 0; n < terms.size(); ++n)
        terms[n] = exp(mp_real(-1.2) * log(mp_real(double(n + 1))));
    // True remainder falls like N^-0.2; this ladder starts at N^-3.
    auto basis = fwx::ladder_basis_from({{cplx(4.0, 0.0), 1}}, 1.0, 6);
    auto fit = fwx::tail_fit_sum(terms, basis);
    CHECK(fit.err > 1e-3);
}

TEST_CASE("too few terms for the basis is an error")
{
    std::vector<mp_cplx> terms(20, mp_cplx(1));
    auto basis = fwx::ladder_basis_from({{cplx(1.0, 0.0), 1}}, 1.0, 8);
    CHECK_THROWS_AS(fwx::tail_fit_sum(terms, basis), fwx::ToleranceError);
}

TEST_CASE("direct sum handles geometric tails")
{
    std::vector<mp_cplx> terms(120);
    for (std::size_t n = 0; n < terms.size(); ++n) terms[n] = pow(mp_real(0.5), int(n));
    auto fit = fwx::direct_sum(terms);
    CHECK(abs_gap(fit.sum, mp_cplx(2)) < mp_real(1e-30));
    CHECK(fit.err < 1e-30);
}

TEST_CASE("parameter ladders merge coincident exponent streams into log factors")
{
    fwx::ParameterSet gauss({0.5, 0.7}, {1, 1}, {1.3}, {1});
    auto plain = fwx::pole_ladder_basis(gauss, 1.0, 12);
    REQUIRE(plain.size() == 12);
    for (std::size_t i = 0; i + 1 < plain.size(); ++i)
        CHECK(plain[i].exponent.real() <= plain[i + 1].exponent.real() + 1e-12);
    for (const auto& t : plain) CHECK(t.logpow == 0);
    // Slowest column starts at min(a/A) + weight - 1 = 0.5.
    CHECK(fwx::to_double(abs(plain[0].exponent - mp_cplx(0.5))) < 1e-12);

    fwx::ParameterSet balanced({0.5, 0.5}, {1, 1}, {1.0}, {1});
    auto merged = fwx::pole_ladder_basis(balanced, 1.0, 12);
    bool has_log = false;
    for (const auto& t : merged) has_log = has_log || t.logpow > 0;
    CHECK(has_log);
}
