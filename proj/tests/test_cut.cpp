#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "fwx/engine.hpp"
#include "fwx/eval.hpp"
#include "oracles.hpp"

using fwx::cplx;
using fwx::CutValues;
using fwx::mp_cplx;
using fwx::mp_real;
using fwx::ParameterSet;

namespace {

ParameterSet gauss_set() { return ParameterSet({0.5, 0.7}, {1, 1}, {1.3}, {1}); }
ParameterSet half_scale_set() { return ParameterSet({1.0, 1.0}, {0.5, 0.5}, {}, {}); }
ParameterSet mixed_scale_set() { return ParameterSet({0.4, 0.7}, {1, 0.5}, {0.9}, {0.5}); }
ParameterSet zero_balanced_set() { return ParameterSet({0.5, 0.5}, {1, 1}, {1.0}, {1}); }
ParameterSet negative_mu_set() { return ParameterSet({0.4, 0.75}, {1, 1}, {0.3}, {1}); }

double rel(double got, const mp_real& want)
{
    using std::abs;
    return fwx::to_double(abs(mp_real(got) - want) / abs(want));
}

} // namespace

TEST_CASE("jump and average reproduce the boundary limits from above")
{
    ParameterSet ps = gauss_set();
    for (double x : {1.5, 2.0, 4.0}) {
        CutValues cv = fwx::cut_values(ps, x);
        mp_cplx above = oracle::psi_gauss_above_cut(0.5, 0.7, 1.3, x);
        CHECK(rel(cv.jump.imag(), 2 * above.imag()) < 1e-9);
        CHECK(rel(cv.average.real(), above.real()) < 1e-9);

        // Real parameter vectors make the sums manifestly real, so the
        // complementary components are exact zeros, not merely small.
        CHECK(cv.jump.real() == 0.0);
        CHECK(cv.average.imag() == 0.0);
        CHECK(cv.x == x);

        CHECK(fwx::jump_on_cut(ps, x) == cv.jump);
        CHECK(fwx::average_on_cut(ps, x) == cv.average);
    }
}

TEST_CASE("vertical-approach extrapolation agrees with the cut values")
{
    for (auto [ps, x] : {std::pair{gauss_set(), 2.0}, std::pair{negative_mu_set(), 1.7}}) {
        CutValues cv = fwx::cut_values(ps, x);
        cplx fine = fwx::eval_residue_series(ps, cplx(x, 1e-4), 1e-12).value;
        cplx coarse = fwx::eval_residue_series(ps, cplx(x, 1e-3), 1e-12).value;
        cplx rich = (10.0 * fine - coarse) / 9.0;
        CHECK(std::abs(2 * rich.imag() - cv.jump.imag()) < 1e-5 * std::abs(cv.jump.imag()));
        CHECK(std::abs(rich.real() - cv.average.real()) < 1e-5 * std::abs(cv.average.real()));
    }
}

TEST_CASE("the jump equals the density series at the reciprocal argument")
{
    ParameterSet ps = gauss_set();
    auto eng = fwx::engine_for(ps);
    const double two_pi = 2 * 3.14159265358979323846;
    for (double x : {1.5, 2.0, 4.0}) {
        cplx jump = fwx::jump_on_cut(ps, x);
        auto h = eng->h_series(1.0, 0.0, cplx(ps.rho() / x, 0.0));
        double hr = fwx::to_double(h.value.real());
        double hi = fwx::to_double(h.value.imag());
        CHECK(std::abs(two_pi * hr - jump.imag()) < 1e-9 * std::abs(jump.imag()));
        CHECK(std::abs(hi) < 1e-12 * std::abs(hr));
    }
}

TEST_CASE("points at or inside the radius are rejected")
{
    ParameterSet ps = gauss_set();
    CHECK_THROWS_AS((void)fwx::cut_values(ps, 0.5), fwx::DomainError);
    CHECK_THROWS_AS((void)fwx::cut_values(ps, 1.0), fwx::DomainError);
    CHECK_THROWS_AS((void)fwx::jump_on_cut(ps, -2.0), fwx::DomainError);
}

TEST_CASE("parameter sets outside the real simple-exponent class are rejected")
{
    ParameterSet complex_set({cplx(0.5, 0.2), cplx(0.7, -0.2)}, {1, 1}, {cplx(1.3, 0.0)}, {1});
    CHECK_THROWS_AS((void)fwx::cut_values(complex_set, 2.0), fwx::DomainError);

    CHECK_THROWS_AS((void)fwx::cut_values(half_scale_set(), 3.0), fwx::PoleCollisionError);
    CHECK_THROWS_AS((void)fwx::cut_values(zero_balanced_set(), 2.0), fwx::PoleCollisionError);
    CHECK_THROWS_AS((void)fwx::cut_values(mixed_scale_set(), 1.5), fwx::PoleCollisionError);
}

TEST_CASE("evaluations directly on the cut are refused with the cut error")
{
    ParameterSet ps = gauss_set();
    CHECK_THROWS_AS((void)fwx::eval_residue_series(ps, cplx(2.0, 0.0)), fwx::CutError);
    CHECK_THROWS_AS((void)fwx::eval_auto(ps, cplx(2.0, 0.0)), fwx::CutError);
    CHECK_THROWS_AS((void)fwx::eval_auto(ps, cplx(1.7, 0.0)), fwx::CutError);
}
