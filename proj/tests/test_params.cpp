#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "fwx/errors.hpp"
#include "fwx/params.hpp"

using fwx::cplx;
using fwx::ParameterSet;

namespace {

ParameterSet gauss_set() { return ParameterSet({0.5, 0.7}, {1, 1}, {1.3}, {1}); }
ParameterSet half_scale_set() { return ParameterSet({1.0, 1.0}, {0.5, 0.5}, {}, {}); }

const double two_pi = 6.28318530717958647692;

} // namespace

TEST_CASE("derived constants for the all-unit-scale set")
{
    ParameterSet ps = gauss_set();
    CHECK(ps.p() == 2);
    CHECK(ps.q() == 1);
    CHECK(ps.rho() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ps.mu().real() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(ps.mu().imag() == 0.0);
    CHECK(ps.nu().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ps.alpha() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ps.all_real());
    CHECK(ps.scales_above_sixth());
    CHECK(!ps.mu_is_integer());
    CHECK(!ps.mu_near_integer_warning());
}

TEST_CASE("derived constants for the half-scale set")
{
    ParameterSet ps = half_scale_set();
    // rho = prod A^-A with A = (1/2, 1/2); no lower parameters.
    CHECK(ps.rho() == doctest::Approx(2.0).epsilon(1e-14));
    // mu = -sum(a) + (p - q - 1)/2 = -2 + 1/2.
    CHECK(ps.mu().real() == doctest::Approx(-1.5).epsilon(1e-13));
    // nu = (2 pi)^{1/2} * (1/2)^{1/2} * (1/2)^{1/2}.
    CHECK(ps.nu().real() == doctest::Approx(0.5 * std::sqrt(two_pi)).epsilon(1e-13));
    CHECK(ps.alpha() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("integer and near-integer exponents are recognized")
{
    ParameterSet zb({0.5, 0.5}, {1, 1}, {1.0}, {1});
    CHECK(zb.mu_is_integer());
    CHECK(std::abs(zb.mu().real()) < 1e-14);

    ParameterSet nearby({0.4999, 0.5}, {1, 1}, {1.0}, {1});
    CHECK(!nearby.mu_is_integer());
    CHECK(nearby.mu_near_integer_warning());

    ParameterSet safe({0.3, 0.5}, {1, 1}, {1.0}, {1});
    CHECK(!safe.mu_near_integer_warning());
}

TEST_CASE("construction rejects malformed sets")
{
    CHECK_THROWS_AS(ParameterSet({}, {}, {1.0}, {1}), fwx::ShapeError);
    CHECK_THROWS_AS(ParameterSet({0.5}, {1, 1}, {1.0}, {1}), fwx::ShapeError);
    CHECK_THROWS_AS(ParameterSet({0.5}, {1}, {1.0}, {1, 1}), fwx::ShapeError);
    CHECK_THROWS_AS(ParameterSet({0.5}, {-1.0}, {}, {}), fwx::ShapeError);
    // Balance off by one.
    CHECK_THROWS_AS(ParameterSet({0.5}, {1}, {1.0}, {0.1}), fwx::DeltaError);
    CHECK_THROWS_AS(ParameterSet({0.5, 0.7}, {1, 1}, {1.3, 0.9}, {1, 1}), fwx::DeltaError);
    // min Re(a/A) must be positive.
    CHECK_THROWS_AS(ParameterSet({-0.5, 0.7}, {1, 1}, {1.3}, {1}), fwx::DomainError);
    CHECK_THROWS_AS(ParameterSet({cplx(0.0, 0.4), 0.7}, {1, 1}, {1.3}, {1}), fwx::DomainError);
}

TEST_CASE("sigma selection clears the exponent and rejects bad requests")
{
    ParameterSet ps = gauss_set();
    CHECK(fwx::choose_sigma(ps, std::nullopt) == doctest::Approx(1.0));
    CHECK(fwx::choose_sigma(ps, 2.5) == doctest::Approx(2.5));

    ParameterSet hs = half_scale_set();
    // mu = -1.5 needs sigma with mu + sigma > 0.
    CHECK(fwx::choose_sigma(hs, std::nullopt) > 1.5);
    CHECK_THROWS_AS(fwx::choose_sigma(hs, 1.0), fwx::SigmaError);
    CHECK_THROWS_AS(fwx::choose_sigma(ps, -1.0), fwx::SigmaError);
    CHECK_THROWS_AS(fwx::choose_sigma(ps, 0.0), fwx::SigmaError);
}

TEST_CASE("complex literals parse and format round-trip")
{
    CHECK(fwx::parse_complex_literal("1.5") == cplx(1.5, 0));
    CHECK(fwx::parse_complex_literal("-2") == cplx(-2, 0));
    CHECK(fwx::parse_complex_literal("1+2i") == cplx(1, 2));
    CHECK(fwx::parse_complex_literal("-1.5-0.25i") == cplx(-1.5, -0.25));
    CHECK(fwx::parse_complex_literal("0+1i") == cplx(0, 1));

    CHECK_THROWS_AS(fwx::parse_complex_literal(""), fwx::ParseError);
    CHECK_THROWS_AS(fwx::parse_complex_literal("abc"), fwx::ParseError);
    CHECK_THROWS_AS(fwx::parse_complex_literal("1+2j"), fwx::ParseError);
    CHECK_THROWS_AS(fwx::parse_complex_literal("1 + 2i"), fwx::ParseError);

    const cplx samples[] = {{0.1, -0.25}, {-3.75, 0}, {0, 2.5e-3}, {1.0 / 3.0, -2.0 / 7.0}};
    for (const cplx& z : samples) {
        cplx back = fwx::parse_complex_literal(fwx::format_complex_literal(z));
        CHECK(back.real() == z.real());
        CHECK(back.imag() == z.imag());
    }
}

TEST_CASE("list literals split on commas")
{
    auto xs = fwx::parse_real_list("0.5,0.7");
    REQUIRE(xs.size() == 2);
    CHECK(xs[0] == 0.5);
    CHECK(xs[1] == 0.7);

    auto zs = fwx::parse_complex_list("1+2i,0.5,-1-1i");
    REQUIRE(zs.size() == 3);
    CHECK(zs[1] == cplx(0.5, 0));
    CHECK(zs[2] == cplx(-1, -1));

    CHECK_THROWS_AS(fwx::parse_real_list("1+2i"), fwx::ParseError);
}

TEST_CASE("cache keys identify parameter sets")
{
    ParameterSet a = gauss_set();
    ParameterSet b = gauss_set();
    ParameterSet c({0.5, 0.7}, {1, 1}, {1.31}, {1});
    CHECK(a.cache_key() == b.cache_key());
    CHECK(a.cache_key() != c.cache_key());
}
