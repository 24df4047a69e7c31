#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "fwx/engine.hpp"
#include "fwx/kernels.hpp"
#include "fwx/special.hpp"
#include "oracles.hpp"

using fwx::cplx;
using fwx::mp_cplx;
using fwx::mp_real;
using fwx::ParameterSet;

namespace {

ParameterSet gauss_set() { return ParameterSet({0.5, 0.7}, {1, 1}, {1.3}, {1}); }
ParameterSet half_scale_set() { return ParameterSet({1.0, 1.0}, {0.5, 0.5}, {}, {}); }
ParameterSet three_upper_set()
{
    return ParameterSet({0.3, 0.25, 0.2}, {1, 1, 1}, {1.05, 1.1}, {1, 1});
}
ParameterSet zero_balanced_set() { return ParameterSet({0.5, 0.5}, {1, 1}, {1.0}, {1}); }

double rel_gap(const mp_cplx& got, const mp_cplx& want)
{
    return fwx::to_double(abs(got - want) / std::max(mp_real(1), abs(want)));
}

// Direct restatement of the q_m definition through the classical Bernoulli
// polynomials; the engine computes the same numbers through its cached
// tables, so any table corruption shows up here.
mp_cplx q_direct(const ParameterSet& ps, double sigma, int m)
{
    mp_cplx acc(0);
    for (std::size_t k = 0; k < ps.p(); ++k)
        acc += fwx::bernoulli_polynomial(std::size_t(m + 1), fwx::to_mp(ps.a()[k])) /
               pow(mp_real(ps.A()[k]), m);
    for (std::size_t j = 0; j < ps.q(); ++j)
        acc -= fwx::bernoulli_polynomial(std::size_t(m + 1), fwx::to_mp(ps.b()[j])) /
               pow(mp_real(ps.B()[j]), m);
    acc -= fwx::bernoulli_polynomial(std::size_t(m + 1), mp_cplx(mp_real(sigma)));
    mp_real sign = (m % 2 == 0) ? mp_real(-1) : mp_real(1);
    return sign / mp_real(m + 1) * acc;
}

} // namespace

TEST_CASE("q coefficients follow the bernoulli-polynomial formula")
{
    struct Probe {
        ParameterSet ps;
        double sigma;
    };
    const Probe probes[] = {{gauss_set(), 1.0}, {half_scale_set(), 3.0}, {three_upper_set(), 1.0}};
    for (const auto& probe : probes) {
        auto eng = fwx::engine_for(probe.ps);
        for (int m = 1; m <= 8; ++m)
            CHECK(rel_gap(eng->q_m(probe.sigma, m), q_direct(probe.ps, probe.sigma, m)) < 1e-40);
    }
    // Hand-evaluated first coefficient for the (0.5, 0.7; 1.3) set at
    // sigma = 1: one half of -(B_2(0.5) + B_2(0.7) - B_2(1.3) - B_2(1)).
    auto eng = fwx::engine_for(gauss_set());
    CHECK(rel_gap(eng->q_m(1.0, 1), mp_cplx(mp_real(-0.425))) < 1e-14);
}

TEST_CASE("logarithmic recursion coefficients agree along three routes")
{
    struct Probe {
        ParameterSet ps;
        double sigma;
    };
    const Probe probes[] = {{gauss_set(), 1.0}, {half_scale_set(), 3.0}, {three_upper_set(), 1.0}};
    for (const auto& probe : probes) {
        auto eng = fwx::engine_for(probe.ps);
        std::vector<mp_cplx> q;
        for (int m = 1; m <= 12; ++m) q.push_back(eng->q_m(probe.sigma, m));

        mp_real factorial(1);
        for (int r = 1; r <= 12; ++r) {
            factorial *= mp_real(r);
            mp_cplx via_recursion = eng->l_r(probe.sigma, r);

            std::vector<mp_cplx> scaled(static_cast<std::size_t>(r));
            mp_real weight(1);
            for (int m = 1; m <= r; ++m) {
                if (m > 1) weight *= mp_real(m - 1);
                scaled[std::size_t(m - 1)] = q[std::size_t(m - 1)] * weight;
            }
            mp_cplx via_bell = fwx::bell_complete_partitions(scaled) / factorial;
            mp_cplx via_det = fwx::nair_determinant(q, std::size_t(r));

            CHECK(rel_gap(via_recursion, via_bell) < 1e-12);
            CHECK(rel_gap(via_recursion, via_det) < 1e-12);
        }
    }
}

TEST_CASE("V coefficients: recursion route against the norlund route")
{
    struct Probe {
        ParameterSet ps;
        double sigma;
    };
    const Probe probes[] = {{gauss_set(), 1.0}, {half_scale_set(), 3.0}};
    for (const auto& probe : probes) {
        auto eng = fwx::engine_for(probe.ps);
        for (double theta : {0.0, 0.3}) {
            for (int n = 0; n <= 30; ++n)
                CHECK(rel_gap(eng->v_n(probe.sigma, theta, n),
                              eng->v_n_norlund(probe.sigma, theta, n)) < 1e-10);
        }
    }
}

TEST_CASE("V_0 takes its closed value and ignores theta")
{
    using fwx::gamma;
    auto gauss = fwx::engine_for(gauss_set());
    // V_0 = nu / Gamma(mu + sigma) with nu = 1, mu + sigma = 1.1.
    mp_cplx want = mp_cplx(1) / gamma(mp_cplx(mp_real(1.1)));
    CHECK(rel_gap(gauss->v_n(1.0, 0.0, 0), want) < 1e-13);
    CHECK(rel_gap(gauss->v_n(1.0, 0.7, 0), want) < 1e-13);

    // Half-scale set at sigma = 3: nu / Gamma(1.5) = sqrt(2).
    auto half = fwx::engine_for(half_scale_set());
    CHECK(rel_gap(half->v_n(3.0, 0.0, 0), mp_cplx(sqrt(mp_real(2)))) < 1e-13);

    // Zero-balanced set at sigma = 1: nu / Gamma(1) = 1.
    auto zb = fwx::engine_for(zero_balanced_set());
    CHECK(rel_gap(zb->v_n(1.0, 0.0, 0), mp_cplx(1)) < 1e-13);
}

TEST_CASE("expansion coefficients are invariant under the theta shift")
{
    auto gauss = fwx::engine_for(gauss_set());
    for (double theta : {0.3, 1.0}) {
        for (int m = 0; m <= 10; ++m) {
            CHECK(rel_gap(gauss->coeff_R(1.0, m), gauss->coeff_R_theta(1.0, theta, m)) < 1e-9);
            CHECK(rel_gap(gauss->coeff_W(1.0, m), gauss->coeff_W_theta(1.0, theta, m)) < 1e-9);
        }
    }
    // The tighter-scale set cancels harder; the invariance still holds to
    // the certified fit accuracy.
    auto half = fwx::engine_for(half_scale_set());
    for (int m = 0; m <= 6; ++m) {
        CHECK(rel_gap(half->coeff_R(3.0, m), half->coeff_R_theta(3.0, 0.3, m)) < 1e-8);
        CHECK(rel_gap(half->coeff_W(3.0, m), half->coeff_W_theta(3.0, 0.3, m)) < 1e-8);
    }
}

TEST_CASE("the leading singular amplitude is nu Gamma(-mu)")
{
    using fwx::gamma;
    auto gauss = fwx::engine_for(gauss_set());
    mp_cplx want = gamma(mp_cplx(mp_real(-0.1)));
    CHECK(rel_gap(gauss->coeff_R(1.0, 0), want) < 1e-12);

    auto three = fwx::engine_for(three_upper_set());
    ParameterSet ps = three_upper_set();
    mp_cplx want3 = fwx::to_mp(ps.nu()) * gamma(-fwx::to_mp(ps.mu()));
    CHECK(rel_gap(three->coeff_R(1.0, 0), want3) < 1e-12);
}

TEST_CASE("the auxiliary near-unit series is theta independent")
{
    auto gauss = fwx::engine_for(gauss_set());
    for (const cplx& t : {cplx(0.6, 0.0), cplx(0.7, 0.2)}) {
        auto a = gauss->h_series(1.0, 0.0, t);
        auto b = gauss->h_series(1.0, 0.3, t);
        CHECK(fwx::to_double(abs(a.value - b.value)) < 1e-10);
    }

    // Leading factor check: h(t) / [t^(theta+1) (1-t)^(mu_sigma - 1)] tends
    // to V_0 = 1/Gamma(1.1) at the unit point.
    cplx t(1.0 - 1e-6, 0.0);
    auto h = gauss->h_series(1.0, 0.0, t);
    mp_cplx scale = exp(mp_real(0.1) * log(mp_cplx(mp_real(1e-6)))) * fwx::to_mp(t);
    mp_cplx lead = h.value / scale;
    mp_cplx v0 = gauss->v_n(1.0, 0.0, 0);
    CHECK(fwx::to_double(abs(lead - v0)) < 1e-4);
}

TEST_CASE("integer-exponent expansion coefficients: zero-balanced closed forms")
{
    using fwx::digamma;
    using fwx::gamma;
    auto zb = fwx::engine_for(zero_balanced_set());
    mp_real factorial(1);
    mp_cplx rising(1);
    for (long j = 0; j <= 6; ++j) {
        if (j > 0) {
            factorial *= mp_real(double(j));
            rising *= mp_cplx(mp_real(0.5) + mp_real(double(j - 1)));
        }
        mp_cplx ratio = rising / factorial;
        mp_cplx weight = ratio * ratio;
        mp_cplx want_log = -weight;
        mp_cplx want_reg = weight * mp_real(2) *
                           (digamma(mp_cplx(mp_real(double(j + 1)))) -
                            digamma(mp_cplx(mp_real(double(j) + 0.5))));
        auto c = zb->log_case_coeffs(1.0, j);
        CHECK(c.power == j);
        CHECK(rel_gap(c.log_coeff, want_log) < 1e-8);
        CHECK(rel_gap(c.regular_coeff, want_reg) < 1e-8);
    }

    // Positive integer exponent: the constant term of the expansion is the
    // boundary value itself and carries no logarithm.
    ParameterSet mu_one({0.5, 0.5}, {1, 1}, {2.0}, {1});
    auto eng = fwx::engine_for(mu_one);
    auto c = eng->log_case_coeffs(1.0, -1);
    CHECK(c.power == 0);
    CHECK(fwx::to_double(abs(c.log_coeff)) < 1e-10);
    CHECK(rel_gap(c.regular_coeff, mp_cplx(4)) < 1e-9);

    CHECK_THROWS_AS(fwx::engine_for(gauss_set())->log_case_coeffs(1.0, 0),
                    fwx::IntegerMuError);
}

TEST_CASE("regular-part radius estimates stay near the unit disk")
{
    CHECK(fwx::engine_for(gauss_set())->w_radius_estimate(1.0, 60) > 0.9);
    CHECK(fwx::engine_for(three_upper_set())->w_radius_estimate(1.0, 40) >= 0.45);
    CHECK(fwx::engine_for(half_scale_set())->w_radius_estimate(3.0, 40) >= 0.45);
}

TEST_CASE("coincident exponent streams set the log multiplicity")
{
    CHECK(fwx::engine_for(gauss_set())->leading_multiplicity() == 1);
    CHECK(fwx::engine_for(zero_balanced_set())->leading_multiplicity() == 2);
    CHECK(fwx::engine_for(half_scale_set())->leading_multiplicity() == 2);
}

TEST_CASE("engines are cached per parameter set and prefixes match")
{
    auto a = fwx::engine_for(gauss_set());
    auto b = fwx::engine_for(gauss_set());
    CHECK(a.get() == b.get());
    auto c = fwx::engine_for(ParameterSet({0.5, 0.7}, {1, 1}, {1.31}, {1}));
    CHECK(a.get() != c.get());

    auto prefix = a->v_prefix(1.0, 0.0, 12);
    REQUIRE(prefix.size() == 13);
    for (int n = 0; n <= 12; ++n)
        CHECK(rel_gap(prefix[std::size_t(n)], a->v_n(1.0, 0.0, n)) < 1e-30);
}
