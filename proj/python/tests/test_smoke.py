import math

import pytest

pyfwx = pytest.importorskip("pyfwx")
scipy_special = pytest.importorskip("scipy.special")


def gauss_params(a=0.5, b=0.7, c=1.3):
    return pyfwx.Params([a, b], b=[c])


def hyp_prefactor(a=0.5, b=0.7, c=1.3):
    return math.gamma(a) * math.gamma(b) / math.gamma(c)


def rel(got, want):
    return abs(got - want) / max(1.0, abs(want))


def test_derived_constants():
    ps = gauss_params()
    assert ps.p == 2 and ps.q == 1
    assert abs(ps.rho - 1.0) < 1e-14
    assert abs(ps.mu - 0.1) < 1e-14
    assert abs(ps.nu - 1.0) < 1e-14
    assert ps.alpha > 0
    assert ps.all_real
    assert "rho=1" in repr(ps)


def test_interior_matches_hyp2f1():
    ps = gauss_params()
    pref = hyp_prefactor()
    for z in (0.5, 0.3 + 0.2j, -0.8 + 0.1j):
        got = pyfwx.eval(ps, z)["value"]
        want = pref * complex(scipy_special.hyp2f1(0.5, 0.7, 1.3, z))
        assert rel(got, want) < 1e-9


def test_exterior_matches_hyp2f1():
    ps = gauss_params()
    pref = hyp_prefactor()
    z = 1.2 + 0.3j
    want = pref * complex(scipy_special.hyp2f1(0.5, 0.7, 1.3, z))
    for rep in ("residue", "auto"):
        r = pyfwx.eval(ps, z, rep=rep)
        assert rel(r["value"], want) < 1e-8


def test_value_at_rho_matches_gauss_summation():
    a, b, c = 0.5, 0.7, 1.3
    ps = gauss_params(a, b, c)
    want = (math.gamma(a) * math.gamma(b) * math.gamma(c - a - b)
            / (math.gamma(c - a) * math.gamma(c - b)))
    r = pyfwx.at_rho(ps)
    assert r["representation"] == "at-rho"
    assert abs(r["value"].imag) < 1e-12
    assert rel(r["value"].real, want) < 1e-9

    routed = pyfwx.eval(ps, 1.0)
    assert routed["representation"] == "at-rho"
    assert rel(routed["value"].real, want) < 1e-9


def test_representations_agree():
    ps = gauss_params()
    z = 0.7
    inner = pyfwx.eval(ps, z, rep="maclaurin")["value"]
    near = pyfwx.eval(ps, z, rep="singular")["value"]
    assert abs(inner - near) < 1e-8

    r = pyfwx.eval(ps, 0.97)
    assert r["representation"] == "singular"
    want = hyp_prefactor() * complex(scipy_special.hyp2f1(0.5, 0.7, 1.3, 0.97))
    assert rel(r["value"], want) < 1e-8


def test_schwarz_symmetry():
    ps = gauss_params()
    z = 0.5 + 0.35j
    up = pyfwx.eval(ps, z)["value"]
    down = pyfwx.eval(ps, z.conjugate())["value"]
    assert abs(up - down.conjugate()) < 1e-12


def test_cut_values_match_limits():
    ps = gauss_params()
    x = 2.0
    cv = pyfwx.cut(ps, x)
    assert cv["jump"].real == 0.0
    assert cv["average"].imag == 0.0

    pref = hyp_prefactor()
    eps = 1e-4
    f1 = pref * complex(scipy_special.hyp2f1(0.5, 0.7, 1.3, x + 1j * eps))
    f2 = pref * complex(scipy_special.hyp2f1(0.5, 0.7, 1.3, x + 1j * eps / 10))
    above = (10.0 * f2 - f1) / 9.0
    assert rel(cv["jump"].imag, 2.0 * above.imag) < 1e-6
    assert rel(cv["average"].real, above.real) < 1e-6


def test_coefficient_families():
    ps = gauss_params()
    ells = pyfwx.coeffs(ps, "l", count=8)
    assert len(ells) == 8
    assert abs(ells[0] - 1.0) < 1e-14

    v = pyfwx.coeffs(ps, "v", count=4)
    want_v0 = 1.0 / math.gamma(1.1)
    assert rel(v[0], want_v0) < 1e-12

    qs = pyfwx.coeffs(ps, "q", count=6)
    assert all(math.isfinite(q.real) and math.isfinite(q.imag) for q in qs)


def test_w_radius_estimate():
    ps = gauss_params()
    assert pyfwx.w_radius(ps) >= 0.45


def test_error_taxonomy():
    with pytest.raises(pyfwx.DeltaError):
        pyfwx.Params([0.5], [1.0], [0.1], [0.1])
    ps = gauss_params()
    with pytest.raises(pyfwx.CutError):
        pyfwx.eval(ps, 1.5)
    with pytest.raises(pyfwx.DomainError):
        pyfwx.cut(ps, 0.5)
    with pytest.raises(pyfwx.ParseError):
        pyfwx.eval(ps, 0.5, rep="bogus")
    with pytest.raises(pyfwx.ParseError):
        pyfwx.parse_complex("not a number")
    with pytest.raises(pyfwx.Error):
        pyfwx.at_rho(ps, sigma=-2.0)


def test_parse_complex_literals():
    assert pyfwx.parse_complex("1.5") == 1.5 + 0j
    assert pyfwx.parse_complex("-2+0.3i") == -2 + 0.3j
    assert pyfwx.parse_complex("0.7-0.2i") == 0.7 - 0.2j
