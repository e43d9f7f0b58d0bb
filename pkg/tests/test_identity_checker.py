import math

import pytest

from hcalg.identity_checker import (
    BLOCK_LISTING,
    DenominatorVanishes,
    RatFunc,
    S1_PATHS,
    kappa_report,
    kappa_symbols,
    listing_suite,
    listing_suite_builders,
    run_all,
    run_listing,
    run_suite,
    s1_listing,
)


@pytest.mark.parametrize("name, build", listing_suite_builders(), ids=[n for n, _ in listing_suite_builders()])
def test_listing_suites_vanish(name, build):
    report = run_suite(build())
    assert report.results
    assert report.passed, report.text()


def test_kappa_identities_vanish():
    report = kappa_report()
    assert report.passed, report.text()
    assert len(report.results) >= 10


def test_perturbed_kappa_identity_is_caught():
    report = kappa_report(perturb=True)
    assert not report.passed
    assert [r.name for r in report.results if not r.passed] == ["sum of squares agrees for T and s0.T"]


def test_run_all_reports_every_suite():
    reports = run_all()
    assert len(reports) == len(listing_suite_builders()) + 1
    assert all("seconds" in r.info for r in reports)


def test_square_roots_and_fractions():
    I, v, _ = kappa_symbols()
    m, p, sm = v["m"], v["p"], v["sm"]
    assert (sm * sm - m).is_zero()
    assert (1 / (m + 1) + 1 / (m + 1) - 2 / (m + 1)).is_zero()
    assert ((m - p) / (m - p) - 1).is_zero()
    assert not (1 / (m + 1) - 1 / (m + 2)).is_zero()


def test_inverse_of_zero_raises():
    I, v, _ = kappa_symbols()
    with pytest.raises(DenominatorVanishes):
        (v["smp"] ** 2 - v["m"] + v["p"]).inverse()


def test_false_listing_fails():
    source = "Q:=RationalField(); <m,p>:=PolynomialRing(Q,2); x:=(m-p)/(m+p); Numerator(x);"
    report = run_suite(listing_suite("false", source))
    assert not report.passed


def test_listing_membership_check():
    source = """C := IntegerRing();  R<m,mp1> := PolynomialRing(C,2);
    Ideal := ideal<R|m^2+1-mp1^2>;  F := mp1^4 - (m^2+1)^2;  F in Ideal;"""
    res = run_listing("membership", source)
    assert res.ideal.aux_vars == ("mp1",)
    assert [label for label, _ in res.checks] == ["F"]
    assert run_suite(listing_suite("membership", source)).passed


def test_unknown_statement_is_rejected():
    with pytest.raises(SyntaxError):
        run_listing("bad", "Q:=RationalField(); <m>:=PolynomialRing(Q,1); print m;")
    with pytest.raises(SyntaxError):
        run_listing("no ring", "x := 1;")


def test_unknown_s1_path():
    assert set(S1_PATHS) == {"L1", "L2", "L3", "L4", "T2", "T3"}
    with pytest.raises(KeyError):
        s1_listing("L9")


def test_block_listing_with_sympy():
    # second route: the same expression, cleared of denominators by sympy
    sympy = pytest.importorskip("sympy")
    m, p = sympy.symbols("m p")
    k0, k1 = m * p * (m - p), m * (m + 1)
    k, k3 = k0 + k1, k0 + p * k1
    x = (k - 2 * k1 - 2 * k0 * k1 * (p - 1) / k3) ** 2 - p * (p + 1) * k \
        - p * (p + 1) * k * k0 * k1 * (p - 1) ** 2 / k3 ** 2
    num, _ = sympy.fraction(sympy.together(x))
    assert sympy.expand(num) == 0
    assert "k3:=k0+p*k1" in BLOCK_LISTING.replace(" ", "")


@pytest.mark.parametrize("m, p", [(5, 2), (9, 4), (12, 7)])
def test_kappa_identities_numerically(m, p):
    # second route: plug the square roots in as floats
    k0, k1 = math.sqrt(m * p * (m - p)), math.sqrt(m * (m + 1))
    k0p, k1p = math.sqrt((m + 1) * p * (m - p + 1)), math.sqrt((m - p) * (m - p + 1))
    ksq = k0 ** 2 + k1 ** 2
    assert ksq == pytest.approx(k0p ** 2 + k1p ** 2)
    assert k0 * k0p == pytest.approx(p * k1 * k1p)
    lhs = (k1 + k1p) ** 2 * ((k0 - k0p) ** 2 + (k1 - k1p) ** 2) / ((k0 - k0p) ** 2 + (k1 + k1p) ** 2)
    assert lhs == pytest.approx(p * (p + 1))
    N0 = 30.0
    c2 = k0 * k1 / (k0 ** 2 + p * k1 ** 2) * (N0 / ksq * (p - 1) + 1)
    c3 = k0p * k1p / (k0p ** 2 + p * k1p ** 2) * (N0 / ksq * (p - 1) + 1)
    assert c2 == pytest.approx(c3)


def test_ratfunc_rejects_floats():
    I, v, _ = kappa_symbols()
    with pytest.raises(TypeError):
        v["m"] + 0.5
    assert isinstance(v["m"] + 1, RatFunc)
