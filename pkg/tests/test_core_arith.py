import random
from fractions import Fraction

import pytest

from hcalg.core_arith import (
    MultiPoly,
    SquareRelationIdeal,
    approx_zero,
    default_tolerance,
    reduce_in_quotient,
    to_quotient,
)

VARS = ("m", "p", "mp1", "mmp", "mmpp1")


@pytest.fixture
def ring():
    m, p, mp1, mmp, mmpp1 = MultiPoly.gens(VARS)
    ideal = SquareRelationIdeal.from_generators(VARS, [
        m ** 2 + 1 - mp1 ** 2, m ** 2 + 1 - p ** 2 - mmpp1 ** 2, m ** 2 - p ** 2 - mmp ** 2])
    return ideal, (m, p, mp1, mmp)


def test_from_generators_picks_private_aux(ring):
    ideal, _ = ring
    assert ideal.base_vars == ("m", "p")
    assert set(ideal.aux_vars) == {"mp1", "mmp", "mmpp1"}


def test_from_generators_prefers_base_minus_square_shape():
    names = ("m", "p", "mpm1")
    m, p, mpm1 = MultiPoly.gens(names)
    ideal = SquareRelationIdeal.from_generators(names, [m ** 2 - 1 - p - mpm1 ** 2])
    assert ideal.aux_vars == ("mpm1",)


def test_from_generators_rejects_wrong_shape():
    names = ("a", "b")
    a, b = MultiPoly.gens(names)
    with pytest.raises(ValueError):
        SquareRelationIdeal.from_generators(names, [a * b - 1])


def test_generator_reduces_to_zero(ring):
    ideal, (m, p, mp1, mmp) = ring
    assert reduce_in_quotient(mp1 ** 2 - m ** 2 - 1, ideal).is_zero()


def test_constant_is_its_own_normal_form(ring):
    ideal, _ = ring
    five = MultiPoly.const(VARS, 5)
    assert reduce_in_quotient(five, ideal) == five


def test_product_of_two_squares(ring):
    ideal, (m, p, mp1, mmp) = ring
    expected = (m ** 2 + 1) * (m ** 2 - p ** 2)
    assert reduce_in_quotient((mp1 * mmp) ** 2, ideal) == expected


def test_unknown_variable_is_named(ring):
    ideal, _ = ring
    q = MultiPoly.var(("m", "zz"), "zz")
    with pytest.raises(ValueError, match="zz"):
        to_quotient(q, ideal)


def _random_poly(rng, gens, terms=4, deg=3):
    out = MultiPoly.const(VARS, 0)
    for _ in range(terms):
        mono = MultiPoly.const(VARS, Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        for g in gens:
            mono = mono * g ** rng.randint(0, deg)
        out = out + mono
    return out


def test_normal_form_is_idempotent(ring):
    ideal, gens = ring
    rng = random.Random(3)
    for _ in range(20):
        nf = reduce_in_quotient(_random_poly(rng, gens), ideal)
        assert reduce_in_quotient(nf, ideal) == nf


def test_normal_form_is_a_ring_homomorphism(ring):
    ideal, gens = ring
    rng = random.Random(7)
    nf = lambda x: reduce_in_quotient(x, ideal)
    for _ in range(20):
        a, b = _random_poly(rng, gens), _random_poly(rng, gens)
        assert nf(a * b) == nf(nf(a) * nf(b))
        assert nf(a + b) == nf(nf(a) + nf(b))


def test_rational_field_axioms():
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = (Fraction(rng.randint(-50, 50), rng.randint(1, 50)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * (1 / a) == 1


@pytest.mark.parametrize("x, scale, tol, expected", [
    (0.0, 1e6, 1e-9, True),
    (1e-12, 1.0, 1e-9, True),
    (1e-3, 1.0, 1e-9, False),
])
def test_approx_zero(x, scale, tol, expected):
    assert approx_zero(x, scale, tol) is expected


def test_tolerance_environment_override(monkeypatch):
    monkeypatch.delenv("HCALG_TOLERANCE", raising=False)
    assert default_tolerance() == 1e-9
    monkeypatch.setenv("HCALG_TOLERANCE", "1e-6")
    assert default_tolerance() == 1e-6
    monkeypatch.setenv("HCALG_TOLERANCE", "-1")
    with pytest.raises(ValueError):
        default_tolerance()
