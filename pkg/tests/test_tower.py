from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from planedescent.tower.field import ReducibleTowerError, TowerAutomorphism, TowerError
from planedescent.tower.galois import (absolute_norm, charpoly, enumerate_automorphisms, is_square,
                                       multiplicative_order, relative_norm, sqrt)
from planedescent.tower.serialize import element_from_json, element_to_json, spec_from_json, spec_to_json
from planedescent.tower.standard import (COS7, SQRT_U, SQRT_V, ZETA3, adjoin_cbrt, adjoin_cos7, adjoin_sqrt,
                                         biquadratic_tower, cos7_rotation, eisenstein_field,
                                         rationals, sqrt_conjugation)

L = biquadratic_tower(2, 13)
K = eisenstein_field()

# sympy images of the generators under one complex embedding
ZETA = (-1 + sympy.sqrt(-3)) / 2
RADICALS = {ZETA3: ZETA, SQRT_U: sympy.sqrt(2), SQRT_V: sympy.sqrt(13),
            COS7: sympy.cos(2 * sympy.pi / 7)}

coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def elements(spec):
    return st.lists(coef, min_size=spec.dim, max_size=spec.dim).map(spec.element)


def to_sympy(a):
    total = 0
    for i, c in enumerate(a.coords):
        term = sympy.Rational(Fr(c).numerator, Fr(c).denominator)
        for label, e in zip(a.spec.labels, a.spec.exponents(i)):
            term *= RADICALS[label] ** e
        total += term
    return total


def test_zeta_identities():
    z = K.gen(ZETA3)
    assert z * z * z == 1
    assert z * (z * z) == K.one
    assert z + z * z == -1


def test_sqrt2_inverse():
    s = adjoin_sqrt(rationals(), 2, "s").gen("s")
    assert s.inverse() == s * Fr(1, 2)


def test_reducible_step_detected_on_inversion():
    spec = adjoin_sqrt(rationals(), 4, "r")
    r = spec.gen("r")
    with pytest.raises(ReducibleTowerError, match="'r'"):
        (r - 2).inverse()


@given(elements(L), elements(L), elements(L))
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@pytest.mark.parametrize("spec", [K, L, adjoin_cos7(rationals())])
def test_charpoly_matches_sympy_minpoly(spec):
    t = sympy.Symbol("t")
    for coords in ([1, 2] + [0] * (spec.dim - 2), list(range(1, spec.dim + 1))):
        a = spec.element(coords)
        mp = sympy.Poly(sympy.minimal_polynomial(to_sympy(a), t), t).monic()
        cp = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in charpoly(a)])), t)
        assert cp.all_coeffs() == (mp ** (spec.dim // mp.degree())).all_coeffs()


@given(elements(L))
def test_absolute_norm_matches_charpoly(a):
    cp = charpoly(a)
    assert absolute_norm(a) == (-1) ** L.dim * cp[0]


def test_relative_norm_quadratic_formula():
    v = 13
    M = adjoin_sqrt(K, -v, "w")
    w = M.gen("w")
    x, y = K.gen(ZETA3) + 2, K.coerce(Fr(3, 2))
    n = relative_norm(M.coerce(x) + M.coerce(y) * w)
    assert n == M.coerce(x * x + y * y * v)
    assert relative_norm(M.one) == 1
    assert relative_norm(w) == v


@given(elements(K), elements(K))
def test_relative_norm_multiplicative(a, b):
    M = adjoin_sqrt(K, 5, "r")
    a = M.coerce(a) + M.gen("r") * b
    assert relative_norm(a * a) == relative_norm(a) * relative_norm(a)


def test_is_square_examples():
    assert is_square(-K.one) == (False, None)
    z = K.gen(ZETA3)
    ok, w = is_square(z * z)
    assert ok and w * w == z * z
    ok, w = is_square(rationals().coerce(4))
    assert ok and w == 2


@given(elements(K))
def test_sqrt_of_square(a):
    w = sqrt(a * a)
    assert w is not None and w * w == a * a


def test_automorphism_counts():
    assert len(enumerate_automorphisms(K)) == 2
    assert len(enumerate_automorphisms(L)) == 8
    assert len(enumerate_automorphisms(adjoin_cos7(rationals()))) == 3
    with pytest.raises(TowerError, match="'c'"):
        enumerate_automorphisms(adjoin_cbrt(rationals(), 2, "c"))
    # with zeta3 present the pure cubic becomes normal
    assert len(enumerate_automorphisms(adjoin_cbrt(K, 2, "c"))) == 6


@given(elements(L), elements(L))
def test_automorphisms_are_ring_homs(a, b):
    for g in enumerate_automorphisms(L):
        assert g(a * b) == g(a) * g(b)
        assert g(a + b) == g(a) + g(b)


def test_conjugation_on_coefficient():
    su, sv = L.gen(SQRT_U), L.gen(SQRT_V)
    c = su + sv + su * sv - Fr(1, 12)
    g = sqrt_conjugation(L, SQRT_U)
    assert g(c) == -su + sv - su * sv - Fr(1, 12)
    assert TowerAutomorphism.identity(L)(c) == c


def test_cos7_rotation_has_order_three():
    spec = adjoin_cos7(rationals())
    sigma = cos7_rotation(spec)
    assert sigma.order() == 3
    assert sigma.fixes(spec.coerce(Fr(7, 3)))


def test_invalid_automorphism_image():
    with pytest.raises(TowerError):
        TowerAutomorphism.from_mapping(K, {ZETA3: K.one})


@given(elements(L))
def test_serialization_round_trip(a):
    spec2 = spec_from_json(spec_to_json(L))
    assert spec2 == L
    assert element_from_json(element_to_json(a), spec2) == a


def test_prefix_coercion():
    a = K.gen(ZETA3)
    big = L.coerce(a)
    assert big.in_subtower(K) and big.restrict(K) == a
    assert not L.gen(SQRT_U).in_subtower(K)


@pytest.mark.parametrize("p,n,expected", [(3, 7, 6), (5, 7, 6), (1, 7, 1), (2, 7, 3), (6, 7, 2)])
def test_multiplicative_order(p, n, expected):
    assert multiplicative_order(p, n) == expected


def test_multiplicative_order_brute_force():
    for p in sympy.primerange(2, 500):
        if p == 7:
            continue
        brute = next(e for e in range(1, 7) if pow(p, e, 7) == 1)
        assert multiplicative_order(p, 7) == brute
