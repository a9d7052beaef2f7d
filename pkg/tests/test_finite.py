from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from planedescent.poly import UniPoly
from planedescent.tower.finite import (FiniteField, InadmissibleError, conway_like_modulus, ff_roots,
                                       find_placement, placements)
from planedescent.tower.galois import enumerate_automorphisms
from planedescent.tower.standard import (SQRT_U, SQRT_V, ZETA3, adjoin_sqrt, biquadratic_tower,
                                         eisenstein_field, rationals)

FIELDS = [FiniteField(5), FiniteField(2, 3), FiniteField(3, 2), FiniteField(7, 2)]


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_field_axioms_exhaustive(F):
    els = list(F.elements())
    assert len(els) == F.order == F.q ** F.m
    nonzero = [a for a in els if a]
    for a in nonzero:
        assert a * a.inverse() == F.one
        assert a ** (F.order - 1) == F.one
    # the multiplicative group is cyclic
    assert any(len({g ** k for k in range(F.order - 1)}) == F.order - 1 for g in nonzero)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_frobenius_and_pth_root(F):
    for a in F.elements():
        r = a.pth_root()
        assert r ** F.q == a


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2), (5, 3), (7, 2)])
def test_modulus_is_irreducible(q, m):
    x = sympy.Symbol("x")
    coeffs = conway_like_modulus(q, m)
    assert sympy.Poly(list(reversed(coeffs)), x, modulus=q).is_irreducible


def test_rational_reduction_guard():
    F = FiniteField(7)
    assert F(Fr(1, 2)) * 2 == F.one
    with pytest.raises(InadmissibleError):
        F(Fr(1, 7))


@given(st.lists(st.integers(0, 10), min_size=1, max_size=4))
def test_ff_roots_brute_force(roots):
    F = FiniteField(11)
    f = UniPoly([F.one], F.zero)
    for r in roots:
        f = f * UniPoly([-F.from_int(r), F.one], F.zero)
    f = f * UniPoly([F.one, F.zero, F.one], F.zero)   # x^2 + 1 has no roots mod 11
    got = [r.to_int() for r in ff_roots(f)]
    assert got == sorted(set(roots))


def test_placement_for_zeta3():
    K = eisenstein_field()
    pl = find_placement(K, 10)
    assert (pl.q, pl.m) == (7, 1)
    pl2 = find_placement(K, 2)
    assert (pl2.q, pl2.m) == (2, 2)
    with pytest.raises(InadmissibleError):
        find_placement(K, 2, max_m=1)


def test_guard_excludes_every_prime():
    spec = adjoin_sqrt(rationals(), Fr(1, 2 * 3 * 5 * 7), "r")
    with pytest.raises(InadmissibleError):
        find_placement(spec, 7, max_m=1)


def test_placement_is_a_ring_hom():
    L = biquadratic_tower(2, 13)
    pl = find_placement(L, 200)
    z, su, sv = L.gen(ZETA3), L.gen(SQRT_U), L.gen(SQRT_V)
    elts = [z + su, sv * Fr(3, 5) - z, su * sv + 1]
    for a in elts:
        for b in elts:
            assert pl.reduce(a * b) == pl.reduce(a) * pl.reduce(b)
            assert pl.reduce(a + b) == pl.reduce(a) + pl.reduce(b)
    assert pl.reduce(su) ** 2 == pl.field(2)
    assert pl.reduce(sv) ** 2 == pl.field(13)


def test_placements_ordered_by_degree_then_prime():
    K = eisenstein_field()
    seen = [(pl.m, pl.q) for _, pl in zip(range(12), placements(K, 50, max_m=2))]
    assert seen == sorted(seen)
    assert all(q % 3 == 1 for m, q in seen if m == 1)


def test_every_automorphism_has_a_placement_image():
    # sanity: placements and automorphisms agree on the number of roots at a split prime
    K = eisenstein_field()
    pl = find_placement(K, 10)
    roots = ff_roots(UniPoly([pl.field.one] * 3, pl.field.zero))
    assert len(roots) == len(enumerate_automorphisms(K)) == 2
