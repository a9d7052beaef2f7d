import json
from fractions import Fraction as Fr

import jsonschema
import pytest
import sympy

from planedescent.curves import (ParameterError, PlaneCurve, SquarefreeGuardError, build_coefficients,
                                 build_huggins_form, build_invariants, build_scaled_form, form_from_json,
                                 form_to_json, genus, huggins_monomials)
from planedescent.schemas import load_schema
from planedescent.ternary.forms import scalar_ratio, substitute
from planedescent.ternary.matrix import Matrix3
from planedescent.ternary.smooth import SMOOTH, SMOOTH_CERTIFIED, certify_smooth, smoothness_exact, squarefree_check
from planedescent.tower.standard import CBRT_P, SQRT_U, SQRT_V, ZETA3, biquadratic_tower, cbrt_tower

SX, SY, SZ = sympy.symbols("X Y Z")
C1, C2, C3 = sympy.symbols("c1 c2 c3")


def sympy_family():
    """The family with symbolic coefficients, expanded by sympy."""
    phi = SX * SY * SZ
    psi = SX ** 3 + SY ** 3 + SZ ** 3
    chi = SX ** 3 * SY ** 3 + SY ** 3 * SZ ** 3 + SZ ** 3 * SX ** 3
    F = C1 * phi ** 2 - 6 * C2 * phi * psi - 18 * C3 * psi ** 2 + chi
    return sympy.Poly(sympy.expand(F), SX, SY, SZ)


def test_genus():
    assert [genus(d) for d in (3, 4, 6)] == [1, 3, 10]


def test_invariants_at_one():
    phi, psi, chi = build_invariants()
    assert (phi(1, 1, 1), psi(1, 1, 1), chi(1, 1, 1)) == (1, 3, 3)


@pytest.mark.parametrize("u,v", [(1, 13), (2, 8), (2, 18), (Fr(-1, 3), 13), (0, 13)])
def test_parameter_validation(u, v):
    with pytest.raises(ParameterError):
        build_coefficients(u, v)


def test_non_square_message():
    with pytest.raises(ParameterError, match="u must be a non-square"):
        build_huggins_form(1, 13)
    with pytest.raises(ParameterError, match="prime"):
        build_scaled_form(2, 13, 4)


def test_coefficient_sum():
    L = biquadratic_tower(2, 13)
    c1, c2, _ = build_coefficients(2, 13, L)
    su, sv = L.gen(SQRT_U), L.gen(SQRT_V)
    assert c1 + c2 == -su + sv * 2 - su * sv


def test_coefficients_match_radicals():
    z = (-1 + sympy.sqrt(-3)) / 2
    su, sv = sympy.sqrt(2), sympy.sqrt(13)
    expected = (z * su + sv + z ** 2 * su * sv, z ** 2 * su + sv + z * su * sv, su + sv + su * sv - sympy.Rational(1, 12))
    L = biquadratic_tower(2, 13)
    radicals = {ZETA3: z, SQRT_U: su, SQRT_V: sv}
    for ours, ref in zip(build_coefficients(2, 13, L), expected):
        total = 0
        for i, c in enumerate(ours.coords):
            term = sympy.Rational(str(Fr(c)))
            for label, e in zip(L.labels, L.exponents(i)):
                term *= radicals[label] ** e
            total += term
        assert sympy.simplify(sympy.expand(total - ref)) == 0


def test_huggins_form_matches_symbolic_expansion(huggins):
    F = huggins.form
    c1, c2, c3 = build_coefficients(2, 13, F.zero.spec)
    ref = sympy_family()
    assert len(F.terms) == 10
    assert set(F.terms) == set(huggins_monomials())
    for monom, coeff in ref.terms():
        a, b, d = (coeff.coeff(C1), coeff.coeff(C2), coeff.coeff(C3))
        const = coeff.subs({C1: 0, C2: 0, C3: 0})
        expected = c1 * int(a) + c2 * int(b) + c3 * int(d) + int(const)
        assert F.coefficient(monom) == expected, monom


def test_named_coefficients(huggins):
    F = huggins.form
    c1, c2, c3 = build_coefficients(2, 13, F.zero.spec)
    assert F.coefficient((2, 2, 2)) == c1
    assert F.coefficient((4, 1, 1)) == c2 * -6
    assert F.coefficient((3, 3, 0)) == c3 * -36 + 1
    assert F.coefficient((6, 0, 0)) == c3 * -18


def test_squarefree_remark(huggins):
    r = squarefree_check(huggins.form.dehomogenize("X", (1, 1)))
    assert r.squarefree and r.resultant


def test_scaled_form_coefficients(scaled):
    S = scaled.form
    c1, c2, c3 = build_coefficients(2, 13, S.zero.spec)
    assert S.coefficient((6, 0, 0)) == c3 * -18
    assert S.coefficient((0, 3, 3)) == (c3 * -36 + 1) / 27


@pytest.mark.parametrize("p", [3, 5, 17, 19])
def test_scaled_identity_with_substitution(huggins, p):
    spec = cbrt_tower(2, 13, p)
    c = spec.gen(CBRT_P)
    D = Matrix3.diag(1, c.inverse(), (c * c).inverse(), spec)
    via_substitution = substitute(huggins.form.map_coefficients(spec.coerce, spec.zero), D)
    typed_in = build_scaled_form(2, 13, p, spec).form
    assert scalar_ratio(via_substitution, typed_in) == 1


def test_probe_certifies_huggins(huggins):
    r = certify_smooth(huggins.form, qmax=200)
    assert r.status == SMOOTH_CERTIFIED
    assert r.placement["q"] <= 200
    assert huggins.genus == 10


@pytest.mark.slow
def test_exact_smoothness_huggins(huggins):
    assert smoothness_exact(huggins.form).status == SMOOTH


def test_guard_flag(monkeypatch):
    import planedescent.curves as curves
    from planedescent.ternary.smooth import SquarefreeResult
    monkeypatch.setattr(curves, "squarefree_check", lambda f: SquarefreeResult(False, 0))
    with pytest.raises(SquarefreeGuardError):
        curves.build_huggins_form(2, 13)
    assert curves.build_huggins_form(2, 13, guard=False).provenance == "custom"


def test_json_round_trip_and_schema(huggins, scaled):
    schema = load_schema("curve")
    for C in (huggins, scaled):
        obj = json.loads(json.dumps(C.to_json()))
        jsonschema.validate(obj, schema)
        back = PlaneCurve.from_json(obj)
        assert back.form == C.form and back.provenance == C.provenance
        jsonschema.validate(form_to_json(C.form), schema)
        assert form_from_json(form_to_json(C.form)) == C.form


def test_from_json_rejects_duplicates(huggins):
    obj = huggins.to_json()
    obj["terms"].append(obj["terms"][0])
    with pytest.raises(ValueError, match="duplicate"):
        form_from_json(obj)
