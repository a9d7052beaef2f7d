"""The Hessian-invariant sextic family and its cube-root rescaling."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .tower.field import TowerSpec, as_rational
from .tower.galois import is_rational_square
from .tower.serialize import element_from_json, element_to_json, spec_from_json, spec_to_json
from .tower.standard import SQRT_U, SQRT_V, ZETA3, biquadratic_tower, cbrt_tower
from .ternary.forms import TernaryForm
from .ternary.smooth import squarefree_check

FORMAT_VERSION = 1
PROVENANCES = ("huggins", "scaled", "twisted", "custom")


class ParameterError(ValueError):
    pass


class SquarefreeGuardError(ValueError):
    pass


@dataclass(frozen=True)
class HugginsParams:
    u: Fraction
    v: Fraction
    p: int | None = None

    def __post_init__(self):
        u, v = as_rational(self.u), as_rational(self.v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if not u or not v:
            raise ParameterError("u and v must be nonzero")
        for name, r in (("u", u), ("v", v), ("uv", u * v)):
            if is_rational_square(r):
                raise ParameterError(f"{name} must be a non-square (got {name} = {r}, a square in Q)")
            # a non-square of Q stays a non-square in Q(zeta3) unless it is -3 times a square
            if is_rational_square(-3 * r):
                raise ParameterError(f"{name} must be a non-square (got {name} = {r}, a square in Q(zeta3))")
        if self.p is not None:
            p = int(self.p)
            if p != self.p or p < 2 or not sympy.isprime(p):
                raise ParameterError(f"p = {self.p} must be a prime")
            object.__setattr__(self, "p", p)

    def to_json(self) -> dict:
        out = {"u": str(self.u), "v": str(self.v)}
        if self.p is not None:
            out["p"] = self.p
        return out


def genus(d: int) -> int:
    """Genus of a smooth plane curve of degree ``d``."""
    if d < 3:
        raise ValueError("plane models need degree >= 3")
    return (d - 1) * (d - 2) // 2


def build_invariants(spec: TowerSpec | None = None):
    """The invariants ``XYZ``, ``X^3+Y^3+Z^3`` and ``X^3Y^3+Y^3Z^3+Z^3X^3``."""
    spec = spec or TowerSpec.base()
    one, zero = spec.one, spec.zero
    phi = TernaryForm({(1, 1, 1): one}, zero)
    psi = TernaryForm({(3, 0, 0): one, (0, 3, 0): one, (0, 0, 3): one}, zero)
    chi = TernaryForm({(3, 3, 0): one, (0, 3, 3): one, (3, 0, 3): one}, zero)
    return phi, psi, chi


def build_coefficients(u, v, spec: TowerSpec | None = None):
    """The three coefficients of ``phi^2``, ``phi psi`` and ``psi^2``."""
    params = HugginsParams(u, v)
    spec = spec or biquadratic_tower(params.u, params.v)
    z = spec.gen(ZETA3)
    su, sv = spec.gen(SQRT_U), spec.gen(SQRT_V)
    suv = su * sv
    z2 = z * z
    c_phi2 = z * su + sv + z2 * suv
    c_phipsi = z2 * su + sv + z * suv
    c_psi2 = su + sv + suv - Fraction(1, 12)
    return c_phi2, c_phipsi, c_psi2


@dataclass
class PlaneCurve:
    form: TernaryForm
    provenance: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.form.is_zero():
            raise ValueError("the zero form is not a curve")

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def genus(self) -> int:
        return genus(self.form.degree)

    @property
    def spec(self) -> TowerSpec:
        return self.form.zero.spec

    def to_json(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "tower": spec_to_json(self.spec),
            "terms": form_to_json(self.form)["terms"],
            "metadata": {"degree": self.degree, "genus": self.genus,
                         "provenance": self.provenance, "params": self.params},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PlaneCurve":
        form = form_from_json(obj)
        meta = obj.get("metadata", {})
        return cls(form, meta.get("provenance", "custom"), meta.get("params", {}))


def form_to_json(F: TernaryForm) -> dict:
    spec = F.zero.spec
    return {"version": FORMAT_VERSION, "tower": spec_to_json(spec),
            "terms": [{"exp": list(e), "coef": element_to_json(F.terms[e])}
                      for e in sorted(F.terms, reverse=True)]}


def form_from_json(obj: dict) -> TernaryForm:
    spec = spec_from_json(obj["tower"])
    terms = {}
    for t in obj["terms"]:
        e = tuple(t["exp"])
        if e in terms:
            raise ValueError(f"duplicate monomial {e}")
        terms[e] = element_from_json(t["coef"], spec)
    if not any(terms.values()):
        raise ValueError("the zero form is not a curve")
    return TernaryForm(terms, spec.zero)


def _guard(F: TernaryForm):
    r = squarefree_check(F.dehomogenize("X", (1, 1)))
    if not r:
        raise SquarefreeGuardError("F(X,1,1) is not square free")
    return r


def build_huggins_form(u, v, spec: TowerSpec | None = None, guard: bool = True) -> PlaneCurve:
    """``c1 phi^2 - 6 c2 phi psi - 18 c3 psi^2 + chi`` over ``Q(zeta3, sqrt u, sqrt v)``.

    With ``guard=False`` a failing square-free check is tolerated and the
    curve is tagged ``custom``.
    """
    params = HugginsParams(u, v)
    spec = spec or biquadratic_tower(params.u, params.v)
    c1, c2, c3 = build_coefficients(params.u, params.v, spec)
    phi, psi, chi = build_invariants(spec)
    F = phi * phi * c1 - phi * psi * (c2 * 6) - psi * psi * (c3 * 18) + chi
    provenance = "huggins"
    try:
        _guard(F)
    except SquarefreeGuardError:
        if guard:
            raise
        provenance = "custom"
    return PlaneCurve(F, provenance, params.to_json())


def build_scaled_form(u, v, p, spec: TowerSpec | None = None) -> PlaneCurve:
    """The rescaled model, typed in monomial by monomial from its closed form
    (not derived by substitution, so the two routes can be compared)."""
    params = HugginsParams(u, v, p)
    p = params.p
    spec = spec or cbrt_tower(params.u, params.v, p)
    c1, c2, c3 = build_coefficients(params.u, params.v, spec)
    one, zero = spec.one, spec.zero
    ip = Fraction(1, p)
    phi = TernaryForm({(1, 1, 1): one}, zero)
    psi_p = TernaryForm({(3, 0, 0): one, (0, 3, 0): one * ip, (0, 0, 3): one * ip * ip}, zero)
    tail = TernaryForm({(3, 3, 0): one * ip, (0, 3, 3): one * ip ** 3, (3, 0, 3): one * ip ** 2}, zero)
    F = (phi * phi * (c1 * ip * ip) - phi * psi_p * (c2 * 6 * ip)
         - psi_p * psi_p * (c3 * 18) + tail)
    _guard(F)
    return PlaneCurve(F, "scaled", params.to_json())


def huggins_monomials():
    """The ten monomials that can occur in the family."""
    return sorted({(6, 0, 0), (0, 6, 0), (0, 0, 6), (3, 3, 0), (0, 3, 3), (3, 0, 3),
                   (4, 1, 1), (1, 4, 1), (1, 1, 4), (2, 2, 2)}, reverse=True)
