"""JSON layout for towers and their elements.

An element is ``{"tower": [labels...], "coords": nested}`` where ``nested`` is
a list indexed by the top generator's exponent whose entries are the nested
coordinates one step down; leaves are ``"n/d"`` strings.  A tower is
``{"steps": [{"label": ..., "minpoly": [element of the tower below, ...]}]}``
with minimal-polynomial coefficients low to high.
"""

from __future__ import annotations

from fractions import Fraction

from .field import TowerElement, TowerError, TowerSpec


def rational_to_json(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rational_from_json(s) -> Fraction:
    return Fraction(s)


def _nest(spec: TowerSpec, coords):
    if spec.parent is None:
        return rational_to_json(coords[0])
    P = spec.parent.dim
    return [_nest(spec.parent, coords[t * P:(t + 1) * P]) for t in range(spec.step_degree)]


def _flatten(spec: TowerSpec, nested):
    if spec.parent is None:
        return (rational_from_json(nested),)
    if len(nested) != spec.step_degree:
        raise TowerError(f"step {spec.label!r}: expected {spec.step_degree} entries")
    out: tuple = ()
    for part in nested:
        out += _flatten(spec.parent, part)
    return out


def element_to_json(a: TowerElement) -> dict:
    return {"tower": list(a.spec.labels), "coords": _nest(a.spec, a.coords)}


def element_from_json(obj: dict, spec: TowerSpec) -> TowerElement:
    labels = tuple(obj["tower"])
    sub = spec.sub(len(labels))
    if sub.labels != labels:
        raise TowerError(f"element tower {labels} is not a prefix of {spec.labels}")
    return spec.coerce(sub.element(_flatten(sub, obj["coords"])))


def spec_to_json(spec: TowerSpec) -> dict:
    return {"steps": [{"label": label, "minpoly": [element_to_json(c) for c in mp.coeffs]}
                      for label, mp in spec.steps()]}


def spec_from_json(obj: dict) -> TowerSpec:
    spec = TowerSpec.base()
    for step in obj["steps"]:
        coeffs = [element_from_json(c, spec) for c in step["minpoly"]]
        spec = spec.extend(step["label"], coeffs)
    return spec
