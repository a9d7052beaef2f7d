"""The concrete towers and automorphisms used by the sextic construction."""

from __future__ import annotations

from .field import TowerAutomorphism, TowerSpec

ZETA3 = "zeta3"
SQRT_U = "sqrt_u"
SQRT_V = "sqrt_v"
CBRT_P = "cbrt_p"
COS7 = "cos7"

# 8x^3 + 4x^2 - 4x - 1, the minimal polynomial of cos(2 pi / 7)
COS7_MINPOLY = (-1, -4, 4, 8)


def rationals() -> TowerSpec:
    return TowerSpec.base()


def adjoin_zeta3(spec: TowerSpec, label: str = ZETA3) -> TowerSpec:
    return spec.extend(label, [1, 1, 1])


def adjoin_sqrt(spec: TowerSpec, r, label: str) -> TowerSpec:
    return spec.extend(label, [-spec.coerce(r), 0, 1])


def adjoin_cbrt(spec: TowerSpec, r, label: str) -> TowerSpec:
    return spec.extend(label, [-spec.coerce(r), 0, 0, 1])


def adjoin_cos7(spec: TowerSpec, label: str = COS7) -> TowerSpec:
    return spec.extend(label, COS7_MINPOLY)


def eisenstein_field() -> TowerSpec:
    """``Q(zeta3)``."""
    return adjoin_zeta3(rationals())


def biquadratic_tower(u, v) -> TowerSpec:
    """``L = Q(zeta3)(sqrt u)(sqrt v)``, degree 8."""
    return adjoin_sqrt(adjoin_sqrt(eisenstein_field(), u, SQRT_U), v, SQRT_V)


def cbrt_tower(u, v, p) -> TowerSpec:
    """``L(p^(1/3))``, degree 24; carries the diagonal change of variables."""
    return adjoin_cbrt(biquadratic_tower(u, v), p, CBRT_P)


def splitting_tower(u, v, p) -> TowerSpec:
    """``M' = L(cos 2pi/7)(p^(1/3))``, degree 72, where every automorphism of
    the twisted curve is defined."""
    return adjoin_cbrt(adjoin_cos7(biquadratic_tower(u, v)), p, CBRT_P)


def cubic_descent_tower(u, v, p) -> TowerSpec:
    """``L(p^(1/3))(cos 2pi/7)``: the cosine step on top, so that the Galois
    group over the base ``L(p^(1/3))`` is the cyclic group moving the cosine."""
    return adjoin_cos7(cbrt_tower(u, v, p))


def cos7_rotation(spec: TowerSpec, label: str = COS7) -> TowerAutomorphism:
    """``cos(2pi/7) -> cos(4pi/7) = 2cos(2pi/7)^2 - 1``, fixing the rest."""
    c = spec.gen(label)
    return TowerAutomorphism.from_mapping(spec, {label: c * c * 2 - 1}, name="sigma")


def cbrt_rotation(spec: TowerSpec, label: str = CBRT_P, zeta: str = ZETA3) -> TowerAutomorphism:
    """``p^(1/3) -> zeta3 p^(1/3)``, fixing the rest."""
    return TowerAutomorphism.from_mapping(spec, {label: spec.gen(zeta) * spec.gen(label)}, name="tau")


def sqrt_conjugation(spec: TowerSpec, label: str) -> TowerAutomorphism:
    return TowerAutomorphism.from_mapping(spec, {label: -spec.gen(label)}, name=f"conj_{label}")
