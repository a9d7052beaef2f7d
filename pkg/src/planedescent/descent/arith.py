"""Arithmetic side conditions: the inertia obstruction for the cube-root twist,
norm conics over ``Q(zeta3)``, level two, and quaternion embeddability."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np
import sympy

from ..tower.field import TowerSpec, as_rational
from ..tower.galois import OutOfScopeError, is_rational_square, is_square, multiplicative_order
from ..tower.standard import ZETA3, eisenstein_field

NONTRIVIAL = "NontrivialCocycle"
INCONCLUSIVE = "Inconclusive"

SOLVABLE = "Solvable"
LOCALLY_OBSTRUCTED = "LocallyObstructed"
NO_SOLUTION_UP_TO_HEIGHT = "NoSolutionUpToHeight"

EMBEDDABLE = "Embeddable"
NOT_EMBEDDABLE = "NotEmbeddable"


# -- the inertia argument -------------------------------------------------------------

@dataclass
class NormObstructionReport:
    p: int
    residue: int | None
    order: int | None
    inert: bool | None
    conclusion: str
    narrative: str

    def to_json(self) -> dict:
        return {"p": self.p, "residue_mod_7": self.residue, "order_mod_7": self.order,
                "inert_in_cubic_field": self.inert, "conclusion": self.conclusion,
                "narrative": self.narrative}

    def summary(self) -> str:
        if self.conclusion == NONTRIVIAL:
            return f"order {self.order}, inert, not a norm: nontrivial"
        return f"order {self.order}, {self.conclusion.lower()}: {self.narrative}"


def norm_obstruction(p: int) -> NormObstructionReport:
    """Decide whether the inertia argument shows ``p`` is not a norm from the
    cubic subfield of the 7th cyclotomic field (so the cocycle is nontrivial)."""
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"{p} is not a prime")
    if p == 7:
        return NormObstructionReport(
            7, 0, None, False, INCONCLUSIVE,
            "7 ramifies in the cubic field; the valuation argument does not apply")
    r = p % 7
    order = multiplicative_order(p, 7)
    # p is inert in the cubic field iff its class is not +-1 mod 7
    inert = r not in (1, 6)
    if order == 6:
        text = (f"p = {p} has order 6 mod 7, so it is inert in the cubic field and stays "
                "inert over every place of L (residue degrees there divide 8). "
                "For an inert cubic extension v(N(x)) = 3 v(x), while v(p) is 1, 2 or 4, "
                "so p is not a norm and the cocycle is nontrivial.")
        return NormObstructionReport(p, r, order, True, NONTRIVIAL, text)
    if inert:
        text = (f"p = {p} has order {order} mod 7; it is inert in the cubic field, "
                "but the rule used here only concludes for residues 3 and 5")
    else:
        text = f"p = {p} has order {order} mod 7 and splits in the cubic field"
    return NormObstructionReport(p, r, order, inert, INCONCLUSIVE, text)


# -- norm conics over Q(zeta3) ------------------------------------------------------------

def _valuation(n: int, ell: int) -> int:
    k = 0
    while n % ell == 0:
        n //= ell
        k += 1
    return k


def hilbert_symbol(a, b, ell: int) -> int:
    """``(a, b)_ell`` for an odd prime ``ell`` and nonzero rationals."""
    if ell == 2:
        raise ValueError("odd primes only")
    a, b = Fraction(a), Fraction(b)
    va = _valuation(abs(a.numerator), ell) - _valuation(a.denominator, ell)
    vb = _valuation(abs(b.numerator), ell) - _valuation(b.denominator, ell)
    ua = a / Fraction(ell) ** va
    ub = b / Fraction(ell) ** vb

    def leg(u: Fraction) -> int:
        n = u.numerator * u.denominator     # same class mod squares
        return sympy.legendre_symbol(n % ell, ell)

    sign = -1 if (va * vb) % 2 and ell % 4 == 3 else 1
    return sign * (leg(ua) ** (vb % 2)) * (leg(ub) ** (va % 2))


@dataclass
class ConicStatus:
    verdict: str
    witness: tuple | None = None          # (x, y) tower elements
    place: dict | None = None
    height_bound: int | None = None
    searched: int = 0

    def to_json(self) -> dict:
        from ..tower.serialize import element_to_json

        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = [element_to_json(w) for w in self.witness]
        if self.place is not None:
            out["place"] = self.place
        if self.height_bound is not None:
            out["height_bound"] = self.height_bound
            out["candidates_searched"] = self.searched
        return out


def _integral_model(u: Fraction, v: Fraction):
    """Scale ``u, v`` by squares to integers; returns ``(U, V, s, t)`` with
    ``U = u s^2`` and ``V = v t^2``."""
    s, t = u.denominator, v.denominator
    return int(u * s * s), int(v * t * t), s, t


def local_obstruction(u, v, prime_bound: int = 1000):
    """First prime ``ell = 1 mod 3`` (so ``Q(zeta3)`` embeds in ``Q_ell``) at
    which ``x^2 + v y^2 + u z^2 = 0`` has no nontrivial ``ell``-adic zero."""
    u, v = as_rational(u), as_rational(v)
    bad = set()
    for r in (u, v):
        bad.update(sympy.primefactors(r.numerator))
        bad.update(sympy.primefactors(r.denominator))
    for ell in sorted(bad):
        if ell > prime_bound or ell % 3 != 1:
            continue
        if hilbert_symbol(-u, -v, ell) == -1:
            return {"prime": ell, "hilbert_symbol": -1,
                    "reason": f"(-u, -v) is -1 at {ell}; the place of Q(zeta3) over {ell} has completion Q_{ell}"}
    return None


def _eisenstein_square_root(a: int, b: int):
    """Square root of ``a + b*zeta3`` in ``Z[zeta3]`` or ``None``."""
    K = eisenstein_field()
    ok, w = is_square(K.element((a, b)))
    return w if ok else None


def witness_search(u, v, height_bound: int):
    """Look for ``y = (b0 + b1 zeta3)/d`` with ``|b_i|, d <= height_bound`` such
    that ``-u - v y^2`` is a square ``x^2`` in ``Q(zeta3)``.

    The norm of ``-u d^2 - v (b0 + b1 zeta3)^2`` must be a perfect square; this
    filter runs vectorised and only survivors are tested exactly.
    Candidates are ordered by ``d``, then by ``max |b_i|``, preferring small and
    positive coordinates."""
    u, v = as_rational(u), as_rational(v)
    U, V, s, t = _integral_model(u, v)
    K = eisenstein_field()
    z = K.gen(ZETA3)
    H = int(height_bound)
    # exact Python integers when the norms could overflow int64
    peak = (abs(U) + 2 * abs(V)) * H * H
    dtype = np.int64 if 3 * peak * peak < 2 ** 62 else object
    rng = np.arange(-H, H + 1, dtype=np.int64).astype(dtype)
    b0, b1 = np.meshgrid(rng, rng, indexing="ij")
    b0, b1 = b0.ravel(), b1.ravel()
    rank = lambda b: 2 * np.abs(b) - (b > 0)
    order = np.lexsort((rank(b1), rank(b0), np.maximum(np.abs(b0), np.abs(b1))))
    b0, b1 = b0[order], b1[order]
    # (b0 + b1 z)^2 = b0^2 - b1^2 + (2 b0 b1 - b1^2) z   using z^2 = -1 - z
    sq_a = b0 * b0 - b1 * b1
    sq_b = 2 * b0 * b1 - b1 * b1
    searched = 0
    for d in range(1, H + 1):
        wa = -U * d * d - V * sq_a
        wb = -V * sq_b
        norm = wa * wa - wa * wb + wb * wb
        if dtype is object:
            root = np.array([isqrt(int(n)) for n in norm], dtype=object)
        else:
            root = np.rint(np.sqrt(norm.astype(np.float64))).astype(np.int64)
        hits = np.nonzero(root * root == norm)[0]
        for i in hits:
            if gcd(gcd(int(b0[i]), int(b1[i])), d) != 1:
                continue        # same y as a smaller denominator
            a_, b_ = int(wa[i]), int(wb[i])
            if (a_ * a_ - a_ * b_ + b_ * b_) != isqrt(a_ * a_ - a_ * b_ + b_ * b_) ** 2:
                continue
            w = _eisenstein_square_root(a_, b_)
            if w is None:
                continue
            # X^2 + V Y^2 = -U d^2 with Y = b0 + b1 z; scale back to u and v
            y = (z * int(b1[i]) + int(b0[i])) * Fraction(t, s * d)
            x = w * Fraction(1, s * d)
            if x * x + y * y * v != -u:
                raise ArithmeticError("witness failed exact verification")
            return (x, y), searched + int(i) + 1
        searched += len(b0)
    return None, searched


def conic_solvability(u, v, height_bound: int = 50, local_check: bool = True,
                      prime_bound: int = 1000) -> ConicStatus:
    """Is ``-u = x^2 + v y^2`` solvable with ``x, y`` in ``Q(zeta3)``?"""
    u, v = as_rational(u), as_rational(v)
    if not u or not v:
        raise ValueError("u and v must be nonzero")
    if local_check:
        obs = local_obstruction(u, v, prime_bound)
        if obs is not None:
            return ConicStatus(LOCALLY_OBSTRUCTED, place=obs)
    wit, searched = witness_search(u, v, height_bound)
    if wit is not None:
        return ConicStatus(SOLVABLE, witness=wit, height_bound=height_bound, searched=searched)
    return ConicStatus(NO_SOLUTION_UP_TO_HEIGHT, height_bound=height_bound, searched=searched)


# -- level two and quaternion embeddings ---------------------------------------------

@dataclass
class LevelTwoResult:
    level_two: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.level_two

    def to_json(self) -> dict:
        from ..tower.serialize import element_to_json

        out = {"level_two": self.level_two, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = [element_to_json(w) for w in self.witness]
        return out


def _small_elements(spec: TowerSpec, bound: int):
    """Elements with coordinates in ``[-bound, bound]``, smallest first."""
    import itertools

    vals = sorted(range(-bound, bound + 1), key=lambda c: (abs(c), c < 0))
    for coords in itertools.product(vals, repeat=spec.dim):
        yield spec.element(coords)


def level_two_check(spec: TowerSpec, bound: int = 1) -> LevelTwoResult:
    """``-1`` is not a square in the field but is a sum of two squares."""
    if spec.dim > 4:
        raise OutOfScopeError("level-two check supports towers of degree <= 4")
    minus_one = spec.coerce(-1)
    square, w = is_square(minus_one)
    if square:
        return LevelTwoResult(False, reason=f"-1 is a square: ({w})^2 = -1")
    if spec.depth == 0:
        return LevelTwoResult(False, reason="Q is real: a sum of rational squares is never -1")
    elems = list(_small_elements(spec, bound))
    squares = {}
    for x in elems:
        squares.setdefault(x * x, x)
    for x in elems:
        target = minus_one - x * x
        y = squares.get(target)
        if y is not None:
            return LevelTwoResult(True, witness=(x, y), reason="-1 = x^2 + y^2")
    return LevelTwoResult(False, reason=f"no pair with coordinates in [-{bound}, {bound}]")


@dataclass
class EmbeddingResult:
    verdict: str
    conic: ConicStatus | None = None
    reason: str = ""

    def summary(self) -> str:
        if self.verdict == NOT_EMBEDDABLE and self.conic and self.conic.place:
            return f"{NOT_EMBEDDABLE} (local obstruction at {self.conic.place['prime']})"
        return self.verdict + (f" ({self.reason})" if self.reason else "")

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason,
                "conic": self.conic.to_json() if self.conic else None}


class PreconditionError(ValueError):
    pass


def quaternion_embedding_check(u, v, height_bound: int = 50, local_check: bool = True) -> EmbeddingResult:
    """``Q(zeta3)(sqrt u, sqrt v)`` embeds in a quaternion extension iff ``-u`` is
    a norm from ``Q(zeta3)(sqrt -v)``, i.e. the conic is solvable."""
    K = eisenstein_field()
    lvl = level_two_check(K)
    if not lvl:
        raise PreconditionError(f"base field is not of level two: {lvl.reason}")
    u, v = as_rational(u), as_rational(v)
    for name, r in (("u", u), ("v", v), ("uv", u * v)):
        if not r or is_rational_square(r) or is_rational_square(-3 * r):
            raise PreconditionError(f"{name} = {r} must be a non-square in Q(zeta3)")
    st = conic_solvability(u, v, height_bound, local_check)
    if st.verdict == SOLVABLE:
        return EmbeddingResult(EMBEDDABLE, st, "conic has a point")
    if st.verdict == LOCALLY_OBSTRUCTED:
        return EmbeddingResult(NOT_EMBEDDABLE, st, f"local obstruction at {st.place['prime']}")
    return EmbeddingResult(INCONCLUSIVE, st, f"no witness up to height {height_bound}")
