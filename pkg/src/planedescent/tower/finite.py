"""Finite fields ``F_{q^m}`` and placements of a tower into them.

A placement is a ring homomorphism from the ``q``-integral part of a tower to
``F_{q^m}``: it fixes one root of each reduced step polynomial.  It supports the
good-reduction smoothness probe.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

import sympy

from ..poly import UniPoly, poly_gcd
from .field import TowerElement, TowerSpec


class InadmissibleError(ValueError):
    """Data is not integral at the chosen prime, or no admissible prime exists."""


class FiniteField:
    """``F_{q^m}`` as ``F_q[t]/(modulus)``; elements are :class:`FFElement`."""

    def __init__(self, q: int, m: int = 1, modulus: tuple[int, ...] | None = None):
        if not sympy.isprime(q):
            raise ValueError(f"{q} is not prime")
        self.q = q
        self.m = m
        self.order = q ** m
        if m > 1:
            self.modulus = tuple(modulus) if modulus is not None else conway_like_modulus(q, m)
        else:
            self.modulus = (0, 1)
        self.zero = FFElement(self, 0 if m == 1 else (0,) * m)
        self.one = self(1)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.q, self.m, self.modulus) == (other.q, other.m, other.modulus)

    def __hash__(self):
        return hash((self.q, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.q}^{self.m})"

    def __call__(self, x) -> "FFElement":
        if isinstance(x, FFElement):
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.q == 0:
                raise InadmissibleError(f"{x} is not {self.q}-integral")
            v = x.numerator * pow(x.denominator, -1, self.q) % self.q
        elif isinstance(x, int):
            v = x % self.q
        elif isinstance(x, (tuple, list)):
            if self.m == 1:
                return FFElement(self, x[0] % self.q)
            t = [c % self.q for c in x] + [0] * (self.m - len(x))
            return FFElement(self, tuple(t))
        else:
            raise TypeError(f"cannot coerce {x!r} into {self}")
        return FFElement(self, v if self.m == 1 else (v,) + (0,) * (self.m - 1))

    def from_int(self, n: int) -> "FFElement":
        digits = []
        for _ in range(self.m):
            n, d = divmod(n, self.q)
            digits.append(d)
        return self(tuple(digits))

    def elements(self):
        for n in range(self.order):
            yield self.from_int(n)

    def _mul(self, a, b):
        q, m = self.q, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % q
            if c:
                for s in range(m):
                    prod[k - m + s] -= c * mod[s]
        return tuple(c % q for c in prod[:m])


class FFElement:
    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FFElement):
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        F = self.field
        if F.m == 1:
            return FFElement(F, (self.v + o.v) % F.q)
        return FFElement(F, tuple((a + b) % F.q for a, b in zip(self.v, o.v)))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        if F.m == 1:
            return FFElement(F, -self.v % F.q)
        return FFElement(F, tuple(-a % F.q for a in self.v))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        F = self.field
        if F.m == 1:
            return FFElement(F, self.v * o.v % F.q)
        return FFElement(F, F._mul(self.v, o.v))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        F = self.field
        if n < 0:
            return self.inverse() ** (-n)
        if F.m == 1:
            return FFElement(F, pow(self.v, n, F.q))
        result, base = F.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FFElement":
        if not self:
            raise ZeroDivisionError("inverse of zero in finite field")
        F = self.field
        if F.m == 1:
            return FFElement(F, pow(self.v, -1, F.q))
        return self ** (F.order - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def pth_root(self) -> "FFElement":
        """Inverse Frobenius ``a^(1/q)``."""
        return self ** (self.field.order // self.field.q)

    def __bool__(self):
        return bool(self.v) if self.field.m == 1 else any(self.v)

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.v == other.v
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def to_int(self) -> int:
        if self.field.m == 1:
            return self.v
        n = 0
        for c in reversed(self.v):
            n = n * self.field.q + c
        return n

    def __repr__(self):
        if self.field.m == 1:
            return str(self.v)
        terms = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(self.v) if c]
        return "(" + (" + ".join(terms) or "0") + ")"


# -- polynomials over finite fields ---------------------------------------------------

def poly_powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly([base.one], base.zero)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def _is_irreducible_prime_field(coeffs, q: int) -> bool:
    F = FiniteField(q)
    f = UniPoly([F(c) for c in coeffs], F.zero)
    m = f.degree
    x = UniPoly([F.zero, F.one], F.zero)
    if poly_powmod(x, q ** m, f) != x % f:
        return False
    for r in sympy.primefactors(m):
        h = poly_powmod(x, q ** (m // r), f) - x
        if poly_gcd(f, h).degree > 0:
            return False
    return True


@lru_cache(maxsize=None)
def conway_like_modulus(q: int, m: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree ``m``
    over ``F_q`` (low to high coefficients)."""
    for n in range(q ** m):
        low = []
        k = n
        for _ in range(m):
            k, d = divmod(k, q)
            low.append(d)
        coeffs = tuple(low) + (1,)
        if coeffs[0] == 0:
            continue
        if _is_irreducible_prime_field(coeffs, q):
            return coeffs
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{q}")


def _split_linear(g: UniPoly):
    """Roots of a monic product of distinct linear factors."""
    if g.degree <= 0:
        return []
    if g.degree == 1:
        return [-g[0] / g[1]]
    F = g.lc.field
    x = UniPoly([F.zero, F.one], F.zero)
    for n in range(1, F.order):
        delta = F.from_int(n)
        if F.q == 2:
            y = (x * delta) % g
            t = y
            acc = y
            for _ in range(F.m - 1):
                acc = (acc * acc) % g
                t = t + acc
        else:
            t = poly_powmod(x + delta, (F.order - 1) // 2, g) - 1
        d = poly_gcd(g, t)
        if 0 < d.degree < g.degree:
            return _split_linear(d) + _split_linear((g / d).monic())
    raise ArithmeticError("failed to split polynomial")  # unreachable for squarefree input


def ff_roots(f: UniPoly):
    """Distinct roots of ``f`` in its coefficient field, sorted by encoding."""
    if f.degree <= 0:
        return []
    F = f.lc.field
    f = f.monic()
    x = UniPoly([F.zero, F.one], F.zero)
    g = poly_gcd(f, poly_powmod(x, F.order, f) - x)
    return sorted(_split_linear(g), key=lambda r: r.to_int())


# -- placements ---------------------------------------------------------------------------

def _denominator_primes(spec: TowerSpec, extra=()) -> set[int]:
    dens = set()
    for _, mp in spec.steps():
        for c in mp.coeffs:
            for x in c.coords:
                if isinstance(x, Fraction):
                    dens.add(x.denominator)
    for r in extra:
        r = Fraction(r)
        dens.add(r.denominator)
    primes: set[int] = set()
    for d in dens:
        primes.update(sympy.primefactors(d))
    return primes


@dataclass
class FinitePlacement:
    """Homomorphism from a tower to ``F_{q^m}`` given by generator images."""

    spec: TowerSpec
    field: FiniteField
    images: tuple
    guard: frozenset = dc_field(default_factory=frozenset)

    def __post_init__(self):
        self._basis = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def m(self) -> int:
        return self.field.m

    def basis_images(self):
        if self._basis is None:
            F = self.field
            imgs = [F.one]
            for g, d in zip(self.images, self.spec.degrees):
                powers = [F.one]
                for _ in range(d - 1):
                    powers.append(powers[-1] * g)
                imgs = [pw * b for pw in powers for b in imgs]
            self._basis = imgs
        return self._basis

    def reduce(self, a) -> FFElement:
        """Image of a tower element (or rational); raises
        :class:`InadmissibleError` when a coordinate is not ``q``-integral."""
        F = self.field
        if not isinstance(a, TowerElement):
            return F(Fraction(a))
        if a.spec != self.spec:
            a = self.spec.coerce(a)
        acc = F.zero
        for c, b in zip(a.coords, self.basis_images()):
            if c:
                acc = acc + F(Fraction(c)) * b
        return acc

    def describe(self) -> dict:
        return {"q": self.q, "m": self.m, "modulus": list(self.field.modulus),
                "images": {lab: str(img) for lab, img in zip(self.spec.labels, self.images)}}


def _try_place(spec: TowerSpec, F: FiniteField, guard) -> FinitePlacement | None:
    images = []
    for i, (label, mp) in enumerate(spec.steps()):
        partial = FinitePlacement(spec.sub(i), F, tuple(images), guard)
        try:
            f = UniPoly([partial.reduce(c) for c in mp.coeffs], F.zero)
        except InadmissibleError:
            return None
        if poly_gcd(f, f.derivative()).degree > 0:
            return None        # ramified or degenerate at q
        roots = ff_roots(f)
        if not roots:
            return None
        images.append(roots[0])
    return FinitePlacement(spec, F, tuple(images), guard)


def placements(spec: TowerSpec, qmax: int, max_m: int = 6, units=()):
    """Admissible placements ordered by extension degree, then by prime."""
    guard = frozenset(_denominator_primes(spec, units))
    for m in range(1, max_m + 1):
        for q in sympy.primerange(2, qmax + 1):
            if q in guard:
                continue
            F = FiniteField(q, m)
            pl = _try_place(spec, F, guard)
            if pl is not None:
                yield pl


def find_placement(spec: TowerSpec, qmax: int, max_m: int = 6, units=()) -> FinitePlacement:
    """First admissible placement with ``q <= qmax``, preferring small ``m``.

    ``units`` are extra rationals whose denominators must be prime to ``q``.
    """
    if qmax < 2:
        raise ValueError("qmax must be at least 2")
    for pl in placements(spec, qmax, max_m, units):
        return pl
    raise InadmissibleError(f"no admissible prime <= {qmax} with extension degree <= {max_m}")
