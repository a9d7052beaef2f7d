"""Dense univariate polynomials over an exact field, plus the elimination kernels
(Bareiss determinants, Sylvester resultants, Euclidean gcd) shared by the tower,
finite-field and ternary-form code.

Coefficients are any objects supporting ``+ - * /``, unary minus and truthiness
for the zero test: ``fractions.Fraction``, tower elements, finite-field elements,
or ``UniPoly`` itself (a polynomial ring; only exact division is defined there).
"""

from __future__ import annotations

from typing import Callable, Sequence


class UniPoly:
    """Polynomial ``c[0] + c[1] x + ... + c[n] x^n`` with ``c[n]`` nonzero.

    The zero polynomial has ``coeffs == ()`` and degree -1.  ``zero`` is the
    zero element of the coefficient ring; it is needed to build results when a
    polynomial is empty.
    """

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs: Sequence, zero):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)
        self.zero = zero

    # -- construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, c, zero):
        return cls([c], zero)

    @classmethod
    def monomial(cls, c, n: int, zero):
        return cls([zero] * n + [c], zero)

    def _new(self, coeffs):
        return UniPoly(coeffs, self.zero)

    @property
    def one(self):
        return self.zero + 1

    # -- basic queries ---------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.zero

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return not other
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = [f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + " + ".join(terms) + ")"

    # -- arithmetic ------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([self.zero + other], self.zero)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            if not other:
                return self._new(())
            return self._new([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        out = [self.zero] * (len(a) + len(b) - 1)
        nzb = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in nzb:
                out[i + j] = out[i + j] + x * y
        return self._new(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        result = self._new([self.one])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly"):
        """Quotient and remainder; the divisor's leading coefficient must be
        invertible in the coefficient ring."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return self._new(()), self
        inv = self.one / other.lc
        q = [self.zero] * (dq + 1)
        oc = other.coeffs
        n = len(oc) - 1
        for k in range(dq, -1, -1):
            c = r[k + n]
            if not c:
                continue
            c = c * inv
            q[k] = c
            for j in range(n + 1):
                if oc[j]:
                    r[k + j] = r[k + j] - c * oc[j]
        return self._new(q), self._new(r[:n])

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def __truediv__(self, other):
        """Exact division: by a coefficient, or by a polynomial that divides."""
        if not isinstance(other, UniPoly):
            inv = self.one / other
            return self._new([c * inv for c in self.coeffs])
        if other.degree == 0:
            return self / other.coeffs[0]
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __rtruediv__(self, other):
        # only meaningful for constant self (e.g. ``one / c`` inside Bareiss)
        if self.degree != 0:
            raise ArithmeticError("polynomial is not a unit")
        return self._new([other / self.coeffs[0]])

    # -- calculus and evaluation ------------------------------------------------
    def __call__(self, x):
        acc = self.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return self._new([c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self / self.lc

    def map(self, fn: Callable, zero=None) -> "UniPoly":
        z = self.zero if zero is None else zero
        return UniPoly([fn(c) for c in self.coeffs], z)

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = other._new(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over a field (zero if both inputs are zero).

    Remainders are made monic as they appear, which keeps coefficient growth
    over number fields in check."""
    a, b = a.monic(), b.monic()
    while b:
        a, b = b, (a % b).monic()
    return a


def poly_xgcd(a: UniPoly, b: UniPoly):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    one = a.one
    r0, r1 = a, b
    s0, s1 = UniPoly([one], a.zero), UniPoly((), a.zero)
    t0, t1 = UniPoly((), a.zero), UniPoly([one], a.zero)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    return (a * b / poly_gcd(a, b)).monic()


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division in Bareiss elimination")
        return q
    return a / b


def det_bareiss(matrix, one, field: bool = True):
    """Determinant by fraction-free (Bareiss) elimination with row pivoting.

    Over a field the exact divisions by the previous pivot are done through one
    inverse per step; over a polynomial ring (``field=False``) they are exact
    polynomial divisions.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one
    zero = one - one
    sign = False
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = not sign
                    break
            else:
                return zero
        pivot = m[k][k]
        inv_prev = one / prev if field else None
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            lead = rowi[k]
            for j in range(k + 1, n):
                val = rowi[j] * pivot
                if lead and rowk[j]:
                    val = val - lead * rowk[j]
                if k:
                    val = val * inv_prev if field else _exact_div(val, prev)
                rowi[j] = val
            rowi[k] = zero
        prev = pivot
    d = m[n - 1][n - 1]
    return -d if sign else d


def sylvester_matrix(f: UniPoly, g: UniPoly, m: int | None = None, n: int | None = None):
    """Sylvester matrix of formal degrees ``m >= deg f`` and ``n >= deg g``,
    coefficients listed from the highest power down."""
    m = f.degree if m is None else m
    n = g.degree if n is None else n
    zero = f.zero
    size = m + n
    fc = [f[i] for i in range(m, -1, -1)]
    gc = [g[i] for i in range(n, -1, -1)]
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def resultant(f: UniPoly, g: UniPoly, field: bool = True):
    """``Res(f, g) = lc(f)^deg(g) * prod g(alpha)`` over the roots of ``f``,
    computed as the Bareiss determinant of the Sylvester matrix."""
    if not f or not g:
        return f.zero
    one = f.one
    if f.degree == 0 and g.degree == 0:
        return one
    return det_bareiss(sylvester_matrix(f, g), one, field=field)
