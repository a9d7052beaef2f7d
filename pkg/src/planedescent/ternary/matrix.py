"""3x3 matrices over a tower, with projective equality."""

from __future__ import annotations

import re
from fractions import Fraction

from ..tower.field import TowerElement, TowerSpec


class Matrix3:
    """Invertible-or-not 3x3 matrix with tower entries.  Acts on coordinate
    columns; the determinant is computed once and cached."""

    __slots__ = ("rows", "spec", "_det")

    def __init__(self, rows, spec: TowerSpec | None = None):
        rows = [list(r) for r in rows]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Matrix3 needs 3 rows of 3 entries")
        if spec is None:
            spec = TowerSpec.base()
            for r in rows:
                for x in r:
                    if isinstance(x, TowerElement) and x.spec.depth > spec.depth:
                        spec = x.spec
        self.spec = spec
        self.rows = tuple(tuple(spec.coerce(x) for x in r) for r in rows)
        self._det = None

    # -- constructors -------------------------------------------------------------
    @classmethod
    def identity(cls, spec: TowerSpec | None = None) -> "Matrix3":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]], spec)

    @classmethod
    def diag(cls, a, b, c, spec: TowerSpec | None = None) -> "Matrix3":
        return cls([[a, 0, 0], [0, b, 0], [0, 0, c]], spec)

    @classmethod
    def from_rule(cls, rule: str, spec: TowerSpec | None = None, **symbols) -> "Matrix3":
        """Matrix of a substitution written projectively, e.g. ``"[Y:Z:pX]"``
        with ``p=3``: component ``i`` is the linear form replacing variable ``i``."""
        body = rule.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        comps = body.split(":")
        if len(comps) != 3:
            raise ValueError(f"rule {rule!r} must have three components")
        rows = []
        for comp in comps:
            row = [Fraction(0)] * 3
            any_term = False
            for sign, coef, var in _TERM.findall(comp.replace(" ", "")):
                value = _coef_value(coef, symbols)
                if sign == "-":
                    value = -value
                row["XYZ".index(var)] = row["XYZ".index(var)] + value
                any_term = True
            if not any_term:
                raise ValueError(f"cannot parse component {comp!r}")
            rows.append(row)
        return cls(rows, spec)

    # -- basic operations -------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        return [x for r in self.rows for x in r]

    def __mul__(self, other):
        if isinstance(other, Matrix3):
            a, b = self.rows, other.rows
            spec = self.spec if self.spec.depth >= other.spec.depth else other.spec
            return Matrix3([[a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]
                             for j in range(3)] for i in range(3)], spec)
        return Matrix3([[x * other for x in r] for r in self.rows],
                       other.spec if isinstance(other, TowerElement) and other.spec.depth > self.spec.depth
                       else self.spec)

    def __rmul__(self, other):
        return self * other

    def __add__(self, other):
        return Matrix3([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix3([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Matrix3.identity(self.spec)
        for _ in range(n):
            result = result * self
        return result

    @property
    def det(self) -> TowerElement:
        if self._det is None:
            m = self.rows
            self._det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        return self._det

    def is_invertible(self) -> bool:
        return bool(self.det)

    def adjugate(self) -> "Matrix3":
        m = self.rows

        def cof(i, j):
            r = [x for x in range(3) if x != i]
            c = [x for x in range(3) if x != j]
            v = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            return v if (i + j) % 2 == 0 else -v

        return Matrix3([[cof(j, i) for j in range(3)] for i in range(3)], self.spec)

    def inverse(self) -> "Matrix3":
        d = self.det
        if not d:
            raise ZeroDivisionError("singular matrix")
        return self.adjugate() * d.inverse()

    def transpose(self) -> "Matrix3":
        return Matrix3([[self.rows[j][i] for j in range(3)] for i in range(3)], self.spec)

    def map(self, fn, spec: TowerSpec | None = None) -> "Matrix3":
        """Entrywise image, e.g. under a Galois automorphism."""
        return Matrix3([[fn(x) for x in r] for r in self.rows], spec or self.spec)

    def coerce(self, spec: TowerSpec) -> "Matrix3":
        return Matrix3(self.rows, spec)

    # -- projective structure ------------------------------------------------------------
    def first_nonzero(self) -> TowerElement:
        for x in self.entries():
            if x:
                return x
        raise ValueError("zero matrix")

    def normalized(self) -> "Matrix3":
        """Projective representative: first nonzero entry (row-major) equal to one."""
        lead = self.first_nonzero()
        if lead == 1:
            return self
        return self * lead.inverse()

    def projective_key(self):
        return tuple(x.coords for x in self.normalized().entries())

    def projectively_equal(self, other: "Matrix3") -> bool:
        return self.projective_scalar(other) is not None

    def projective_scalar(self, other: "Matrix3"):
        """``c`` with ``self == c * other``, or ``None``."""
        a, b = self.entries(), other.entries()
        c = None
        for x, y in zip(a, b):
            if bool(x) != bool(y):
                return None
            if x and c is None:
                c = x / y
        if c is None:
            return None
        for x, y in zip(a, b):
            if y and y * c != x:
                return None
        return c

    def is_scalar(self) -> bool:
        return self.projectively_equal(Matrix3.identity(self.spec))

    def projective_order(self, bound: int = 100) -> int:
        g = self
        for k in range(1, bound + 1):
            if g.is_scalar():
                return k
            g = g * self
        raise ValueError("projective order exceeds bound")

    def __eq__(self, other):
        if not isinstance(other, Matrix3):
            return NotImplemented
        return all(x == y for x, y in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(tuple(self.entries()))

    def __repr__(self):
        return "Matrix3(" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + ")"


_TERM = re.compile(r"([+-]?)([0-9/]*\*?|[A-Za-z_][A-Za-z_0-9]*\*?)([XYZ])")


def _coef_value(coef: str, symbols) -> Fraction | TowerElement:
    coef = coef.rstrip("*")
    if not coef:
        return Fraction(1)
    if coef in symbols:
        v = symbols[coef]
        return v if isinstance(v, TowerElement) else Fraction(v)
    return Fraction(coef)
