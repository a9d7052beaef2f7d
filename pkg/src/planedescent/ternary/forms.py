"""Homogeneous ternary forms in X, Y, Z with sparse coefficients."""

from __future__ import annotations

from ..poly import UniPoly

VARS = ("X", "Y", "Z")


class TernaryForm:
    """Degree-``d`` form stored as ``{(i, j, k): coefficient}`` with ``i+j+k = d``.

    Coefficients are tower elements (or finite-field elements after reduction);
    zero coefficients are never stored.  Arithmetic may produce the zero form
    internally; use :meth:`is_zero` before treating a result as a curve.
    """

    __slots__ = ("degree", "terms", "zero")

    def __init__(self, terms, zero, degree: int | None = None):
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != 3 or min(e) < 0:
                raise ValueError(f"bad exponent {e}")
            if c:
                clean[e] = c
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(degs)}")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise ValueError(f"declared degree {degree} but monomials have degree {d}")
            degree = d
        if degree is None:
            raise ValueError("the zero form needs an explicit degree")
        self.degree = degree
        self.terms = clean
        self.zero = zero

    # -- constructors --------------------------------------------------------------
    @classmethod
    def variable(cls, name: str, one, zero) -> "TernaryForm":
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): one}, zero)

    @classmethod
    def monomial(cls, exps, coeff, zero) -> "TernaryForm":
        return cls({tuple(exps): coeff}, zero)

    @classmethod
    def linear(cls, a, b, c, zero) -> "TernaryForm":
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, zero, degree=1)

    def _new(self, terms, degree=None):
        return TernaryForm(terms, self.zero, self.degree if degree is None else degree)

    # -- queries -----------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.zero)

    def support(self):
        return sorted(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TernaryForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "TernaryForm(0)"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(VARS, e) if k)
            parts.append(f"({self.terms[e]})*{mono}" if mono else f"({self.terms[e]})")
        return "TernaryForm(" + " + ".join(parts) + ")"

    # -- arithmetic -----------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TernaryForm):
            return NotImplemented
        if other.terms and self.terms and other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._new(out, self.degree if self.terms else other.degree)

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TernaryForm):
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    v = c1 * c2
                    out[e] = out[e] + v if e in out else v
            return self._new(out, self.degree + other.degree)
        if not other:
            return self._new({})
        return self._new({e: c * other for e, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        result = self._new({(0, 0, 0): self.zero + 1}, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "TernaryForm":
        return self * c

    def map_coefficients(self, fn, zero) -> "TernaryForm":
        return TernaryForm({e: fn(c) for e, c in self.terms.items()}, zero, self.degree)

    # -- evaluation and specialisation ---------------------------------------------------
    def __call__(self, x, y, z):
        acc = self.zero
        for (i, j, k), c in self.terms.items():
            acc = acc + c * (x ** i) * (y ** j) * (z ** k)
        return acc

    def dehomogenize(self, var: str = "X", values=(1, 1)) -> UniPoly:
        """Univariate polynomial in ``var`` with the other two variables (in
        X, Y, Z order) set to ``values``; e.g. ``F(X, 1, 1)``."""
        idx = VARS.index(var)
        others = [i for i in range(3) if i != idx]
        deg = self.degree
        coeffs = [self.zero] * (deg + 1)
        for e, c in self.terms.items():
            w = c
            for o, val in zip(others, values):
                if e[o]:
                    w = w * (val ** e[o])
            coeffs[e[idx]] = coeffs[e[idx]] + w
        return UniPoly(coeffs, self.zero)

    def chart(self, fixed: str = "Z"):
        """Bivariate polynomial on the chart ``fixed = 1``: a polynomial in the
        second free variable whose coefficients are polynomials in the first."""
        idx = VARS.index(fixed)
        a, b = [i for i in range(3) if i != idx]
        rows: dict[int, dict[int, object]] = {}
        for e, c in self.terms.items():
            rows.setdefault(e[b], {})[e[a]] = c
        xzero = UniPoly((), self.zero)
        deg = self.degree
        ycoeffs = []
        for j in range(deg + 1):
            r = rows.get(j, {})
            ycoeffs.append(UniPoly([r.get(i, self.zero) for i in range(deg + 1)], self.zero))
        return UniPoly(ycoeffs, xzero)


def partial_derivative(F: TernaryForm, var: str):
    """Formal partial derivative; ``None`` stands for the zero form."""
    idx = VARS.index(var)
    out = {}
    for e, c in F.terms.items():
        if e[idx]:
            ne = list(e)
            ne[idx] -= 1
            v = c * e[idx]
            if v:
                out[tuple(ne)] = v
    if not out:
        return None
    return TernaryForm(out, F.zero, F.degree - 1)


def gradient(F: TernaryForm):
    return [partial_derivative(F, v) for v in VARS]


def substitute(F: TernaryForm, M) -> TernaryForm:
    """``F o M``: each variable replaced by the matching row of ``M`` applied to
    ``(X, Y, Z)``, so ``(F o M)(P) = F(M P)``."""
    from .matrix import Matrix3

    if isinstance(M, Matrix3):
        if not M.det:
            raise ValueError("substitution matrix is singular")
        rows = M.rows
    else:
        rows = M
    zero = F.zero
    if F.terms:
        zero = next(iter(F.terms.values())) * 0
    lin = [TernaryForm({(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]}, zero, 1) for r in rows]
    one = zero + 1
    unit = TernaryForm({(0, 0, 0): one}, zero, 0)
    pw = [[unit] for _ in range(3)]

    def power(v, n):
        while len(pw[v]) <= n:
            pw[v].append(pw[v][-1] * lin[v])
        return pw[v][n]

    pair_cache: dict = {}
    out: dict = {}
    for (i, j, k), c in F.terms.items():
        key = (i, j)
        if key not in pair_cache:
            pair_cache[key] = power(0, i) * power(1, j)
        term = pair_cache[key] * power(2, k)
        for e, v in term.terms.items():
            w = v * c
            out[e] = out[e] + w if e in out else w
    return TernaryForm(out, zero, F.degree)


def scalar_ratio(F: TernaryForm, G: TernaryForm):
    """``lam`` with ``G = lam * F`` when it exists, else ``None``."""
    if F.degree != G.degree or set(F.terms) != set(G.terms) or not F.terms:
        return None
    e0 = min(F.terms)
    lam = G.terms[e0] / F.terms[e0]
    for e, c in F.terms.items():
        if c * lam != G.terms[e]:
            return None
    return lam


def normalize(F: TernaryForm) -> TernaryForm:
    """Scale so that the coefficient of the first monomial (exponents in
    decreasing lexicographic order) is one."""
    e0 = max(F.terms)
    return F * (1 / F.terms[e0]) if F.terms[e0] != 1 else F


def euler_identity_holds(F: TernaryForm) -> bool:
    """``d * F == X F_X + Y F_Y + Z F_Z`` (characteristic zero)."""
    total = TernaryForm({}, F.zero, F.degree)
    for v, g in zip(VARS, gradient(F)):
        if g is not None:
            total = total + TernaryForm.variable(v, F.zero + 1, F.zero) * g
    return total == F * F.degree
