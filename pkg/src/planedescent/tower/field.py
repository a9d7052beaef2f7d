"""Linear towers of number fields over the rationals.

A tower ``Q = E_0 < E_1 < ... < E_k`` is built one step at a time; step ``i``
adjoins a generator ``x_i`` whose monic minimal polynomial has coefficients in
``E_{i-1}``.  Elements are coordinate vectors over the power basis
``prod x_i^e_i`` (``0 <= e_i < d_i``), flattened with the *lowest* step as the
least significant digit, so an element of a prefix tower embeds into a larger
tower by zero padding.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..poly import UniPoly, poly_xgcd


class TowerError(ValueError):
    """Malformed tower specification."""


class ReducibleTowerError(TowerError):
    """A nonzero element had no inverse: some step polynomial is reducible."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class TowerSpec:
    """Immutable description of a tower.  Use :meth:`base` then :meth:`extend`."""

    def __init__(self, parent: "TowerSpec | None" = None, label: str | None = None,
                 minpoly: UniPoly | None = None):
        self.parent = parent
        self.label = label
        self.minpoly = minpoly
        if parent is None:
            self.step_degree = 1
            self.dim = 1
            self.depth = 0
            self.labels: tuple[str, ...] = ()
            self._key: tuple = ()
        else:
            self.step_degree = minpoly.degree
            self.dim = parent.dim * self.step_degree
            self.depth = parent.depth + 1
            self.labels = parent.labels + (label,)
            self._key = parent._key + ((label, tuple(c.coords for c in minpoly.coeffs)),)
        self._hash = hash(self._key)
        self._table: dict = {}
        self._xpow: dict = {}
        self._zero = None
        self._one = None

    # -- construction -----------------------------------------------------------
    @classmethod
    def base(cls) -> "TowerSpec":
        return _QQ

    def extend(self, label: str, coeffs) -> "TowerSpec":
        """Adjoin a root of ``sum coeffs[i] x^i`` (coefficients low to high, each a
        rational or an element of this tower).  The polynomial is made monic."""
        if label in self.labels:
            raise TowerError(f"duplicate generator label {label!r}")
        cs = [self.coerce(c) for c in coeffs]
        poly = UniPoly(cs, self.zero)
        if poly.degree < 2:
            raise TowerError(f"step {label!r}: minimal polynomial must have degree >= 2")
        return TowerSpec(self, label, poly.monic())

    # -- structure ---------------------------------------------------------------
    def __eq__(self, other):
        return self is other or (isinstance(other, TowerSpec) and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.parent is None:
            return "TowerSpec(Q)"
        return "TowerSpec(" + ", ".join(self.labels) + ")"

    def prefixes(self):
        """This spec and all its ancestors, largest first."""
        s = self
        while s is not None:
            yield s
            s = s.parent

    def sub(self, depth_or_label) -> "TowerSpec":
        """The prefix tower of the given depth, or ending at the given label."""
        if isinstance(depth_or_label, str):
            depth = self.labels.index(depth_or_label) + 1
        else:
            depth = depth_or_label
        for s in self.prefixes():
            if s.depth == depth:
                return s
        raise TowerError(f"no prefix of depth {depth}")

    def has_prefix(self, other: "TowerSpec") -> bool:
        if other.depth > self.depth:
            return False
        return self.sub(other.depth) == other

    def steps(self):
        """List of ``(label, minpoly)`` from the bottom step up."""
        return [(s.label, s.minpoly) for s in reversed(list(self.prefixes())) if s.parent is not None]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(mp.degree for _, mp in self.steps())

    def exponents(self, index: int) -> tuple[int, ...]:
        out = []
        for d in self.degrees:
            index, e = divmod(index, d)
            out.append(e)
        return tuple(out)

    def index(self, exps) -> int:
        idx, stride = 0, 1
        for e, d in zip(exps, self.degrees):
            idx += e * stride
            stride *= d
        return idx

    # -- elements -----------------------------------------------------------------
    @property
    def zero(self) -> "TowerElement":
        if self._zero is None:
            self._zero = TowerElement(self, (0,) * self.dim)
        return self._zero

    @property
    def one(self) -> "TowerElement":
        if self._one is None:
            self._one = TowerElement(self, (1,) + (0,) * (self.dim - 1))
        return self._one

    def __call__(self, x) -> "TowerElement":
        return self.coerce(x)

    def coerce(self, x) -> "TowerElement":
        if isinstance(x, TowerElement):
            if x.spec == self:
                return x
            if self.has_prefix(x.spec):
                return TowerElement(self, x.coords + (0,) * (self.dim - x.spec.dim))
            raise TowerError(f"cannot coerce element of {x.spec!r} into {self!r}")
        q = as_rational(x)
        return TowerElement(self, (_norm(q),) + (0,) * (self.dim - 1))

    def element(self, coords) -> "TowerElement":
        coords = tuple(_norm(as_rational(c)) for c in coords)
        if len(coords) != self.dim:
            raise TowerError(f"expected {self.dim} coordinates, got {len(coords)}")
        return TowerElement(self, coords)

    def gen(self, label: str) -> "TowerElement":
        i = self.labels.index(label)
        exps = [0] * self.depth
        exps[i] = 1
        coords = [0] * self.dim
        coords[self.index(exps)] = 1
        return TowerElement(self, tuple(coords))

    def gens(self):
        return [self.gen(lab) for lab in self.labels]

    def basis_monomial(self, index: int) -> "TowerElement":
        coords = [0] * self.dim
        coords[index] = 1
        return TowerElement(self, tuple(coords))

    # -- multiplication table -------------------------------------------------------
    def _power_of_gen(self, t: int):
        """``x^t`` for the top generator as a list of ``step_degree`` parent elements."""
        d = self.step_degree
        if t < d:
            out = [self.parent.zero] * d
            out[t] = self.parent.one
            return out
        if t not in self._xpow:
            prev = self._power_of_gen(t - 1)
            shifted = [self.parent.zero] + prev[:-1]
            top = prev[-1]
            if top:
                mp = self.minpoly.coeffs
                shifted = [shifted[s] - top * mp[s] for s in range(d)]
            self._xpow[t] = shifted
        return self._xpow[t]

    def product(self, i: int, j: int):
        """Structure constants: ``b_i * b_j`` as a tuple of ``(k, c)``."""
        key = (i, j) if i <= j else (j, i)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        if self.parent is None:
            res = ((0, 1),)
        else:
            P = self.parent.dim
            ti, li = divmod(i, P)
            tj, lj = divmod(j, P)
            low = self.parent.product(li, lj)
            t = ti + tj
            if t < self.step_degree:
                res = tuple((t * P + l, c) for l, c in low)
            else:
                acc: dict[int, Fraction] = {}
                xp = self._power_of_gen(t)
                for l, c in low:
                    for s, r in enumerate(xp):
                        for m, rc in enumerate(r.coords):
                            if not rc:
                                continue
                            for k2, c2 in self.parent.product(l, m):
                                k = s * P + k2
                                acc[k] = acc.get(k, 0) + c * rc * c2
                res = tuple((k, _norm(v)) for k, v in sorted(acc.items()) if v)
        self._table[key] = res
        return res

    # -- splitting over the parent ----------------------------------------------------
    def split(self, elem: "TowerElement"):
        """Coefficients of ``elem`` as a polynomial in the top generator."""
        P = self.parent.dim
        c = elem.coords
        return [TowerElement(self.parent, c[t * P:(t + 1) * P]) for t in range(self.step_degree)]

    def join(self, parts) -> "TowerElement":
        parts = list(parts)
        parts += [self.parent.zero] * (self.step_degree - len(parts))
        if len(parts) > self.step_degree:
            raise TowerError("too many parts to join")
        coords: tuple = ()
        for p in parts:
            coords += self.parent.coerce(p).coords
        return TowerElement(self, coords)

    def reduce_poly(self, poly: UniPoly) -> "TowerElement":
        """Evaluate a polynomial over the parent at the top generator."""
        q = poly % self.minpoly if poly.degree >= self.step_degree else poly
        return self.join(list(q.coeffs))


def _norm(q):
    """Store integral rationals as ``int`` (much faster arithmetic)."""
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


_QQ = TowerSpec()


class TowerElement:
    """Exact element of a tower; immutable, hashable, fully reduced."""

    __slots__ = ("spec", "coords")

    def __init__(self, spec: TowerSpec, coords: tuple):
        self.spec = spec
        self.coords = coords

    # -- coercion ---------------------------------------------------------------------
    def _pair(self, other):
        if isinstance(other, TowerElement):
            if other.spec is self.spec or other.spec == self.spec:
                return self, other
            if self.spec.has_prefix(other.spec):
                return self, self.spec.coerce(other)
            if other.spec.has_prefix(self.spec):
                return other.spec.coerce(self), other
            raise TowerError(f"incompatible towers {self.spec!r} and {other.spec!r}")
        if isinstance(other, (int, Fraction, Rational)):
            return self, self.spec.coerce(other)
        return None

    # -- ring operations ----------------------------------------------------------------
    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return TowerElement(a.spec, tuple(_norm(x + y) if (x and y) else (x or y)
                                          for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.spec, tuple(-x for x in self.coords))

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return TowerElement(a.spec, tuple(_norm(x - y) if y else x
                                          for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.spec.zero
            return TowerElement(self.spec, tuple(_norm(x * other) if x else 0 for x in self.coords))
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        spec = a.spec
        nza = [(i, x) for i, x in enumerate(a.coords) if x]
        nzb = [(j, y) for j, y in enumerate(b.coords) if y]
        if not nza or not nzb:
            return spec.zero
        if len(nza) == 1 and nza[0][0] == 0:
            x = nza[0][1]
            return TowerElement(spec, tuple(_norm(x * y) if y else 0 for y in b.coords))
        if len(nzb) == 1 and nzb[0][0] == 0:
            y = nzb[0][1]
            return TowerElement(spec, tuple(_norm(x * y) if x else 0 for x in a.coords))
        out = [0] * spec.dim
        prod = spec.product
        for i, x in nza:
            for j, y in nzb:
                xy = x * y
                for k, c in prod(i, j):
                    out[k] += xy if c == 1 else xy * c
        return TowerElement(spec, tuple(_norm(v) for v in out))

    __rmul__ = __mul__

    def inverse(self) -> "TowerElement":
        spec = self.spec
        if not self:
            raise ZeroDivisionError("inverse of zero tower element")
        if spec.parent is None:
            return TowerElement(spec, (_norm(1 / Fraction(self.coords[0])),))
        parts = spec.split(self)
        if all(not p for p in parts[1:]):
            inv0 = parts[0].inverse()
            return spec.coerce(inv0)
        a = UniPoly(parts, spec.parent.zero)
        g, s, _ = poly_xgcd(a, spec.minpoly)
        if g.degree != 0:
            raise ReducibleTowerError(
                f"step {spec.label!r}: element is a zero divisor; minimal polynomial is reducible")
        return spec.join(list(s.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ----------------------------------------------------------------------
    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, TowerElement) and other.spec is self.spec:
            return self.coords == other.coords
        try:
            pr = self._pair(other)
        except TowerError:
            return False
        if pr is None:
            return NotImplemented
        return pr[0].coords == pr[1].coords

    def __hash__(self):
        # trailing zeros stripped so that prefix-embedded copies hash alike
        c = list(self.coords)
        while len(c) > 1 and not c[-1]:
            c.pop()
        return hash(tuple(c)) if len(c) > 1 else hash(c[0])

    # -- inspection ------------------------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coords[0])

    def in_subtower(self, sub: TowerSpec) -> bool:
        return self.spec.has_prefix(sub) and not any(self.coords[sub.dim:])

    def restrict(self, sub: TowerSpec) -> "TowerElement":
        if not self.in_subtower(sub):
            raise ValueError(f"{self} does not lie in {sub!r}")
        return TowerElement(sub, self.coords[:sub.dim])

    def coordinate(self, **exps) -> Fraction:
        """Coordinate at a basis monomial given by generator exponents."""
        e = [exps.get(lab, 0) for lab in self.spec.labels]
        return Fraction(self.coords[self.spec.index(e)])

    def __repr__(self):
        return f"TowerElement({self})"

    def __str__(self):
        labels = self.spec.labels
        terms = []
        for idx, c in enumerate(self.coords):
            if not c:
                continue
            mono = []
            for lab, e in zip(labels, self.spec.exponents(idx)):
                if e == 1:
                    mono.append(lab)
                elif e > 1:
                    mono.append(f"{lab}^{e}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append("*".join(mono))
            elif c == -1:
                terms.append("-" + "*".join(mono))
            else:
                cs = f"({c})" if isinstance(c, Fraction) else str(c)
                terms.append(cs + "*" + "*".join(mono))
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


class TowerHom:
    """Ring homomorphism from one tower into another, fixed on the rationals.

    ``images`` lists the image of each source generator, bottom step first.
    Construction checks that every image is a root of the correspondingly
    transported minimal polynomial.
    """

    def __init__(self, source: TowerSpec, target: TowerSpec, images, check: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(target.coerce(x) for x in images)
        if len(self.images) != source.depth:
            raise TowerError("one image per source generator required")
        self._basis = None
        if check:
            for i, (label, mp) in enumerate(source.steps()):
                lower = TowerHom(source.sub(i), target, self.images[:i], check=False)
                img = mp.map(lower, target.zero)(self.images[i])
                if img:
                    raise TowerError(f"image of {label!r} is not a root of its minimal polynomial")

    def basis_images(self):
        if self._basis is None:
            imgs = [self.target.one]
            for i, spec in enumerate(reversed(list(self.source.prefixes()))):
                if spec.parent is None:
                    continue
                g = self.images[i - 1]
                powers = [self.target.one]
                for _ in range(spec.step_degree - 1):
                    powers.append(powers[-1] * g)
                imgs = [pw * b for pw in powers for b in imgs]
            self._basis = imgs
        return self._basis

    def __call__(self, a):
        if not isinstance(a, TowerElement):
            return self.target.coerce(a)
        if a.spec != self.source:
            a = self.source.coerce(a)
        if a.is_rational():
            return self.target.coerce(Fraction(a.coords[0]))
        basis = self.basis_images()
        out = [0] * self.target.dim
        for j, c in enumerate(a.coords):
            if not c:
                continue
            for k, v in enumerate(basis[j].coords):
                if v:
                    out[k] += c * v
        return TowerElement(self.target, tuple(_norm(v) for v in out))


class TowerAutomorphism(TowerHom):
    """Automorphism of a tower, fixing the rationals."""

    def __init__(self, spec: TowerSpec, images, check: bool = True, name: str | None = None):
        super().__init__(spec, spec, images, check=check)
        self.name = name

    @property
    def spec(self) -> TowerSpec:
        return self.source

    @classmethod
    def identity(cls, spec: TowerSpec) -> "TowerAutomorphism":
        return cls(spec, spec.gens(), check=False, name="id")

    @classmethod
    def from_mapping(cls, spec: TowerSpec, mapping: dict, name: str | None = None):
        """Build from ``{label: image}``; unnamed generators are fixed."""
        images = [mapping.get(lab, spec.gen(lab)) for lab in spec.labels]
        return cls(spec, images, name=name)

    def is_identity(self) -> bool:
        return all(img == g for img, g in zip(self.images, self.spec.gens()))

    def compose(self, other: "TowerAutomorphism") -> "TowerAutomorphism":
        """``self o other`` (apply ``other`` first)."""
        return TowerAutomorphism(self.spec, [self(img) for img in other.images], check=False)

    def __mul__(self, other):
        return self.compose(other)

    def __pow__(self, n: int) -> "TowerAutomorphism":
        result = TowerAutomorphism.identity(self.spec)
        for _ in range(n):
            result = self.compose(result)
        return result

    def order(self, bound: int = 1000) -> int:
        g = self
        for k in range(1, bound + 1):
            if g.is_identity():
                return k
            g = self.compose(g)
        raise ValueError("automorphism order exceeds bound")

    def fixes(self, a: TowerElement) -> bool:
        return self(a) == a

    def __eq__(self, other):
        return isinstance(other, TowerAutomorphism) and self.spec == other.spec and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        parts = [f"{lab}->{img}" for lab, img in zip(self.spec.labels, self.images)
                 if img != self.spec.gen(lab)]
        return "TowerAutomorphism(" + (", ".join(parts) or "id") + ")"
