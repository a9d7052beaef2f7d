"""Square roots, roots of low-degree polynomials, automorphism enumeration and
relative norms in linear towers."""

from __future__ import annotations

import math
from fractions import Fraction

import sympy

from ..poly import UniPoly, resultant
from .field import TowerAutomorphism, TowerElement, TowerError, TowerHom, TowerSpec


class OutOfScopeError(TowerError):
    """The decision procedure does not cover this tower shape or size."""


def rational_sqrt(q) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def is_rational_square(q) -> bool:
    return rational_sqrt(q) is not None


def squarefree_kernel(q) -> int:
    """Squarefree integer ``s`` with ``q = s * r^2`` for a rational ``r``."""
    q = Fraction(q)
    if not q:
        raise ValueError("zero has no squarefree kernel")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    s = 1
    for prime, e in sympy.factorint(abs(n)).items():
        if e % 2:
            s *= prime
    return sign * s


def sqrt(z: TowerElement) -> TowerElement | None:
    """A square root of ``z`` inside its tower, or ``None`` when there is none.

    Quadratic steps are handled by the norm formula, odd steps by descending
    to the step below when ``z`` lies there (an odd-degree extension adds no
    new square roots), and towers of odd total degree by the characteristic
    polynomial method.  Other shapes raise :class:`OutOfScopeError`.
    """
    spec = z.spec
    if not z:
        return z
    if spec.parent is None:
        r = rational_sqrt(z.coords[0])
        return None if r is None else spec.coerce(r)
    if spec.dim % 2 == 1 and not z.is_rational():
        return _sqrt_odd_degree(z)
    parent = spec.parent
    if spec.step_degree == 2:
        return _sqrt_quadratic_step(z)
    if spec.step_degree % 2 == 1 and z.in_subtower(parent):
        w = sqrt(z.restrict(parent))
        return None if w is None else spec.coerce(w)
    raise OutOfScopeError(f"square roots across step {spec.label!r} (degree {spec.step_degree}) not supported")


def _sqrt_quadratic_step(z: TowerElement) -> TowerElement | None:
    spec = z.spec
    mp = spec.minpoly
    b, c = mp[1], mp[0]
    a = b * b - c * 4          # beta = 2x + b has beta^2 = a
    z0, z1 = spec.split(z)
    s = z0 - z1 * b / 2
    t = z1 / 2
    beta = spec.gen(spec.label) * 2 + spec.coerce(b)
    if not t:
        w = sqrt(s)
        if w is not None:
            return spec.coerce(w)
        y = sqrt(s / a)
        if y is not None:
            return spec.coerce(y) * beta
        return None
    n = sqrt(s * s - a * t * t)
    if n is None:
        return None
    for sign in (1, -1):
        x2 = (s + n * sign) / 2
        xr = sqrt(x2)
        if xr is not None and xr:
            y = t / (xr * 2)
            return spec.coerce(xr) + spec.coerce(y) * beta
    return None


def multiplication_matrix(z: TowerElement):
    """Rational matrix of ``w -> z*w`` on the power basis (columns = images)."""
    spec = z.spec
    cols = [(z * spec.basis_monomial(j)).coords for j in range(spec.dim)]
    return [[Fraction(cols[j][i]) for j in range(spec.dim)] for i in range(spec.dim)]


def charpoly(z: TowerElement) -> list[Fraction]:
    """Characteristic polynomial of multiplication by ``z`` over Q (low to high)."""
    m = sympy.Matrix(multiplication_matrix(z))
    t = sympy.Symbol("t")
    cp = sympy.Poly(m.charpoly(t).as_expr(), t)
    return [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
            for c in reversed(cp.all_coeffs())]


def _sqrt_odd_degree(z: TowerElement) -> TowerElement | None:
    # If w^2 = z then the minimal polynomial g of w divides chi_z(t^2); writing
    # g(t) = E(t^2) + t O(t^2) gives w = -E(z)/O(z).  O(z) = 0 would force an
    # even-degree subfield, impossible in odd total degree.
    spec = z.spec
    t = sympy.Symbol("t")
    chi = charpoly(z)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** (2 * i) for i, c in enumerate(chi))
    _, factors = sympy.factor_list(expr, t)
    for fac, _ in factors:
        coeffs = [Fraction(str(c)) for c in reversed(sympy.Poly(fac, t).all_coeffs())]
        even = UniPoly(coeffs[0::2], Fraction(0))
        odd = UniPoly(coeffs[1::2], Fraction(0))
        ev = even.map(spec.coerce, spec.zero)(z)
        ov = odd.map(spec.coerce, spec.zero)(z)
        if not ov:
            continue
        w = -ev / ov
        if w * w == z:
            return w
    return None


def is_square(a: TowerElement, max_degree: int = 4):
    """Decide whether ``a`` is a square; returns ``(True, w)`` with ``w*w == a``
    or ``(False, None)``.  Towers above ``max_degree`` are out of scope."""
    if a.spec.dim > max_degree:
        raise OutOfScopeError(f"is_square limited to degree <= {max_degree}, tower has degree {a.spec.dim}")
    w = sqrt(a)
    if w is None:
        return False, None
    assert w * w == a
    return True, w


def cubic_discriminant(f: UniPoly):
    d, c, b, a = f[0], f[1], f[2], f[3]
    return (b * b * c * c - a * c * c * c * 4 - b * b * b * d * 4
            - a * a * d * d * 27 + a * b * c * d * 18)


def roots_in_tower(f: UniPoly, known_root: TowerElement | None = None):
    """All roots of ``f`` (coefficients in a tower) lying in that tower.

    Degrees 1 and 2 are solved directly; a cubic needs one known root.  Roots
    are returned without multiplicity, in a deterministic order.
    """
    deg = f.degree
    if deg < 1:
        return []
    if deg == 1:
        return [-f[0] / f[1]]
    if deg == 2:
        a, b, c = f[2], f[1], f[0]
        disc = b * b - a * c * 4
        s = sqrt(disc)
        if s is None:
            return []
        if not s:
            return [-b / (a * 2)]
        return _sorted_unique([(-b + s) / (a * 2), (-b - s) / (a * 2)])
    if deg == 3 and known_root is not None:
        if f(known_root):
            raise ValueError("known_root is not a root")
        lin = UniPoly([-known_root, known_root.spec.one], f.zero)
        q = f // lin
        # disc(q) = disc(f) / f'(alpha)^2, and disc(f) lies in the coefficient field
        s = sqrt(cubic_discriminant(f))
        if s is None:
            return [known_root]
        sq = s / f.derivative()(known_root)
        a, b = q[2], q[1]
        others = [(-b + sq) / (a * 2), (-b - sq) / (a * 2)]
        return _sorted_unique([known_root] + others)
    raise OutOfScopeError(f"root finding for degree {deg} without a known root is not supported")


def _sorted_unique(xs):
    seen = []
    for x in xs:
        if x not in seen:
            seen.append(x)
    return sorted(seen, key=lambda e: tuple(Fraction(c) for c in e.coords))


def enumerate_automorphisms(spec: TowerSpec) -> list[TowerAutomorphism]:
    """All automorphisms of the tower, identity first.

    Raises :class:`TowerError` naming the first step whose conjugate roots are
    not all present.
    """
    partial = [[]]
    for i, (label, mp) in enumerate(spec.steps()):
        sub = spec.sub(i)
        gen = spec.gen(label)
        extended = []
        for imgs in partial:
            hom = TowerHom(sub, spec, imgs, check=False)
            f = mp.map(hom, spec.zero)
            known = gen if not f(gen) else None
            roots = roots_in_tower(f, known)
            if len(roots) < mp.degree:
                raise TowerError(
                    f"step {label!r}: only {len(roots)} of {mp.degree} conjugate roots lie in the tower")
            roots.sort(key=lambda r: r != gen)
            extended.extend(imgs + [r] for r in roots)
        partial = extended
    autos = [TowerAutomorphism(spec, imgs) for imgs in partial]
    for a in autos:
        if a.is_identity():
            a.name = "id"
    return autos


def relative_norm(a: TowerElement, step: str | None = None) -> TowerElement:
    """Norm of ``a`` from its tower down one step (the top step).

    Computed as ``Res(minpoly, A)`` where ``a = A(x_top)``; the result is
    returned embedded in ``a``'s tower, with zero coordinates in the top
    generator.
    """
    spec = a.spec
    if spec.parent is None:
        return a
    if step is not None and step != spec.label:
        raise TowerError(f"relative_norm: {step!r} is not the top step ({spec.label!r})")
    A = UniPoly(spec.split(a), spec.parent.zero)
    if not A:
        return spec.zero
    n = resultant(spec.minpoly, A)
    return spec.coerce(n)


def absolute_norm(a: TowerElement) -> Fraction:
    while a.spec.parent is not None:
        a = relative_norm(a).restrict(a.spec.parent)
    return Fraction(a.coords[0])


def multiplicative_order(p: int, n: int) -> int:
    """Least ``e >= 1`` with ``p^e = 1 (mod n)``."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(p, n) != 1:
        raise ValueError(f"gcd({p}, {n}) != 1")
    e, x = 1, p % n
    while x != 1:
        x = x * p % n
        e += 1
    return e
