"""Square-freeness and smoothness of plane curves.

Both smoothness modes run the same elimination, only over different fields:
the probe reduces the form through a :class:`FinitePlacement` first, the exact
mode works directly over the tower.

On the chart ``Z = 1`` the four polynomials ``f, f_X, f_Y, f_Z`` are viewed in
``K[x][y]``.  Resultants in ``y`` give a one-variable eliminant ``h(x)`` whose
roots contain the ``x``-coordinate of every singular point.  A gcd in ``y`` is
then taken over ``K[x]/(rad h)`` with dynamic evaluation: whenever a leading
coefficient is a zero divisor the modulus is split and both branches are
followed.  A branch ends with a gcd of positive degree (a singular point over
the algebraic closure) or a unit.  The line ``Z = 0`` is handled with
univariate gcds.  No root of any eliminant is ever computed, so the verdict
holds over the algebraic closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from ..poly import UniPoly, poly_gcd, poly_lcm, poly_xgcd, resultant
from ..tower.finite import FFElement, FinitePlacement, InadmissibleError
from .forms import TernaryForm, gradient

SMOOTH_CERTIFIED = "SmoothCertified"
SINGULAR_AT_REDUCTION = "SingularAtReduction"
INADMISSIBLE = "Inadmissible"
INCONCLUSIVE = "Inconclusive"
SMOOTH = "Smooth"
SINGULAR = "Singular"
WORK_BOUND_EXCEEDED = "WorkBoundExceeded"

DEFAULT_WORK_BOUND = 64


@dataclass
class SquarefreeResult:
    squarefree: bool
    resultant: object

    def __bool__(self):
        return self.squarefree


def squarefree_check(f: UniPoly) -> SquarefreeResult:
    """``Res(f, f')`` is nonzero exactly when ``f`` has no repeated root."""
    if f.degree < 1:
        raise ValueError("square-freeness needs a polynomial of degree >= 1")
    r = resultant(f, f.derivative())
    return SquarefreeResult(bool(r), r)


@dataclass
class SmoothnessReport:
    status: str
    point: dict | None = None
    placement: dict | None = None
    detail: str = ""
    stats: dict = dc_field(default_factory=dict)

    @property
    def smooth(self) -> bool:
        return self.status in (SMOOTH, SMOOTH_CERTIFIED)

    def to_json(self) -> dict:
        out = {"status": self.status, "detail": self.detail}
        if self.point is not None:
            out["point"] = self.point
        if self.placement is not None:
            out["placement"] = self.placement
        return out


# -- helpers over K[x] and K[x][y] ---------------------------------------------------

def _characteristic(zero) -> int:
    return zero.field.q if isinstance(zero, FFElement) else 0


def _radical(h: UniPoly) -> UniPoly:
    """Monic squarefree part (perfect coefficient fields only)."""
    h = h.monic()
    if h.degree <= 0:
        return UniPoly([h.one], h.zero)
    d = h.derivative()
    p = _characteristic(h.zero)
    if not d:
        root = UniPoly([h[i * p].pth_root() for i in range(h.degree // p + 1)], h.zero)
        return _radical(root)
    g = poly_gcd(h, d)
    w = (h / g).monic()
    if g.degree == 0 or p == 0:
        return w
    return poly_lcm(w, _radical(g))


def _reduce(A: UniPoly, h: UniPoly) -> UniPoly:
    return UniPoly([c % h for c in A.coeffs], A.zero)


def _monic_branches(A: UniPoly, h: UniPoly):
    """Split ``h`` until the leading coefficient of ``A`` is a unit or zero on
    each piece; returns ``[(h_i, A_i)]`` with ``A_i`` monic or zero."""
    out = []
    work = [(h, A)]
    while work:
        h, A = work.pop()
        A = _reduce(A, h)
        if not A:
            out.append((h, A))
            continue
        lc = A.lc
        g = poly_gcd(lc, h)
        if g.degree == 0:
            _, s, _ = poly_xgcd(lc, h)
            out.append((h, UniPoly([(c * s) % h for c in A.coeffs], A.zero)))
            continue
        work.append((g, A))
        rest = (h / g).monic()
        if rest.degree > 0:
            work.append((rest, A))
    return out


def _rem_monic(A: UniPoly, B: UniPoly, h: UniPoly) -> UniPoly:
    """Remainder of ``A`` by monic ``B`` with coefficients reduced mod ``h``."""
    r = list(A.coeffs)
    n = B.degree
    bc = B.coeffs
    for k in range(len(r) - 1 - n, -1, -1):
        c = r[k + n] % h
        if not c:
            continue
        for j in range(n):
            if bc[j]:
                r[k + j] = (r[k + j] - c * bc[j]) % h
        r[k + n] = A.zero
    return UniPoly([c % h for c in r[:n]], A.zero)


def _gcd_pair(A: UniPoly, B: UniPoly, h: UniPoly):
    out = []
    for h1, Bm in _monic_branches(B, h):
        if not Bm:
            out.extend(_monic_branches(A, h1))
            continue
        if Bm.degree == 0:
            out.append((h1, Bm))
            continue
        R = _rem_monic(_reduce(A, h1), Bm, h1)
        out.extend(_gcd_pair(Bm, R, h1))
    return out


def _d5_gcd(polys, h: UniPoly):
    """Branches ``(h_i, G_i)`` covering the roots of ``h``; ``G_i`` is the gcd
    in ``y`` of ``polys`` at every root of ``h_i`` (monic, or zero)."""
    branches = [(h, _reduce(polys[0], h))]
    for P in polys[1:]:
        nxt = []
        for hi, G in branches:
            nxt.extend(_gcd_pair(G, P, hi))
        branches = nxt
    return branches


def _content(A: UniPoly) -> UniPoly:
    g = A.zero
    for c in A.coeffs:
        g = poly_gcd(g, c) if g else c.monic()
    return g


def _primitive(A: UniPoly) -> UniPoly:
    c = _content(A)
    return UniPoly([x / c for x in A.coeffs], A.zero)


def _prem(A: UniPoly, B: UniPoly) -> UniPoly:
    r = A
    lb, n = B.lc, B.degree
    while r and r.degree >= n:
        shift = r.degree - n
        r = r * lb - UniPoly([A.zero] * shift + [r.lc], A.zero) * B
    return r


def _bivariate_gcd(polys) -> UniPoly:
    """Primitive part of the gcd in ``K(x)[y]`` (only its ``y``-degree matters)."""
    g = _primitive(polys[0])
    for P in polys[1:]:
        a, b = g, _primitive(P)
        if a.degree < b.degree:
            a, b = b, a
        while b:
            a, b = b, _prem(a, b)
            if b:
                b = _primitive(b)
        g = _primitive(a)
    return g


def _chart_polys(F: TernaryForm):
    xzero = UniPoly((), F.zero)
    zero_y = UniPoly((), xzero)
    out = [F.chart("Z")]
    for g in gradient(F):
        out.append(g.chart("Z") if g is not None else zero_y)
    return out


def _describe_branch(h: UniPoly, G: UniPoly) -> dict:
    if h.degree == 1:
        x0 = -h[0]
        if not G:
            return {"coordinates": [str(x0), "0", "1"], "kind": "line"}
        if G.degree == 1:
            y0 = -G[0][0]
            return {"coordinates": [str(x0), str(y0), "1"]}
    return {"x_minpoly": [str(c) for c in h.coeffs],
            "y_gcd": [[str(c) for c in cy.coeffs] for cy in G.coeffs],
            "chart": "Z=1"}


def _singular_point(F: TernaryForm):
    """``None`` if smooth over the algebraic closure, a description of a
    singular point otherwise, or the string ``"inconclusive"``."""
    K0 = F.zero
    one = K0 + 1
    grads = gradient(F)
    # the point (1:0:0)
    vals = [F.coefficient((F.degree, 0, 0))]
    vals += [g.coefficient((g.degree, 0, 0)) if g is not None else K0 for g in grads]
    if not any(vals):
        return {"coordinates": ["1", "0", "0"]}
    # the points (x:1:0)
    lines = [F.dehomogenize("X", (one, K0))]
    lines += [g.dehomogenize("X", (one, K0)) if g is not None else UniPoly((), K0) for g in grads]
    g = UniPoly((), K0)
    for P in lines:
        g = poly_gcd(g, P) if g else P.monic()
    if not g:
        return {"chart": "Z=0", "kind": "line"}
    if g.degree > 0:
        if g.degree == 1:
            return {"coordinates": [str(-g[0]), "1", "0"]}
        return {"x_minpoly": [str(c) for c in g.coeffs], "chart": "Z=0, Y=1"}
    # the chart Z = 1
    polys = _chart_polys(F)
    nonzero = [P for P in polys if P]
    h = UniPoly((), K0)
    for A, B in combinations(nonzero, 2):
        r = resultant(A, B, field=False)
        if r:
            h = poly_gcd(h, r) if h else r.monic()
            if h.degree == 0:
                return None
    if not h:
        G = _bivariate_gcd(nonzero)
        if G.degree > 0:
            return {"common_component_y_degree": G.degree, "chart": "Z=1"}
        f = polys[0]
        for c in range(1, 6):
            combo = polys[1] + polys[2] * (K0 + c) + polys[3] * (K0 + c * c + 1)
            if combo:
                r = resultant(f, combo, field=False)
                if r:
                    h = r.monic()
                    break
        if not h:
            return "inconclusive"
    h = _radical(h)
    for hi, G in _d5_gcd(polys, h):
        if not G or G.degree > 0:
            return _describe_branch(hi, G)
    return None


def smoothness_probe(F: TernaryForm, placement: FinitePlacement) -> SmoothnessReport:
    """Good-reduction certificate: if the reduction of ``F`` is smooth of the
    same degree then ``F`` is smooth in characteristic zero."""
    if F.is_zero():
        raise ValueError("the zero form is not a curve")
    Fq = placement.field
    try:
        reduced = F.map_coefficients(placement.reduce, Fq.zero)
    except InadmissibleError as exc:
        return SmoothnessReport(INADMISSIBLE, placement=placement.describe(), detail=str(exc))
    if reduced.is_zero():
        return SmoothnessReport(INADMISSIBLE, placement=placement.describe(),
                                detail="form vanishes identically after reduction")
    pt = _singular_point(reduced)
    where = f"q={placement.q}" + (f"^{placement.m}" if placement.m > 1 else "")
    if pt is None:
        return SmoothnessReport(SMOOTH_CERTIFIED, placement=placement.describe(),
                                detail=f"reduction smooth at {where}")
    if pt == "inconclusive":
        return SmoothnessReport(INCONCLUSIVE, placement=placement.describe(),
                                detail="every eliminant vanished identically")
    return SmoothnessReport(SINGULAR_AT_REDUCTION, point=pt, placement=placement.describe(),
                            detail=f"reduction singular at {where}; not a disproof")


def smoothness_exact(F: TernaryForm, work_bound: int = DEFAULT_WORK_BOUND) -> SmoothnessReport:
    """Exact decision over the algebraic closure of the coefficient tower."""
    if F.is_zero():
        raise ValueError("the zero form is not a curve")
    spec = getattr(F.zero, "spec", None)
    dim = spec.dim if spec is not None else 1
    work = dim * F.degree
    if work > work_bound:
        return SmoothnessReport(WORK_BOUND_EXCEEDED,
                                detail=f"tower degree {dim} x form degree {F.degree} = {work} > {work_bound}",
                                stats={"work": work, "bound": work_bound})
    pt = _singular_point(F)
    if pt is None:
        return SmoothnessReport(SMOOTH, detail="no common zero of the partial derivatives",
                                stats={"work": work})
    if pt == "inconclusive":
        return SmoothnessReport(INCONCLUSIVE, detail="every eliminant vanished identically")
    return SmoothnessReport(SINGULAR, point=pt, stats={"work": work})


def certify_smooth(F: TernaryForm, qmax: int = 200, max_m: int = 6, units=(), attempts: int = 8):
    """Try placements in order until one certifies smoothness.  Returns the
    certifying report, or the last report seen when none does."""
    from ..tower.finite import placements

    spec = getattr(F.zero, "spec", None)
    if spec is None:
        raise TypeError("certify_smooth needs a form over a tower")
    extra = list(units)
    for c in F.terms.values():
        extra.extend(x for x in c.coords if x)
    last = SmoothnessReport(INADMISSIBLE, detail=f"no admissible prime <= {qmax}")
    tried = 0
    for pl in placements(spec, qmax, max_m, units=extra):
        last = smoothness_probe(F, pl)
        tried += 1
        if last.status == SMOOTH_CERTIFIED or tried >= attempts:
            break
    last.stats["placements_tried"] = tried
    return last

