"""Cocycles of finite abelian Galois groups with values in PGL3, their
validation, Hilbert-90 trivialisation by averaging, and descent of forms."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from ..tower.field import TowerAutomorphism, TowerSpec
from ..tower.standard import CBRT_P, COS7, cbrt_rotation, cos7_rotation
from ..ternary.forms import TernaryForm, substitute
from ..ternary.matrix import Matrix3


class CocycleError(ValueError):
    pass


@dataclass
class GaloisGroupPresentation:
    """Product of cyclic groups, each given by a generating automorphism and
    its order; elements are exponent tuples."""

    factors: list          # [(TowerAutomorphism, order)]

    def __post_init__(self):
        if not self.factors:
            raise CocycleError("empty presentation")
        spec = self.spec
        for g, n in self.factors:
            if g.spec != spec:
                raise CocycleError("generators act on different towers")
            if not (g ** n).is_identity():
                raise CocycleError(f"{g.name or g} does not have order dividing {n}")
        for (g, _), (h, _) in itertools.combinations(self.factors, 2):
            if g * h != h * g:
                raise CocycleError("generators do not commute")
        self._cache: dict = {}

    @property
    def spec(self) -> TowerSpec:
        return self.factors[0][0].spec

    @property
    def orders(self) -> tuple:
        return tuple(n for _, n in self.factors)

    @property
    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    def elements(self):
        return list(itertools.product(*(range(n) for n in self.orders)))

    def identity(self) -> tuple:
        return (0,) * len(self.factors)

    def mul(self, a, b) -> tuple:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def automorphism(self, e) -> TowerAutomorphism:
        e = tuple(e)
        if e not in self._cache:
            g = TowerAutomorphism.identity(self.spec)
            for (gen, _), k in zip(self.factors, e):
                for _ in range(k):
                    g = g * gen
            self._cache[e] = g
        return self._cache[e]

    def name(self, e) -> str:
        parts = []
        for (gen, _), k in zip(self.factors, e):
            if k:
                nm = gen.name or "g"
                parts.append(nm if k == 1 else f"{nm}^{k}")
        return "*".join(parts) or "id"


@dataclass
class Cocycle:
    group: GaloisGroupPresentation
    values: dict            # exponent tuple -> Matrix3 (a chosen lift)

    def __post_init__(self):
        missing = [e for e in self.group.elements() if e not in self.values]
        if missing:
            raise CocycleError(f"no value at {missing[0]}")
        spec = self.group.spec
        self.values = {e: (M if M.spec == spec else M.coerce(spec)) for e, M in self.values.items()}

    def __getitem__(self, e) -> Matrix3:
        return self.values[tuple(e)]

    def act(self, e, M: Matrix3) -> Matrix3:
        return M.map(self.group.automorphism(e))


@dataclass
class CocycleValidation:
    valid: bool
    pairs_checked: int
    failures: list = field(default_factory=list)     # [(name_g, name_h)]
    identity_ok: bool = True
    outside_group: list = field(default_factory=list)

    @property
    def counterexample(self):
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {"valid": self.valid, "pairs_checked": self.pairs_checked,
                "failures": [list(p) for p in self.failures], "identity_ok": self.identity_ok,
                "outside_group": self.outside_group}


def validate_cocycle(c: Cocycle, group=None) -> CocycleValidation:
    """Check ``a_{gh} ~ a_g g(a_h)`` projectively on every ordered pair, and
    optionally that each value lies in a given projective matrix group."""
    G = c.group
    els = G.elements()
    ident_ok = c[G.identity()].is_scalar()
    acted = {(g, h): c.act(g, c[h]) for g in els for h in els}
    failures = []
    for g in els:
        for h in els:
            lhs = c[G.mul(g, h)]
            rhs = c[g] * acted[(g, h)]
            if not lhs.projectively_equal(rhs):
                failures.append((G.name(g), G.name(h)))
    outside = []
    if group is not None:
        for e in els:
            if c[e] not in group:
                outside.append(G.name(e))
    valid = ident_ok and not failures and not outside
    return CocycleValidation(valid, len(els) ** 2, failures, ident_ok, outside)


def twist_matrix(p: int, spec: TowerSpec | None = None) -> Matrix3:
    """Matrix of the substitution ``[Y : Z : pX]``."""
    return Matrix3.from_rule("[Y:Z:pX]", spec, p=p)


def cube_descent_presentation(spec: TowerSpec) -> GaloisGroupPresentation:
    """``C3 x C3`` generated by the cosine rotation and the cube-root rotation."""
    for label in (COS7, CBRT_P):
        if label not in spec.labels:
            raise CocycleError(f"tower lacks the {label!r} step")
    return GaloisGroupPresentation([(cos7_rotation(spec), 3), (cbrt_rotation(spec), 3)])


def build_twist_cocycle(p: int, spec: TowerSpec) -> Cocycle:
    """``(sigma^i, tau^j) -> A^i`` with ``A`` the matrix of ``[Y:Z:pX]``."""
    G = cube_descent_presentation(spec)
    A = twist_matrix(p, spec)
    powers = [Matrix3.identity(spec), A, A * A]
    return Cocycle(G, {e: powers[e[0]] for e in G.elements()})


def coboundary(group: GaloisGroupPresentation, B: Matrix3) -> Cocycle:
    """``g -> B^-1 g(B)``."""
    Binv = B.inverse()
    return Cocycle(group, {e: Binv * B.map(group.automorphism(e)) for e in group.elements()})


def random_matrix(spec: TowerSpec, rng: random.Random, labels=None, size: int = 3) -> Matrix3:
    """Matrix with entries ``r0 + sum r_i * gen_i`` over the named generators
    (all of them by default) and small random integers ``r``."""
    gens = [spec.gen(lab) for lab in (labels if labels is not None else spec.labels)]
    rows = []
    for _ in range(3):
        row = []
        for _ in range(3):
            x = spec.coerce(rng.randint(-size, size))
            for g in gens:
                x = x + g * rng.randint(-size, size)
            row.append(x)
        rows.append(row)
    return Matrix3(rows, spec)


def hilbert90_trivialize(c: Cocycle, attempts: int = 10, seed: int = 0, labels=None):
    """Speiser averaging: ``C = sum_g a_g g(P)`` satisfies ``g(C) = a_g^-1 C``
    when the stored lifts form a genuine cocycle, so ``B = C^-1`` has
    ``a_g = B^-1 g(B)``.  Returns ``B`` or ``None`` (inconclusive).

    ``labels`` restricts the trial matrices to those generators, which keeps
    the entries sparse when only the top of a large tower is moved."""
    v = validate_cocycle(c)
    if not v.valid:
        raise CocycleError(f"not a cocycle: fails at {v.counterexample}")
    G = c.group
    els = G.elements()
    if all(c[e].is_scalar() for e in els):
        return Matrix3.identity(G.spec)
    rng = random.Random(seed)
    for _ in range(attempts):
        P = random_matrix(G.spec, rng, labels)
        C = None
        for e in els:
            term = c[e] * P.map(G.automorphism(e))
            C = term if C is None else C + term
        if not C.is_invertible():
            continue
        B = C.inverse()
        if all(c[e].projectively_equal(C * B.map(G.automorphism(e))) for e in els):
            return B
    return None


@dataclass
class DescentResult:
    ok: bool
    form: TernaryForm | None = None
    offending: tuple | None = None       # (monomial, coefficient)
    target: TowerSpec | None = None

    def __bool__(self):
        return self.ok


def descend_form(F: TernaryForm, B: Matrix3, target) -> DescentResult:
    """``F o B`` scaled to make its leading coefficient one, with every
    coefficient checked to lie in the ``target`` subtower."""
    if not B.is_invertible():
        raise ValueError("descent matrix is singular")
    spec = B.spec if B.spec.depth >= F.zero.spec.depth else F.zero.spec
    sub = target if isinstance(target, TowerSpec) else spec.sub(target)
    if not spec.has_prefix(sub):
        raise ValueError(f"{sub} is not a subtower of {spec}")
    G = substitute(F.map_coefficients(spec.coerce, spec.zero), B.coerce(spec))
    lead = G.terms[max(G.terms)]
    G = G * lead.inverse()
    for e in sorted(G.terms, reverse=True):
        if not G.terms[e].in_subtower(sub):
            return DescentResult(False, offending=(e, G.terms[e]), target=sub)
    out = G.map_coefficients(lambda x: x.restrict(sub), sub.zero)
    return DescentResult(True, form=out, target=sub)
