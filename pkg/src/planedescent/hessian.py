"""The Hessian group of order 18 as projective 3x3 matrices, and invariance
checks of plane forms against it."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .curves import PlaneCurve
from .tower.field import TowerSpec
from .tower.serialize import element_to_json
from .tower.standard import ZETA3, eisenstein_field
from .ternary.forms import TernaryForm, scalar_ratio, substitute
from .ternary.matrix import Matrix3


class GroupClosureError(RuntimeError):
    pass


def hessian_generators(spec: TowerSpec | None = None):
    """``S = diag(1, z, z^2)``, the cyclic permutation ``T`` and the
    transposition ``R`` swapping the last two coordinates."""
    spec = spec or eisenstein_field()
    z = spec.gen(ZETA3)
    S = Matrix3.diag(1, z, z * z, spec)
    T = Matrix3([[0, 1, 0], [0, 0, 1], [1, 0, 0]], spec)
    R = Matrix3([[1, 0, 0], [0, 0, 1], [0, 1, 0]], spec)
    return S, T, R


@dataclass
class ProjectiveMatrixGroup:
    elements: list
    generators: list      # indices into ``elements``
    closed: bool = True

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, M: Matrix3) -> int:
        key = M.projective_key()
        for i, g in enumerate(self.elements):
            if g.projective_key() == key:
                return i
        raise KeyError("matrix not in group")

    def __contains__(self, M: Matrix3) -> bool:
        try:
            self.index(M)
        except KeyError:
            return False
        return True

    def order_histogram(self) -> dict:
        return dict(sorted(Counter(g.projective_order() for g in self.elements).items()))

    def to_json(self) -> dict:
        return {"order": self.order, "generators": list(self.generators),
                "elements": [[[element_to_json(x) for x in row] for row in g.rows]
                             for g in self.elements]}


def generate_group(gens, bound: int = 1000) -> ProjectiveMatrixGroup:
    """Breadth-first closure modulo scalars; elements are normalised and
    listed in discovery order, starting with the identity."""
    gens = [g.normalized() for g in gens]
    for g in gens:
        if not g.is_invertible():
            raise ValueError("generators must be invertible")
    spec = gens[0].spec if gens else TowerSpec.base()
    for g in gens:
        if g.spec.depth > spec.depth:
            spec = g.spec
    ident = Matrix3.identity(spec)
    elements = [ident]
    seen = {ident.projective_key(): 0}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = (g * s).normalized()
            key = h.projective_key()
            if key not in seen:
                if len(elements) >= bound:
                    raise GroupClosureError(f"closure exceeds bound {bound}")
                seen[key] = len(elements)
                elements.append(h)
                queue.append(h)
    gen_idx = [seen[g.coerce(spec).projective_key()] for g in gens]
    return ProjectiveMatrixGroup(elements, gen_idx)


def hessian_group(spec: TowerSpec | None = None) -> ProjectiveMatrixGroup:
    return generate_group(list(hessian_generators(spec)))


def invariance_scalar(F: TernaryForm, M: Matrix3):
    """``lam`` with ``F o M = lam * F``, or ``None``."""
    return scalar_ratio(F, substitute(F, M))


def conjugate_group(G: ProjectiveMatrixGroup, D: Matrix3) -> ProjectiveMatrixGroup:
    """``{D^-1 g D}``: the group preserving ``F o D`` when ``G`` preserves ``F``."""
    if not D.is_invertible():
        raise ValueError("conjugating matrix is singular")
    Dinv = D.inverse()
    elements, seen = [], {}
    for g in G.elements:
        h = (Dinv * g * D).normalized()
        key = h.projective_key()
        if key not in seen:
            seen[key] = len(elements)
            elements.append(h)
    gens = [seen[(Dinv * G.elements[i] * D).normalized().projective_key()] for i in G.generators]
    return ProjectiveMatrixGroup(elements, gens, G.closed)


@dataclass
class AutomorphismReport:
    scalars: list          # invariance scalar per element, None on failure
    group_order: int

    @property
    def passed(self) -> int:
        return sum(s is not None for s in self.scalars)

    @property
    def contained(self) -> bool:
        return self.passed == self.group_order

    @property
    def verdict(self) -> str:
        return "G is contained in Aut(model)" if self.contained else "G is not contained in Aut(model)"

    def failures(self) -> list[int]:
        return [i for i, s in enumerate(self.scalars) if s is None]

    def to_json(self) -> dict:
        return {"passed": self.passed, "total": self.group_order, "contained": self.contained,
                "scalars": [str(s) if s is not None else None for s in self.scalars]}


def automorphism_report(C, G: ProjectiveMatrixGroup) -> AutomorphismReport:
    F = C.form if isinstance(C, PlaneCurve) else C
    spec = F.zero.spec
    for g in G.elements:
        if g.spec.depth > spec.depth:
            spec = g.spec
    if spec is not F.zero.spec:
        F = F.map_coefficients(spec.coerce, spec.zero)
    scalars = [invariance_scalar(F, g.coerce(spec) if g.spec != spec else g) for g in G.elements]
    return AutomorphismReport(scalars, G.order)
