"""Monotone Lagrangian fibers: face centers, partial traces and disc ledgers.

Everything here assumes the monotone spectrum (``c_1 = [omega]``) and works
in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .diagram import (
    DEFAULT_GUARD,
    Box,
    Edge,
    LadderDiagram,
    LadderFace,
    box_sides,
    comb_vertex,
    enumerate_face_masks,
    face_dimension,
)
from .errors import (
    DomainError,
    InvalidFaceError,
    InvariantError,
    NormalizationError,
    PreconditionError,
)
from .filling import FiberTopology, fill_l_blocks, fiber_topology
from .polytope import (
    GCPoint,
    GCPolytope,
    carrier_face,
    center_of_polytope,
    contains,
    frac_token,
    point_from_face,
)
from .shapes import is_monotone


def _require_monotone(P: GCPolytope):
    if not is_monotone(P.spectrum):
        raise NormalizationError(f"spectrum {P.spectrum} is not monotone for shape {P.shape}")


def generator_indices(d: LadderDiagram, f: LadderFace) -> list[Box]:
    """Upper-rightmost box of each bounded region, in the canonical order."""
    out = []
    for reg in d.regions(f):
        if not reg.bounded:
            continue
        top = max(i + j for i, j in reg.boxes)
        far = [bx for bx in reg.boxes if sum(bx) == top]
        if len(far) != 1:
            raise InvariantError(f"bounded region of {f.id} has no unique farthest box: {sorted(far)}")
        out.append(far[0])
    out.sort(key=lambda ab: (-(ab[0] + ab[1]), ab[0]))
    return out


def face_center(P: GCPolytope, d: LadderDiagram, f: LadderFace) -> GCPoint:
    """The distinguished point ``u_{a,b} = b - a`` of a face."""
    _require_monotone(P)
    coords = {}
    for reg in d.regions(f):
        if reg.bounded:
            top = max(i + j for i, j in reg.boxes)
            far = [bx for bx in reg.boxes if sum(bx) == top]
            if len(far) != 1:
                raise InvariantError(f"bounded region of {f.id} has no unique farthest box")
            a, b = far[0]
            value = Fraction(b - a)
        else:
            pins = {P.constants[o] for o in reg.outside}
            if len(pins) != 1:
                what = "conflicting constants" if pins else "no constant"
                raise InvalidFaceError(f"unbounded region {sorted(reg.boxes)} of {f.id} has {what}")
            value = pins.pop()
        for bx in reg.boxes:
            coords[bx] = value
    u = GCPoint(coords)
    if contains(P, u) and carrier_face(P, u) == f:
        return u
    if fill_l_blocks(d, f).uncovered:
        # the formula is only guaranteed on Lagrangian faces
        raise InvalidFaceError(f"center formula leaves non-Lagrangian face {f.id}")
    raise InvariantError(f"center of {f.id} is not in its relative interior")


def partial_trace(P: GCPolytope, u, a: int, b: int) -> Fraction:
    """``sum_{t=1..a} u_{t, a+b-t}`` with constants off the board."""
    if a < 1 or b < 1 or a + b > P.n:
        raise DomainError(f"partial trace index ({a},{b}) out of range for n = {P.n}")
    return sum((P.value(u, (t, a + b - t)) for t in range(1, a + 1)), Fraction(0))


def _lambda_sum(P: GCPolytope, a: int) -> Fraction:
    return sum((P.spectrum[i] for i in range(1, a + 1)), Fraction(0))


def max_component_face(P: GCPolytope, a: int, b: int) -> LadderFace:
    """Ladder face of ``{u_{i,a+b-i} = lambda_i : i <= a}``."""
    d = P.diagram
    n = P.n
    drop = set()
    for i in range(1, a + 1):
        for j in range(a + b - i, n - i + 1):
            e = Edge(i - 1, j, "H")
            if e in d.index:
                drop.add(e)
    mask = d.prune(d.mask_of(e for e in d.edges if e not in drop))
    if not d.is_face_mask(mask):
        raise InvariantError(f"maximal component for ({a},{b}) does not give a face")
    return d.face_of(mask)


def codim_max_component(P: GCPolytope, a: int, b: int) -> int:
    """Real codimension of the maximal fixed component of ``Psi^{a,b}``."""
    _require_monotone(P)
    if (a, b) not in P.diagram.boxes:
        raise DomainError(f"box ({a},{b}) is not in the board of {P.shape}")
    center = center_of_polytope(P)
    value = 2 * (_lambda_sum(P, a) - partial_trace(P, center, a, b))
    F = max_component_face(P, a, b)
    other = 2 * (P.dim - face_dimension(F))
    if value != other:
        raise InvariantError(f"codimension mismatch at ({a},{b}): {value} vs {other}")
    return int(value)


@dataclass(frozen=True)
class DiscGeneratorReport:
    a: int
    b: int
    c: Fraction
    psi_center: Fraction
    psi_point: Fraction
    maslov: int
    area: Fraction

    @property
    def monotone_ratio_ok(self) -> bool:
        return self.maslov == 2 * self.area

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": frac_token(self.c),
            "psi_center": frac_token(self.psi_center),
            "psi_point": frac_token(self.psi_point),
            "maslov": self.maslov,
            "area_num": self.area.numerator,
            "area_den": self.area.denominator,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DiscGeneratorReport":
        return cls(
            obj["a"],
            obj["b"],
            Fraction(obj["c"]),
            Fraction(obj["psi_center"]),
            Fraction(obj["psi_point"]),
            obj["maslov"],
            Fraction(obj["area_num"], obj["area_den"]),
        )


def smooth_at(P: GCPolytope, u, a: int, b: int) -> bool:
    """``u_{a,b} > u_{a+1,b-1}``; vacuous on the bottom row."""
    if b == 1:
        return True
    return P.value(u, (a, b)) > P.value(u, (a + 1, b - 1))


def disc_ledger(P: GCPolytope, d: LadderDiagram, f: LadderFace, u: GCPoint) -> list[DiscGeneratorReport]:
    _require_monotone(P)
    filling = fill_l_blocks(d, f)
    if filling.uncovered:
        raise PreconditionError(f"face {f.id} is not Lagrangian")
    if carrier_face(P, u) != f:
        raise PreconditionError(f"point {u.serialize()} is not in the relative interior of {f.id}")
    center = center_of_polytope(P)
    out = []
    for a, b in generator_indices(d, f):
        if not smooth_at(P, u, a, b):
            raise PreconditionError(f"point {u.serialize()} is off the smooth locus of ({a},{b})")
        c = _lambda_sum(P, a)
        pc = partial_trace(P, center, a, b)
        pu = partial_trace(P, u, a, b)
        mu = 2 * (c - pc)
        if mu.denominator != 1:
            raise InvariantError(f"non-integral Maslov index at ({a},{b})")
        out.append(DiscGeneratorReport(a, b, c, pc, pu, int(mu), c - pu))
    return out


def is_monotone_fiber(P: GCPolytope, d: LadderDiagram, u: GCPoint) -> bool:
    _require_monotone(P)
    f = carrier_face(P, u)
    if fill_l_blocks(d, f).uncovered:
        return False
    center = center_of_polytope(P)
    verdict = all(
        partial_trace(P, u, a, b) == partial_trace(P, center, a, b) for a, b in generator_indices(d, f)
    )
    if verdict != (face_center(P, d, f) == u):
        raise InvariantError(f"trace test and face center disagree at {u.serialize()}")
    return verdict


@dataclass(frozen=True)
class MonotoneFiberReport:
    face: LadderFace
    dim: int
    center: GCPoint
    topology: FiberTopology
    generators: tuple[DiscGeneratorReport, ...]

    @property
    def face_id(self) -> str:
        return self.face.id

    def to_json(self) -> dict:
        return {
            "face_id": self.face.id,
            "dim": self.dim,
            "center": self.center.to_json(),
            "topology": self.topology.to_json(),
            "generators": [g.to_json() for g in self.generators],
        }


def monotone_report(P: GCPolytope, d: LadderDiagram, f: LadderFace) -> MonotoneFiberReport:
    filling = fill_l_blocks(d, f)
    topo = fiber_topology(filling, f)
    u = face_center(P, d, f)
    gens = tuple(disc_ledger(P, d, f, u))
    bad = [g for g in gens if not g.monotone_ratio_ok]
    if bad:
        raise InvariantError(f"center of {f.id} fails the monotonicity ratio at {[(g.a, g.b) for g in bad]}")
    return MonotoneFiberReport(f, face_dimension(f), u, topo, gens)


def classify_monotone(
    P: GCPolytope, d: Optional[LadderDiagram] = None, guard: int = DEFAULT_GUARD
) -> list[MonotoneFiberReport]:
    """One report per Lagrangian face, at its center."""
    _require_monotone(P)
    d = d or P.diagram
    reports = []
    for mask in enumerate_face_masks(d, guard):
        f = d.face_of(mask)
        if fill_l_blocks(d, f).uncovered:
            continue
        reports.append(monotone_report(P, d, f))
    reports.sort(key=lambda r: (-r.dim, r.face_id))
    return reports


def maslov_from_weights(weights: Iterable[int]) -> int:
    return -2 * sum(int(w) for w in weights)


# -- comb-shaped vertices and their incident edges ------------------------------


@dataclass(frozen=True)
class IncidentEdge:
    kind: str  # "A" or "B"
    face: LadderFace
    hook: frozenset
    vector: tuple[tuple[Box, int], ...]
    pairing: int
    length: Fraction

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "face_id": self.face.id,
            "hook": [list(bx) for bx in sorted(self.hook)],
            "pairing": self.pairing,
            "length": frac_token(self.length),
        }


@dataclass(frozen=True)
class CombIncidentData:
    a: int
    b: int
    face: LadderFace
    vertex: GCPoint
    edges: tuple[IncidentEdge, ...]

    @property
    def pairings(self) -> list[int]:
        return [e.pairing for e in self.edges]


def _rectangle(boxes) -> tuple[int, int, int, int]:
    xs = [i for i, _ in boxes]
    ys = [j for _, j in boxes]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    if len(boxes) != (x1 - x0 + 1) * (y1 - y0 + 1):
        raise InvariantError(f"comb region {sorted(boxes)} is not a rectangle")
    return x0, x1, y0, y1


def _hook_boundary(hook: frozenset) -> set:
    counts: dict = {}
    for i, j in hook:
        for e in box_sides(i, j).values():
            counts[e] = counts.get(e, 0) + 1
    return {e for e, c in counts.items() if c == 1}


def _edge_length(P: GCPolytope, v: GCPoint, vec: dict) -> Fraction:
    """Largest ``t`` with ``v + t * vec`` in the polytope."""
    t_max = None
    for q in P.inequalities:
        g0 = P.value(v, q.greater) - P.value(v, q.lesser)
        g1 = vec.get(q.greater, 0) - vec.get(q.lesser, 0)
        if g1 < 0:
            t = g0 / -g1
            t_max = t if t_max is None else min(t_max, t)
    if t_max is None or t_max <= 0:
        raise InvariantError("incident edge direction leaves the polytope immediately")
    return t_max


def comb_incident_data(P: GCPolytope, d: LadderDiagram, a: int, b: int) -> CombIncidentData:
    """The comb vertex at ``(a, b)``, its ``dim`` incident edges and their pairings with ``l``."""
    comb = comb_vertex(d, a, b)
    v = point_from_face(P, comb)
    ell = {(i, a + b - i) for i in range(1, a + 1)}
    walls = comb.edge_set
    edges = []
    for reg in d.regions(comb):
        x0, x1, y0, y1 = _rectangle(reg.boxes)
        bottom = all(Edge(i - 1, y0 - 1, "H") in walls for i in range(x0, x1 + 1))
        right = all(Edge(x1, j - 1, "V") in walls for j in range(y0, y1 + 1))
        top = all(Edge(i - 1, y1, "H") in walls for i in range(x0, x1 + 1))
        left = all(Edge(x0 - 1, j - 1, "V") in walls for j in range(y0, y1 + 1))
        is_a, is_b = bottom and right, top and left
        if is_a == is_b:
            raise InvariantError(f"comb region {sorted(reg.boxes)} is neither A- nor B-type")
        w, h = x1 - x0 + 1, y1 - y0 + 1
        for p in range(1, w + 1):
            for q in range(1, h + 1):
                if is_a:
                    hook = {(x1 - t, y0) for t in range(p)} | {(x1, y0 + s) for s in range(q)}
                    sign = -1
                else:
                    hook = {(x0 + t, y1) for t in range(p)} | {(x0, y1 - s) for s in range(q)}
                    sign = 1
                hook = frozenset(hook)
                f = LadderFace(d.shape, tuple(walls | _hook_boundary(hook)))
                if not d.is_face(f) or face_dimension(f) != 1:
                    raise InvariantError(f"hook {sorted(hook)} does not give an edge face")
                vec = {bx: sign for bx in hook}
                length = _edge_length(P, v, vec)
                mid = GCPoint({k: v[k] + length / 2 * vec.get(k, 0) for k in P.variables})
                if carrier_face(P, mid) != f:
                    raise InvariantError(f"hook {sorted(hook)} does not match its polytope edge")
                pairing = sum(vec.get(bx, 0) for bx in ell)
                edges.append(
                    IncidentEdge(
                        "A" if is_a else "B", f, hook, tuple(sorted(vec.items())), pairing, length
                    )
                )
    edges.sort(key=lambda e: e.face.id)
    return CombIncidentData(a, b, comb, v, tuple(edges))
