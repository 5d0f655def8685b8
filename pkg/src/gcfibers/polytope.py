"""Exact H-description of the Gelfand-Cetlin polytope.

The pattern inequalities are ``u_{i,j+1} >= u_{i,j} >= u_{i+1,j}`` with the top
row ``u_{i,n+1-i} = lambda_i``.  Every non-trivial inequality sits on exactly
one non-axis edge of the ladder diagram, between the two boxes that edge
separates; that is how faces of the diagram translate into equalities.

All arithmetic here is over :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Union

from .diagram import Box, Edge, LadderDiagram, LadderFace, build_ladder
from .errors import (
    DomainError,
    InvariantError,
    NormalizationError,
    OracleLimitError,
    UsageError,
)
from .shapes import FlagShape, Spectrum, is_monotone, monotone_spectrum

ORACLE_MAX_DIM = 7


def frac_token(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


class GCPoint:
    """An exact assignment ``(i, j) -> u_{i,j}`` on the in-board indices."""

    __slots__ = ("_coords",)

    def __init__(self, coords: Mapping[Box, object]):
        self._coords = {tuple(k): Fraction(v) for k, v in coords.items()}

    @property
    def coords(self) -> dict:
        return dict(self._coords)

    def __getitem__(self, ij: Box) -> Fraction:
        return self._coords[ij]

    def __contains__(self, ij) -> bool:
        return ij in self._coords

    def keys(self):
        return sorted(self._coords)

    def __eq__(self, other):
        return isinstance(other, GCPoint) and other._coords == self._coords

    def __hash__(self):
        return hash(tuple(sorted(self._coords.items())))

    def __repr__(self):
        return f"GCPoint({self.serialize()})"

    def serialize(self) -> str:
        return ";".join(f"{i},{j}={frac_token(v)}" for (i, j), v in sorted(self._coords.items()))

    @classmethod
    def parse(cls, text: str) -> "GCPoint":
        coords = {}
        try:
            for tok in text.split(";"):
                tok = tok.strip()
                if not tok:
                    continue
                key, val = tok.split("=")
                i, j = key.split(",")
                coords[(int(i), int(j))] = Fraction(val)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse point {text!r}; expected 'i,j=p/q;...'") from exc
        return cls(coords)

    def to_json(self) -> list:
        return [
            {"i": i, "j": j, "num": v.numerator, "den": v.denominator}
            for (i, j), v in sorted(self._coords.items())
        ]

    @classmethod
    def from_json(cls, items) -> "GCPoint":
        return cls({(d["i"], d["j"]): Fraction(d["num"], d["den"]) for d in items})


class Inequality(NamedTuple):
    greater: Box
    lesser: Box
    edge: Edge


Term = Union[Box, Fraction]


def _term_token(t: Term) -> str:
    if isinstance(t, Fraction):
        return frac_token(t)
    return f"{t[0]},{t[1]}"


@dataclass(frozen=True)
class EqualitySystem:
    relations: frozenset  # of (lhs box, rhs box-or-Fraction)

    def tokens(self) -> list[str]:
        return sorted(f"{_term_token(l)}={_term_token(r)}" for l, r in self.relations)

    def serialize(self) -> str:
        return ";".join(self.tokens())

    def __len__(self):
        return len(self.relations)

    def __or__(self, other: "EqualitySystem") -> "EqualitySystem":
        return EqualitySystem(self.relations | other.relations)


class GCPolytope:
    def __init__(self, spectrum: Spectrum):
        self.spectrum = spectrum
        self.shape: FlagShape = spectrum.shape
        self.diagram: LadderDiagram = build_ladder(self.shape)
        n = spectrum.n
        self.variables: tuple[Box, ...] = tuple(sorted(self.diagram.boxes))
        self.constants: dict[Box, Fraction] = {}
        for i in range(1, n + 1):
            for j in range(1, n + 2 - i):
                if (i, j) not in self.diagram.boxes:
                    self.constants[(i, j)] = spectrum[i]
        ineqs = []
        for e in self.diagram.edges:
            if e.is_axis:
                continue
            c1, c2 = e.cells()
            if e.orient == "H":
                ineqs.append(Inequality(c2, c1, e))
            else:
                ineqs.append(Inequality(c1, c2, e))
        self.inequalities: tuple[Inequality, ...] = tuple(ineqs)
        self.edge_inequality = {q.edge: q for q in ineqs}

    def __repr__(self):
        return f"GCPolytope({self.spectrum})"

    @property
    def n(self) -> int:
        return self.spectrum.n

    @property
    def dim(self) -> int:
        return len(self.variables)

    def is_variable(self, ij: Box) -> bool:
        return ij in self.diagram.boxes

    def value(self, u, ij: Box):
        """``u_{i,j}`` read from ``u`` on the board, from the constants elsewhere."""
        if ij in self.diagram.boxes:
            return u[ij]
        try:
            return self.constants[ij]
        except KeyError:
            raise DomainError(f"index {ij} is outside the pattern") from None

    def constraint_strings(self) -> list[str]:
        def show(ij):
            return frac_token(self.constants[ij]) if ij in self.constants else f"u{ij[0]},{ij[1]}"

        return [f"{show(q.greater)}>={show(q.lesser)}" for q in self.inequalities]

    def _check_point(self, u: GCPoint):
        if set(u.keys()) != set(self.variables):
            raise UsageError("point index set does not match the polytope variables")

    @cached_property
    def _vertex_cache(self):
        return _enumerate_vertices(self, EqualitySystem(frozenset()))


def build_polytope(spectrum: Spectrum) -> GCPolytope:
    return GCPolytope(spectrum)


def in_board_spectral(spectrum: Spectrum, i: int, j: int) -> bool:
    return spectrum[i] > spectrum[spectrum.n + 1 - j]


def contains(P: GCPolytope, u: GCPoint, strict: bool = False) -> bool:
    P._check_point(u)
    for q in P.inequalities:
        hi, lo = P.value(u, q.greater), P.value(u, q.lesser)
        if hi < lo or (strict and hi == lo):
            return False
    return True


def tight_edges(P: GCPolytope, u) -> set:
    return {q.edge for q in P.inequalities if P.value(u, q.greater) == P.value(u, q.lesser)}


def center_of_polytope(P: GCPolytope) -> GCPoint:
    if not is_monotone(P.spectrum):
        raise NormalizationError(
            f"spectrum {P.spectrum} is not the monotone spectrum {monotone_spectrum(P.shape)}"
        )
    return GCPoint({(i, j): j - i for (i, j) in P.variables})


def face_equalities(P: GCPolytope, f: LadderFace) -> EqualitySystem:
    """Equalities cut out by the edges missing from ``f``."""
    if f.shape != P.shape:
        raise UsageError("face and polytope come from different shapes")
    rels = set()
    for e in P.diagram.edges:
        if e in f.edge_set:
            continue
        if e.orient == "H":
            lhs, rhs = (e.x + 1, e.y), (e.x + 1, e.y + 1)
        else:
            lhs, rhs = (e.x, e.y + 1), (e.x + 1, e.y + 1)
        if 0 in lhs:
            continue
        lt = lhs if P.is_variable(lhs) else P.constants[lhs]
        rt = rhs if P.is_variable(rhs) else P.constants[rhs]
        if isinstance(lt, Fraction) and not isinstance(rt, Fraction):
            lt, rt = rt, lt
        rels.add((lt, rt))
    return EqualitySystem(frozenset(rels))


# -- brute-force oracle -------------------------------------------------------


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Unique solution of a square system, or None if singular."""
    d = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(d):
        piv = next((r for r in range(c, d) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        for r in range(d):
            if r != c and m[r][c] != 0:
                k = m[r][c] / pv
                m[r] = [a - k * b for a, b in zip(m[r], m[c])]
    return [m[r][d] / m[r][r] for r in range(d)]


def _rank(vectors: list[list[Fraction]]) -> int:
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                k = rows[r][c] / rows[rank][c]
                rows[r] = [a - k * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def affine_dimension(points: list) -> int:
    if not points:
        return -1
    base = points[0]
    return _rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _enumerate_vertices(P: GCPolytope, E: EqualitySystem) -> list[tuple]:
    """Vertices of ``{u in P : E}`` as tuples ordered like ``P.variables``."""
    parent: dict = {}

    def node(t):
        if isinstance(t, Fraction):
            return ("c", t)
        if t in P.constants:
            return ("c", P.constants[t])
        return ("v", t)

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in P.variables:
        find(("v", v))
    for lhs, rhs in E.relations:
        a, b = find(node(lhs)), find(node(rhs))
        if a != b:
            # keep constants as roots
            if a[0] == "c" and b[0] == "c":
                return []
            if a[0] == "c":
                parent[b] = a
            else:
                parent[a] = b
    free = sorted({find(("v", v)) for v in P.variables if find(("v", v))[0] == "v"})
    col = {r: k for k, r in enumerate(free)}
    d = len(free)

    def affine(cell):
        """(coefficient row, constant) of a cell in the reduced variables."""
        root = find(node(cell))
        row = [Fraction(0)] * d
        if root[0] == "c":
            return row, root[1]
        row[col[root]] = Fraction(1)
        return row, Fraction(0)

    cons = set()
    for q in P.inequalities:
        (ra, ca), (rb, cb) = affine(q.greater), affine(q.lesser)
        row = tuple(x - y for x, y in zip(ra, rb))
        c = ca - cb
        if not any(row):
            if c < 0:
                return []
            continue
        cons.add((row, c))
    cons = sorted(cons)

    def lift(y):
        out = []
        for v in P.variables:
            root = find(("v", v))
            out.append(root[1] if root[0] == "c" else y[col[root]])
        return tuple(out)

    if d == 0:
        return [lift([])]
    found = set()
    for subset in combinations(range(len(cons)), d):
        rows = [list(cons[k][0]) for k in subset]
        rhs = [-cons[k][1] for k in subset]
        y = _solve(rows, rhs)
        if y is None:
            continue
        if all(sum(a * b for a, b in zip(row, y)) + c >= 0 for row, c in cons):
            found.add(lift(y))
    return sorted(found)


def _check_oracle_size(P: GCPolytope):
    if P.dim > ORACLE_MAX_DIM:
        raise OracleLimitError(f"brute-force oracle limited to dim <= {ORACLE_MAX_DIM}, got {P.dim}")


def polytope_vertices(P: GCPolytope) -> list[tuple]:
    _check_oracle_size(P)
    return list(P._vertex_cache)


def system_vertices(P: GCPolytope, E: EqualitySystem) -> list[tuple]:
    """Vertices of ``{u in P : E}``.

    The set is an intersection of faces (each relation equates two sides of a
    valid inequality), so its vertices are the polytope vertices satisfying E.
    """
    _check_oracle_size(P)
    idx = {v: k for k, v in enumerate(P.variables)}

    def val(vert, t):
        if isinstance(t, Fraction):
            return t
        if t in idx:
            return vert[idx[t]]
        return P.constants[t]

    return [v for v in P._vertex_cache if all(val(v, l) == val(v, r) for l, r in E.relations)]


def affine_dim_bruteforce(P: GCPolytope, E: EqualitySystem) -> int:
    return affine_dimension(system_vertices(P, E))


def face_lattice_bruteforce(P: GCPolytope) -> list[tuple[int, frozenset]]:
    """All non-empty faces as ``(dim, vertex set)`` from vertex tight sets."""
    verts = polytope_vertices(P)
    idx = {v: k for k, v in enumerate(P.variables)}

    def val(vert, cell):
        return vert[idx[cell]] if cell in idx else P.constants[cell]

    tight = {
        v: frozenset(k for k, q in enumerate(P.inequalities) if val(v, q.greater) == val(v, q.lesser))
        for v in verts
    }
    closed = set(tight.values())
    frontier = set(closed)
    while frontier:
        new = set()
        for a in frontier:
            for b in closed:
                c = a & b
                if c not in closed:
                    new.add(c)
        closed |= new
        frontier = new
    faces = {}
    for T in closed:
        vs = frozenset(v for v in verts if T <= tight[v])
        faces[vs] = affine_dimension(sorted(vs))
    whole = frozenset(verts)
    faces.setdefault(whole, affine_dimension(sorted(whole)))
    return sorted(((d, vs) for vs, d in faces.items()), key=lambda t: (t[0], sorted(t[1])))


# -- carrier face ---------------------------------------------------------------


def carrier_face(P: GCPolytope, u: GCPoint) -> LadderFace:
    """The face whose relative interior contains ``u``."""
    if not contains(P, u):
        raise DomainError(f"point {u.serialize()} is outside the polytope")
    d = P.diagram
    tight = tight_edges(P, u)
    mask = d.prune(d.mask_of(e for e in d.edges if e not in tight))
    f = d.face_of(mask)
    if not d.is_face_mask(mask):
        raise InvariantError(f"carrier of {u.serialize()} is not a face")
    missing = {e for e in d.edges if not e.is_axis and e not in f.edge_set}
    if missing != tight:
        raise InvariantError(f"tight set at {u.serialize()} does not match its carrier face")
    return f


def point_from_face(P: GCPolytope, f: LadderFace) -> GCPoint:
    """The unique point of a zero-dimensional face."""
    verts = _enumerate_vertices(P, face_equalities(P, f)) if P.dim > ORACLE_MAX_DIM else None
    if verts is None:
        verts = system_vertices(P, face_equalities(P, f))
    if len(verts) != 1:
        raise InvariantError(f"face {f.id} does not determine a single point")
    return GCPoint(dict(zip(P.variables, verts[0])))


def equalities_hold(P: GCPolytope, E: EqualitySystem, u: GCPoint) -> bool:
    def val(t):
        return t if isinstance(t, Fraction) else P.value(u, t)

    return all(val(l) == val(r) for l, r in E.relations)


def as_point(P: GCPolytope, values: Iterable) -> GCPoint:
    return GCPoint(dict(zip(P.variables, values)))
