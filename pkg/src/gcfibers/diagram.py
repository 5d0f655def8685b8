"""Ladder diagrams, their faces, and comb-shaped vertices.

Coordinates: a lattice point is ``(x, y)``; the unit box with upper-right
corner ``(i, j)`` is called box ``(i, j)`` and carries the pattern variable
``u_{i,j}``.  An edge is ``Edge(x, y, "H")`` for the segment
``(x, y)-(x+1, y)`` or ``Edge(x, y, "V")`` for ``(x, y)-(x, y+1)``.

Faces are handled internally as integer bitmasks over the diagram's sorted
edge list; :class:`LadderFace` is the public, hashable value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import DomainError, EnumerationLimitError, InvariantError, UsageError
from .shapes import FlagShape

DEFAULT_GUARD = 500_000

Point = tuple[int, int]
Box = tuple[int, int]


class Edge(NamedTuple):
    x: int
    y: int
    orient: str  # "H" or "V"

    @property
    def start(self) -> Point:
        return (self.x, self.y)

    @property
    def end(self) -> Point:
        return (self.x + 1, self.y) if self.orient == "H" else (self.x, self.y + 1)

    @property
    def token(self) -> str:
        return f"{self.orient}:{self.x},{self.y}"

    @classmethod
    def parse(cls, token: str) -> "Edge":
        o, rest = token.split(":")
        x, y = rest.split(",")
        if o not in ("H", "V"):
            raise ValueError(f"bad edge orientation in {token!r}")
        return cls(int(x), int(y), o)

    def cells(self) -> tuple[Box, Box]:
        """The two boxes separated by this edge: (below, above) or (left, right)."""
        if self.orient == "H":
            return (self.x + 1, self.y), (self.x + 1, self.y + 1)
        return (self.x, self.y + 1), (self.x + 1, self.y + 1)

    @property
    def is_axis(self) -> bool:
        return (self.orient == "H" and self.y == 0) or (self.orient == "V" and self.x == 0)


def box_sides(i: int, j: int) -> dict[str, Edge]:
    return {
        "bottom": Edge(i - 1, j - 1, "H"),
        "top": Edge(i - 1, j, "H"),
        "left": Edge(i - 1, j - 1, "V"),
        "right": Edge(i, j - 1, "V"),
    }


def _edge_key(e: Edge):
    return (e.x, e.y, e.orient)


@dataclass(frozen=True)
class LadderFace:
    shape: FlagShape
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges), key=_edge_key)))

    @property
    def id(self) -> str:
        return ";".join(e.token for e in self.edges)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def vertices(self) -> frozenset:
        pts = set()
        for e in self.edges:
            pts.add(e.start)
            pts.add(e.end)
        return frozenset(pts)

    def __contains__(self, e) -> bool:
        return e in self.edge_set

    def __len__(self):
        return len(self.edges)

    @classmethod
    def parse(cls, shape: FlagShape, text: str) -> "LadderFace":
        return cls(shape, tuple(Edge.parse(t) for t in text.split(";") if t))


@dataclass(frozen=True)
class Region:
    """A connected piece of the board after cutting along a face."""

    boxes: frozenset
    bounded: bool
    # out-of-board boxes reached across a missing staircase edge
    outside: frozenset = field(default_factory=frozenset)


class LadderDiagram:
    """The grid graph of a flag shape together with its board of boxes."""

    def __init__(self, shape: FlagShape):
        self.shape = shape
        n = shape.n
        p = shape.padded()
        verts = set()
        # blocks j = 0..r-1; the block j = r would only add a dangling segment on y = 0
        for j in range(shape.r):
            for x in range(p[j], p[j + 1] + 1):
                for y in range(0, n - p[j + 1] + 1):
                    verts.add((x, y))
        self.vertices = frozenset(verts)
        edges = []
        for (x, y) in verts:
            if (x + 1, y) in verts:
                edges.append(Edge(x, y, "H"))
            if (x, y + 1) in verts:
                edges.append(Edge(x, y, "V"))
        self.edges: tuple[Edge, ...] = tuple(sorted(edges, key=_edge_key))
        self.index = {e: k for k, e in enumerate(self.edges)}
        self.tops = tuple(sorted(v for v in verts if v[0] + v[1] == n))
        self.boxes = frozenset((i, j) for (i, j) in verts if i >= 1 and j >= 1)
        self.full_mask = (1 << len(self.edges)) - 1
        self._out = {v: [] for v in verts}
        self._in = {v: [] for v in verts}
        for k, e in enumerate(self.edges):
            self._out[e.start].append((k, e.end))
            self._in[e.end].append((k, e.start))

    def __repr__(self):
        return f"LadderDiagram({self.shape})"

    def __eq__(self, other):
        return isinstance(other, LadderDiagram) and other.shape == self.shape

    def __hash__(self):
        return hash(self.shape)

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def dim(self) -> int:
        return len(self.boxes)

    # -- mask <-> face ------------------------------------------------------

    def mask_of(self, edges: Iterable[Edge]) -> int:
        m = 0
        for e in edges:
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise DomainError(f"edge {e.token} is not in the diagram {self.shape}") from None
        return m

    def edges_of(self, mask: int) -> tuple[Edge, ...]:
        out = []
        k = 0
        while mask:
            if mask & 1:
                out.append(self.edges[k])
            mask >>= 1
            k += 1
        return tuple(out)

    def face_of(self, mask: int) -> LadderFace:
        return LadderFace(self.shape, self.edges_of(mask))

    def full_face(self) -> LadderFace:
        return LadderFace(self.shape, self.edges)

    def _check(self, f: LadderFace):
        if f.shape != self.shape:
            raise UsageError(f"face belongs to {f.shape}, not {self.shape}")

    # -- path structure -----------------------------------------------------

    def prune(self, mask: int) -> int:
        """Keep the edges of ``mask`` that lie on an origin-to-top monotone path inside ``mask``."""
        fwd = {(0, 0)}
        for v in sorted(self.vertices, key=lambda p: p[0] + p[1]):
            if v not in fwd:
                continue
            for k, w in self._out[v]:
                if mask >> k & 1:
                    fwd.add(w)
        bwd = set(self.tops)
        for v in sorted(self.vertices, key=lambda p: -(p[0] + p[1])):
            if v not in bwd:
                continue
            for k, w in self._in[v]:
                if mask >> k & 1:
                    bwd.add(w)
        keep = 0
        for k, e in enumerate(self.edges):
            if mask >> k & 1 and e.start in fwd and e.end in bwd:
                keep |= 1 << k
        return keep

    def covers_tops(self, mask: int) -> bool:
        reached = set()
        for e in self.edges_of(mask):
            reached.add(e.end)
        return all(t in reached for t in self.tops)

    def is_face_mask(self, mask: int) -> bool:
        return mask != 0 and self.prune(mask) == mask and self.covers_tops(mask)

    def is_face(self, f: LadderFace) -> bool:
        self._check(f)
        if any(e not in self.index for e in f.edges):
            return False
        return self.is_face_mask(self.mask_of(f.edges))

    def regions(self, f: LadderFace) -> list[Region]:
        """Cut the board along ``f``.

        Boxes sharing a side that is not in ``f`` are glued.  A region is
        unbounded when one of its boxes has a missing side on the board
        boundary (staircase or axis).  Regions come sorted by their smallest box.
        """
        self._check(f)
        walls = f.edge_set
        parent = {b: b for b in self.boxes}

        def find(b):
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            return b

        leaks = {}
        for e in self.edges:
            if e in walls:
                continue
            c1, c2 = e.cells()
            in1, in2 = c1 in self.boxes, c2 in self.boxes
            if in1 and in2:
                r1, r2 = find(c1), find(c2)
                if r1 != r2:
                    parent[r1] = r2
            else:
                inside, other = (c1, c2) if in1 else (c2, c1)
                leaks.setdefault(inside, []).append(None if e.is_axis else other)
        groups = {}
        for b in self.boxes:
            groups.setdefault(find(b), set()).add(b)
        out = []
        for boxes in groups.values():
            exits = [o for b in boxes for o in leaks.get(b, [])]
            outside = frozenset(o for o in exits if o is not None)
            out.append(Region(frozenset(boxes), bounded=not exits, outside=outside))
        out.sort(key=lambda r: min(r.boxes))
        return out


def build_ladder(shape: FlagShape) -> LadderDiagram:
    return LadderDiagram(shape)


def positive_paths(d: LadderDiagram) -> list[LadderFace]:
    """All shortest lattice paths from the origin to a top vertex, sorted by id."""
    paths = []

    def walk(v, acc):
        if v in d.tops:
            paths.append(acc)
            return
        for k, w in d._out[v]:
            walk(w, acc | (1 << k))

    walk((0, 0), 0)
    faces = [d.face_of(m) for m in paths]
    faces.sort(key=lambda f: f.id)
    return faces


def _path_masks(d: LadderDiagram) -> list[int]:
    return [d.mask_of(p.edges) for p in positive_paths(d)]


def enumerate_face_masks(d: LadderDiagram, guard: int = DEFAULT_GUARD) -> list[int]:
    family = set()
    for p in _path_masks(d):
        new = {p}
        new.update(m | p for m in family)
        family |= new
        if len(family) > guard:
            raise EnumerationLimitError(
                f"union closure for {d.shape} exceeded {guard} subgraphs"
            )
    return [m for m in family if d.covers_tops(m)]


def enumerate_faces(d: LadderDiagram, guard: int = DEFAULT_GUARD) -> list[LadderFace]:
    """Every face of the diagram exactly once, sorted by ``(dimension, id)``."""
    faces = [d.face_of(m) for m in enumerate_face_masks(d, guard)]
    keyed = [(face_dimension(f), f.id, f) for f in faces]
    keyed.sort(key=lambda t: (t[0], t[1]))
    return [f for _, _, f in keyed]


def face_dimension(f: LadderFace) -> int:
    """First Betti number of the face graph."""
    verts = f.vertices
    if not verts:
        raise InvariantError("empty face")
    adj = {v: [] for v in verts}
    for e in f.edges:
        adj[e.start].append(e.end)
        adj[e.end].append(e.start)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(verts):
        raise InvariantError("face graph is disconnected")
    return len(f.edges) - len(verts) + 1


def face_contains(outer: LadderFace, inner: LadderFace) -> bool:
    if outer.shape != inner.shape:
        raise UsageError("faces belong to different diagrams")
    return inner.edge_set <= outer.edge_set


def comb_vertex(d: LadderDiagram, a: int, b: int) -> LadderFace:
    """The comb-shaped vertex attached to the box ``(a, b)``.

    Vertical segments: the axis up to height ``b-1`` and a tooth at each
    ``x = n_k`` (``n_k < n + 1 - b``) from height ``b-1`` to the top.  Breaks
    ``n_k >= n + 1 - b`` have their top vertex at height ``<= b-1`` and are
    reached by a horizontal run at that height.
    """
    if (a, b) not in d.boxes:
        raise DomainError(f"box ({a},{b}) is not in the board of {d.shape}")
    n = d.n
    edges = set()
    for y in range(b - 1):
        edges.add(Edge(0, y, "V"))
    for nk in d.shape.breaks:
        top_y = n - nk
        if nk < n + 1 - b:
            for x in range(nk):
                edges.add(Edge(x, b - 1, "H"))
            for y in range(b - 1, top_y):
                edges.add(Edge(nk, y, "V"))
        else:
            for x in range(nk):
                edges.add(Edge(x, top_y, "H"))
    f = LadderFace(d.shape, tuple(edges))
    if not d.is_face(f):
        raise InvariantError(f"comb for ({a},{b}) is not a face: {f.id}")
    return f
