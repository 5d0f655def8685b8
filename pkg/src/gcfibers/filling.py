"""L-block fillings of ladder faces and the fiber data they encode."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .diagram import Box, Edge, LadderDiagram, LadderFace, face_dimension
from .errors import PreconditionError


class LBlock(NamedTuple):
    k: int
    a: int
    b: int

    @property
    def covered(self) -> frozenset:
        boxes = {(self.a, self.b + p) for p in range(self.k)}
        boxes |= {(self.a + p, self.b) for p in range(self.k)}
        return frozenset(boxes)

    @property
    def level(self) -> int:
        return self.a + self.b + self.k - 1

    @property
    def sphere_dim(self) -> int:
        return 2 * self.k - 1

    @property
    def token(self) -> str:
        return f"L{self.k}@({self.a},{self.b})"

    def right_wall(self) -> Edge:
        return Edge(self.a + self.k - 1, self.b - 1, "V")

    def top_wall(self) -> Edge:
        return Edge(self.a - 1, self.b + self.k - 1, "H")

    def interior_edges(self) -> list[Edge]:
        out = [Edge(self.a - 1, self.b + p, "H") for p in range(self.k - 1)]
        out += [Edge(self.a + p, self.b - 1, "V") for p in range(self.k - 1)]
        return out


def _block_key(blk: LBlock):
    return (-blk.k, blk.a, blk.b)


@dataclass(frozen=True)
class LBlockFilling:
    blocks: tuple[LBlock, ...]
    board: frozenset

    @property
    def covered(self) -> frozenset:
        out = set()
        for blk in self.blocks:
            out |= blk.covered
        return frozenset(out)

    @property
    def covered_area(self) -> int:
        return len(self.covered)

    @property
    def block_area(self) -> int:
        return sum(blk.sphere_dim for blk in self.blocks)

    @property
    def overlaps(self) -> list[tuple[LBlock, LBlock]]:
        """Pairs of blocks sharing a box; expected to be empty."""
        out = []
        for i, p in enumerate(self.blocks):
            for q in self.blocks[i + 1 :]:
                if p.covered & q.covered:
                    out.append((p, q))
        return out

    @property
    def disjoint(self) -> bool:
        return not self.overlaps

    @property
    def uncovered(self) -> frozenset:
        return self.board - self.covered

    def serialize(self) -> str:
        return ";".join(blk.token for blk in self.blocks)


def fill_l_blocks(d: LadderDiagram, f: LadderFace) -> LBlockFilling:
    """Every L-block of ``f`` meeting both wall conditions, largest first."""
    d._check(f)
    walls = f.edge_set
    blocks = []
    for a, b in d.boxes:
        k = 1
        while True:
            blk = LBlock(k, a, b)
            if not blk.covered <= d.boxes:
                break
            # once an interior edge is a wall, every larger block at (a, b) fails too
            if any(e in walls for e in blk.interior_edges()):
                break
            if blk.right_wall() in walls and blk.top_wall() in walls:
                blocks.append(blk)
            k += 1
    blocks.sort(key=_block_key)
    return LBlockFilling(tuple(blocks), frozenset(d.boxes))


def is_lagrangian(d: LadderDiagram, f: LadderFace) -> bool:
    return not fill_l_blocks(d, f).uncovered


@dataclass(frozen=True)
class FiberTopology:
    torus_rank: int
    spheres: tuple[int, ...]  # every block's sphere dimension, ascending
    levels: tuple[tuple[int, tuple[int, ...]], ...]
    label: str

    @property
    def signature(self) -> tuple[int, tuple[int, ...]]:
        """``(torus rank, dimensions of the non-circle spheres)``."""
        return self.torus_rank, tuple(s for s in self.spheres if s > 1)

    def serialize(self) -> str:
        parts = [f"T^{self.torus_rank}"] if self.torus_rank else []
        parts += [f"S^{s}" for s in self.spheres if s > 1]
        return " x ".join(parts) if parts else "pt"

    def to_json(self) -> dict:
        return {"torus_rank": self.torus_rank, "spheres": list(self.spheres), "label": self.label}


def _label(blocks: tuple[LBlock, ...], torus_rank: int | None = None) -> str:
    present = set(blocks)
    used = set()
    unitary = []
    for blk in blocks:
        # U(2) is S^3 x S^1 and reads better that way
        if blk.k < 3 or blk in used:
            continue
        chain = [LBlock(blk.k - t, blk.a + t, blk.b + t) for t in range(blk.k)]
        if all(c in present and c not in used for c in chain):
            used.update(chain)
            unitary.append(blk.k)
    rest = [blk for blk in blocks if blk not in used]
    tori = sum(1 for blk in rest if blk.k == 1) if torus_rank is None else torus_rank
    spheres = sorted(blk.sphere_dim for blk in rest if blk.k > 1)
    parts = [f"U({m})" for m in unitary]
    if tori == 1 and not parts and not spheres:
        parts.append("S^1")
    elif tori:
        parts.append(f"T^{tori}")
    parts += [f"S^{s}" for s in spheres]
    return " x ".join(parts) if parts else "pt"


def fiber_topology(filling: LBlockFilling, f: LadderFace, require_lagrangian: bool = True) -> FiberTopology:
    """Sphere and torus data of the fiber over the relative interior of ``f``.

    For a non-Lagrangian face (``require_lagrangian=False``) only the torus
    factor of rank ``dim f`` and the spheres of the larger blocks are reported.
    """
    if filling.uncovered:
        if require_lagrangian:
            raise PreconditionError(
                f"face {f.id} is not fillable; uncovered boxes {sorted(filling.uncovered)}"
            )
        big = tuple(blk for blk in filling.blocks if blk.k > 1)
        rank = face_dimension(f)
        spheres = tuple([1] * rank + sorted(blk.sphere_dim for blk in big))
        return FiberTopology(rank, spheres, _levels(big), _label(big, torus_rank=rank))
    blocks = filling.blocks
    rank = sum(1 for blk in blocks if blk.k == 1)
    spheres = tuple(sorted(blk.sphere_dim for blk in blocks))
    return FiberTopology(rank, spheres, _levels(blocks), _label(blocks))


def _levels(blocks) -> tuple:
    lv: dict[int, list[int]] = {}
    for blk in blocks:
        lv.setdefault(blk.level, []).append(blk.sphere_dim)
    return tuple((k, tuple(sorted(v))) for k, v in sorted(lv.items()))
