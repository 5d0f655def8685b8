import pytest

from _support import SMALL_SHAPES, diagram, faces
from gcfibers.diagram import Edge, LadderFace, face_dimension
from gcfibers.errors import PreconditionError
from gcfibers.filling import LBlock, fiber_topology, fill_l_blocks, is_lagrangian

SHAPES = SMALL_SHAPES + ["3:6", "2,3:5", "1,3:5"]


def fl3_faces():
    d = diagram("1,2:3")
    full = d.full_face()
    v1 = LadderFace.parse(d.shape, "H:0,0;V:0,0;V:0,1;H:0,2;H:1,0;V:2,0")
    g1 = LadderFace(d.shape, tuple(e for e in full.edges if e != Edge(1, 1, "V")))
    return d, full, v1, g1


def test_lblock_geometry():
    blk = LBlock(3, 1, 1)
    assert blk.covered == {(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)}
    assert blk.level == 4 and blk.sphere_dim == 5
    assert blk.right_wall() == Edge(3, 0, "V")
    assert blk.top_wall() == Edge(0, 3, "H")
    assert blk.token == "L3@(1,1)"


def test_fl3_fillings():
    d, full, v1, g1 = fl3_faces()
    assert fill_l_blocks(d, v1).blocks == (LBlock(2, 1, 1),)
    assert fill_l_blocks(d, full).blocks == (LBlock(1, 1, 1), LBlock(1, 1, 2), LBlock(1, 2, 1))
    assert (1, 2) in fill_l_blocks(d, g1).uncovered
    assert is_lagrangian(d, v1) and is_lagrangian(d, full)
    assert not is_lagrangian(d, g1)


def test_fl3_topologies():
    d, full, v1, g1 = fl3_faces()
    t = fiber_topology(fill_l_blocks(d, v1), v1)
    assert t.levels == ((3, (3,)),) and t.torus_rank == 0 and t.label == "S^3"
    t = fiber_topology(fill_l_blocks(d, full), full)
    assert t.torus_rank == 3 and t.label == "T^3" and t.serialize() == "T^3"
    with pytest.raises(PreconditionError):
        fiber_topology(fill_l_blocks(d, g1), g1)


def test_unitary_label():
    d = diagram("3:6")
    for f in faces("3:6"):
        fl = fill_l_blocks(d, f)
        if set(fl.blocks) == {LBlock(3, 1, 1), LBlock(2, 2, 2), LBlock(1, 3, 3)}:
            t = fiber_topology(fl, f)
            assert t.spheres == (1, 3, 5)
            assert t.label == "U(3)"
            assert t.serialize() == "T^1 x S^3 x S^5"
            break
    else:
        pytest.fail("no U(3) face found")


@pytest.mark.parametrize("shape", SHAPES)
def test_fillable_iff_disjoint_and_area(shape):
    d = diagram(shape)
    for f in faces(shape):
        fl = fill_l_blocks(d, f)
        fillable = not fl.uncovered
        assert fillable == (fl.disjoint and fl.block_area == d.dim)
        if fillable:
            t = fiber_topology(fl, f)
            assert t.torus_rank == face_dimension(f)
            assert sum(t.spheres) == d.dim


@pytest.mark.parametrize("shape", SHAPES)
def test_full_face_tiles_by_unit_blocks(shape):
    d = diagram(shape)
    fl = fill_l_blocks(d, d.full_face())
    assert all(b.k == 1 for b in fl.blocks) and len(fl.blocks) == d.dim
    assert fiber_topology(fl, d.full_face()).label in (f"T^{d.dim}", "S^1")


@pytest.mark.parametrize("shape", SHAPES)
def test_empty_filling_only_on_vertices(shape):
    d = diagram(shape)
    for f in faces(shape):
        fl = fill_l_blocks(d, f)
        if not fl.uncovered:
            if not fl.blocks:
                assert face_dimension(f) == 0
            if all(b.k == 1 for b in fl.blocks):
                assert fiber_topology(fl, f).serialize() == f"T^{face_dimension(f)}"


@pytest.mark.parametrize("shape", SHAPES)
def test_lagrangian_regions_are_symmetric(shape):
    d = diagram(shape)
    for f in faces(shape):
        if not is_lagrangian(d, f):
            continue
        for reg in d.regions(f):
            a = min(i for i, _ in reg.boxes)
            b = min(j for _, j in reg.boxes)
            mirrored = {(a + (j - b), b + (i - a)) for i, j in reg.boxes}
            assert mirrored == set(reg.boxes)


def test_filling_order_and_serialization():
    d = diagram("3:6")
    for f in faces("3:6")[:200]:
        fl = fill_l_blocks(d, f)
        keys = [(-b.k, b.a, b.b) for b in fl.blocks]
        assert keys == sorted(keys)
        assert fl.serialize() == ";".join(b.token for b in fl.blocks)
