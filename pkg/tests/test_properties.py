from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from _support import polytope
from gcfibers.diagram import build_ladder, face_dimension
from gcfibers.polytope import (
    GCPoint,
    build_polytope,
    carrier_face,
    contains,
    equalities_hold,
    face_equalities,
    polytope_vertices,
    tight_edges,
)
from gcfibers.shapes import Spectrum


@st.composite
def spectra(draw):
    n = draw(st.integers(2, 6))
    vals = sorted(draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)), reverse=True)
    if vals[0] == vals[-1]:
        vals[0] += 1
    return Spectrum.of(vals)


@given(spectra())
@settings(max_examples=60, deadline=None)
def test_board_and_constants(lam):
    P = build_polytope(lam)
    n = lam.n
    assert P.dim == face_dimension(build_ladder(lam.shape).full_face())
    for i in range(1, n + 1):
        for j in range(1, n + 2 - i):
            inside = (i, j) in P.diagram.boxes
            assert inside == (lam[i] > lam[n + 1 - j])
            if not inside:
                assert P.constants[(i, j)] == lam[i] == lam[n + 1 - j]


@given(st.sampled_from(["1,2:3", "2:4", "1,2,3:4", "1,3:4"]), st.data())
@settings(max_examples=80, deadline=None)
def test_random_points_have_consistent_carriers(shape, data):
    P = polytope(shape)
    verts = polytope_vertices(P)
    weights = data.draw(st.lists(st.integers(0, 4), min_size=len(verts), max_size=len(verts)))
    if not any(weights):
        weights[0] = 1
    tot = sum(weights)
    coords = {k: sum(Fraction(w) * v[i] for w, v in zip(weights, verts)) / tot for i, k in enumerate(P.variables)}
    u = GCPoint(coords)
    assert contains(P, u)
    f = carrier_face(P, u)
    assert equalities_hold(P, face_equalities(P, f), u)
    missing = {e for e in P.diagram.edges if not e.is_axis and e not in f.edge_set}
    assert missing == tight_edges(P, u)
    assert GCPoint.parse(u.serialize()) == u
