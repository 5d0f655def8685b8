"""Exact classification of Lagrangian and monotone Gelfand-Cetlin fibers on partial flag manifolds."""

__version__ = "0.1.0"

from .diagram import (
    Edge,
    LadderDiagram,
    LadderFace,
    build_ladder,
    comb_vertex,
    enumerate_faces,
    face_contains,
    face_dimension,
    positive_paths,
)
from .errors import GCError
from .filling import LBlock, LBlockFilling, FiberTopology, fiber_topology, fill_l_blocks, is_lagrangian
from .monotone import (
    classify_monotone,
    codim_max_component,
    comb_incident_data,
    disc_ledger,
    face_center,
    generator_indices,
    is_monotone_fiber,
    maslov_from_weights,
    partial_trace,
)
from .polytope import (
    EqualitySystem,
    GCPoint,
    GCPolytope,
    affine_dim_bruteforce,
    build_polytope,
    carrier_face,
    center_of_polytope,
    contains,
    face_equalities,
)
from .shapes import FlagShape, Spectrum, monotone_spectrum
