"""Rectangular (grid) diagrams of knots.

Submodules: :mod:`~legrid.grid` (diagrams and canonical forms),
:mod:`~legrid.moves` (elementary moves, exchange classes),
:mod:`~legrid.legendrian` (fronts, tb and r, Legendrian comparison),
:mod:`~legrid.surface` (rectangular diagrams of surfaces),
:mod:`~legrid.torus_cert` (maximal rectangle types, matching system),
:mod:`~legrid.alexander` (Alexander polynomial, DT codes),
:mod:`~legrid.symmetry` (period and free-period obstructions),
:mod:`~legrid.io` and :mod:`~legrid.cli`.
"""
from .grid import (GridDiagram, GridError, UnorientedGridDiagram, canonical_form, equivalent,
                   from_permutations, torus_knot_grid, trefoil, unknot, validate,
                   validate_unoriented)
from .moves import ElementaryMove, Outcome, Verdict, apply_move, check_move, enumerate_moves, is_rigid
from .legendrian import decide_legendrian_pair, front_data, tb_r
from .alexander import LaurentPoly, alexander_poly
from .torus_cert import certify
from .io import k1_diagram, k1_unoriented

__all__ = [
    "GridDiagram", "GridError", "UnorientedGridDiagram", "canonical_form", "equivalent",
    "from_permutations", "torus_knot_grid", "trefoil", "unknot", "validate", "validate_unoriented",
    "ElementaryMove", "Outcome", "Verdict", "apply_move", "check_move", "enumerate_moves", "is_rigid",
    "decide_legendrian_pair", "front_data", "tb_r", "LaurentPoly", "alexander_poly", "certify",
    "k1_diagram", "k1_unoriented",
]

__version__ = "0.1.0"
