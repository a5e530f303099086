import numpy as np
import pytest

from legrid import moves as mv
from legrid import surface as S
from legrid.grid import canonical_form, translate, trefoil, unknot
from oracles import random_knot


def test_single_rectangle():
    P = S.validate_surface([(0, 1, 0, 1)], 2)
    assert P.free_vertices == [(0, 0), (0, 1), (1, 0), (1, 1)]
    R = S.boundary(P)
    assert R.n == 2 and R.is_knot


def test_shared_corner_pairs():
    P = S.validate_surface([(0, 1, 0, 1), (1, 2, 1, 2)], 3)
    assert S.dividing_code(P).pairs == ((0, 1, S.UDOT),)
    Q = S.validate_surface([(0, 1, 1, 2), (1, 2, 0, 1)], 3)
    assert S.dividing_code(Q).pairs == ((0, 1, S.DDOT),)
    D = S.validate_surface([(0, 1, 0, 1), (2, 3, 2, 3)], 4)
    assert S.dividing_code(D).pairs == ()


def test_intersection_kinds():
    assert S.intersection_kind((0, 1, 0, 1), (2, 3, 2, 3), 4) == "empty"
    assert S.intersection_kind((0, 1, 0, 1), (1, 2, 1, 2), 4) == "vertices"
    # a cross: the overlap avoids every vertex
    assert S.intersection_kind((0, 3, 1, 2), (1, 2, 0, 3), 4) == "rectangle"
    assert S.intersection_kind((0, 2, 0, 2), (1, 3, 1, 3), 4) == "bad"


def test_incompatible_pair():
    with pytest.raises(S.IncompatiblePair):
        S.validate_surface([(0, 2, 0, 2), (1, 3, 1, 3)], 4)


def test_free_vertex_overflow():
    with pytest.raises(S.FreeVertexOverflow):
        S.validate_surface([(0, 1, 0, 1), (0, 2, 2, 3)], 4)


def test_closed_surface_has_empty_boundary():
    cells = [(i, j) for i in range(4) for j in range(4) if (i + j) % 2 == 0]
    P = S.validate_surface([(i, (i + 1) % 4, j, (j + 1) % 4) for i, j in cells], 4)
    assert P.free_vertices == []
    assert S.boundary(P).n == 0


def test_json_round_trip():
    P = S.special_surface(trefoil())
    assert S.SurfaceDiagram.from_json(P.to_json()) == P


def test_region_rectangles_cover_exactly():
    rng = np.random.default_rng(41)
    for _ in range(20):
        m = int(rng.integers(3, 9))
        mask = rng.random((m, m)) < 0.5
        rects = S.region_rectangles(mask)
        cover = np.zeros((m, m), dtype=int)
        for r in rects:
            cover[S._cells(r, m)] += 1
        assert (cover == mask).all()


def _contains_R(P, R, refine=S.REFINE):
    free = set(P.free_vertices)
    return all((refine * c, refine * r) in free for c, r in R.points)


def test_special_surface_unknot():
    R = unknot(2)
    sp = S.special_surface(R, keep_stages=True)
    assert _contains_R(sp.surface, R)
    assert len(sp.stage1) == 4 and sp.stage2 and sp.stage3


def test_special_surface_occupied_sublevels():
    for R in (unknot(2), trefoil(), unknot(4)):
        P = S.special_surface(R)
        verts = set(P.vertex_counts)
        for i in range(R.n):
            for j in (1, 2, 4, 5):
                assert (S.REFINE * i + j, S.REFINE * 0 + 1) in verts


def test_special_surface_random_knots():
    rng = np.random.default_rng(42)
    for _ in range(15):
        R = random_knot(int(rng.integers(2, 7)), rng)
        P = S.special_surface(R)
        assert _contains_R(P, R)
        # re-validation of the output from scratch
        assert S.validate_surface(P.rects, P.m) == P


def test_special_surface_translation_equivariant():
    rng = np.random.default_rng(43)
    for R in [trefoil()] + [random_knot(int(rng.integers(3, 7)), rng) for _ in range(4)]:
        P = S.special_surface(R)
        for dc, dr in ((1, 0), (0, 2), (3, 1)):
            Q = S.special_surface(translate(R, dc, dr))
            assert S.combinatorially_equivalent(P, Q)
            assert S.code_equivalent(S.dividing_code(P), S.dividing_code(Q))


def test_code_equivalence_detects_difference():
    P = S.special_surface(unknot(2))
    Q = S.special_surface(trefoil())
    assert not S.code_equivalent(S.dividing_code(P), S.dividing_code(Q))
    A = S.validate_surface([(0, 1, 0, 1), (1, 2, 1, 2)], 3)
    B = S.validate_surface([(0, 1, 1, 2), (1, 2, 0, 1)], 3)
    assert not S.code_equivalent(S.dividing_code(A), S.dividing_code(B))
    assert not S.combinatorially_equivalent(A, B)


@pytest.mark.parametrize("N", [4, 6, 8])
def test_staircase_slide(N):
    levels = list(range(0, 2 * N, 2))
    an = S.staircase_annulus(levels, levels, 2 * N)
    assert S.staircase_order(an) == list(range(N))
    comps = S.boundary(an).components
    assert len(comps) == 2
    sl = S.slide_annulus_boundary(an)
    assert len(sl.moves) == N
    assert sl.kinds == ["stabilization II"] + ["exchange"] * (N - 2) + ["destabilization II"]
    for a, b, m in zip(sl.states, sl.states[1:], sl.moves):
        assert mv.check_move(a, b, sl.size) == m
    assert sl.start.n == sl.end.n == N
    assert canonical_form(sl.start) == canonical_form(sl.end)


def test_irregular_staircase():
    an = S.staircase_annulus([0, 3, 4, 9], [0, 1, 5, 6], 10)
    sl = S.slide_annulus_boundary(an)
    assert len(sl.moves) == 4


def test_not_staircase():
    with pytest.raises(S.NotStaircase):
        S.slide_annulus_boundary(S.validate_surface([(0, 1, 0, 1), (1, 2, 1, 2)], 4))
    with pytest.raises(S.NotStaircase):
        S.staircase_order(S.validate_surface([(0, 1, 0, 1)], 2))
