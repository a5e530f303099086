import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from legrid.grid import (Disconnected, GridDiagram, LineCardinality, SignClash, canonical_form,
                         equivalent, from_key, from_permutations, symmetry, to_permutations,
                         torus_knot_grid, translate, trefoil, unknot, validate, validate_unoriented)
from oracles import random_knot

UNKNOT2 = [(0, 0, "+"), (0, 1, "-"), (1, 0, "-"), (1, 1, "+")]


def test_validate_unknot():
    g = validate(UNKNOT2)
    assert g.n == 2 and g.is_knot
    assert g.sign(0, 0) == 1 and g.sign(1, 0) == -1


def test_validate_sign_clash():
    with pytest.raises(SignClash):
        validate([(0, 0, "+"), (0, 1, "+"), (1, 0, "-"), (1, 1, "-")])


def test_validate_line_cardinality():
    with pytest.raises(LineCardinality):
        validate([(0, 0, "+"), (0, 1, "-"), (0, 2, "+"), (1, 0, "-")])


def test_require_knot_rejects_link():
    # two disjoint 2x2 unknots side by side form a 2-component link
    link = [(0, 0, "+"), (0, 1, "-"), (1, 0, "-"), (1, 1, "+"),
            (2, 2, "+"), (2, 3, "-"), (3, 2, "-"), (3, 3, "+")]
    assert not validate(link).is_knot
    with pytest.raises(Disconnected):
        validate(link, require_knot=True)


def test_unused_levels_are_compacted():
    g = validate([(0, 0, "+"), (0, 5, "-"), (3, 0, "-"), (3, 5, "+")])
    assert g.n == 2
    assert canonical_form(g) == canonical_form(unknot(2))


def test_unoriented_orient_choices():
    R = validate_unoriented([(0, 0), (0, 1), (1, 0), (1, 1)])
    a, b = R.orient(0), R.orient(1)
    assert a.unoriented().points == b.unoriented().points == R.points
    assert {v[2] for v in a.vertices} == {1, -1}
    assert symmetry(a, "reverse").signs == b.signs


def test_permutation_round_trip():
    g = trefoil()
    xs, os = to_permutations(g)
    assert from_permutations(xs, os) == g


def test_torus_knot_grid_sizes():
    assert torus_knot_grid(2, 3).n == 5 and torus_knot_grid(2, 3).is_knot
    assert not torus_knot_grid(2, 2).is_knot


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10 ** 6), st.integers(0, 20), st.integers(0, 20))
def test_canonical_form_translation_invariant(n, seed, dc, dr):
    g = random_knot(n, np.random.default_rng(seed))
    h = translate(g, dc, dr)
    assert canonical_form(g) == canonical_form(h)
    assert equivalent(g, h)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10 ** 6))
def test_from_key_round_trip(n, seed):
    g = random_knot(n, np.random.default_rng(seed))
    k = canonical_form(g)
    h = from_key(k)
    assert isinstance(h, GridDiagram)
    assert canonical_form(h) == k


@pytest.mark.parametrize("which", ["reverse", "hflip", "vflip", "mirror"])
def test_symmetries_are_involutions(which):
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = random_knot(int(rng.integers(2, 8)), rng)
        assert symmetry(symmetry(g, which), which) == g


def test_mirror_is_composite_flip():
    g = trefoil()
    assert symmetry(g, "mirror") == symmetry(symmetry(g, "vflip"), "hflip")


def test_canonical_form_distinguishes_chirality():
    g = trefoil()
    assert canonical_form(g) != canonical_form(symmetry(g, "hflip"))
