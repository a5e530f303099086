import numpy as np
import pytest

from legrid import alexander as alx
from legrid import moves as mv
from legrid.grid import symmetry, translate, trefoil, unknot
from oracles import random_knot

TREFOIL_DT = [4, 6, 2]
FIGURE8_DT = [4, 6, 8, 2]


def test_unknot():
    pd = alx.planar_diagram(unknot(2))
    assert pd.n_crossings == 0
    assert alx.alexander_poly(unknot(2)) == alx.LaurentPoly(0, (1,))
    assert alx.dt_export(pd) == []


def test_trefoil_planar_diagram():
    pd = alx.planar_diagram(trefoil())
    assert pd.n_crossings == 3
    assert len({c[3] for c in pd.crossings}) == 1
    assert len(pd.visits) == 6


def test_trefoil_polynomial_hand_determinant():
    # minor of the Wirtinger matrix for the standard 3-arc presentation:
    # rows (1-t, t, -1), (-1, 1-t, t) after deleting one row and column
    # give det [[1-t, t], [-1, 1-t]] = t^2 - t + 1
    assert alx.alexander_poly(trefoil()) == alx.LaurentPoly(-1, (1, -1, 1))


def test_polynomial_normalization():
    p = alx.normalize([0, 0, -1, 1, -1])
    assert p == alx.LaurentPoly(-1, (1, -1, 1))
    assert p.is_self_reciprocal
    with pytest.raises(alx.NormalizationFailure):
        alx.normalize([1, 1])


def test_laurent_json_round_trip(k1_delta):
    assert alx.LaurentPoly.from_json(k1_delta.to_json()) == k1_delta
    assert k1_delta.span == 20 and k1_delta.is_self_reciprocal


def test_interpolation_mod_p():
    p = 101
    coeffs = [3, 0, 5, 7]
    xs = [1, 2, 3, 4]
    ys = [sum(c * x ** i for i, c in enumerate(coeffs)) % p for x in xs]
    assert alx.interpolate_mod(xs, ys, p) == coeffs


def test_det_mod_matches_integer_det():
    rng = np.random.default_rng(4)
    p = 2147483647
    for _ in range(20):
        a = rng.integers(-5, 6, size=(5, 5))
        d = int(round(np.linalg.det(a)))
        assert alx.det_mod(a % p, p) == d % p


def test_trefoil_dt():
    codes = alx.dt_variants(trefoil())
    assert len(codes) == 12
    assert any(alx.dt_match(c, TREFOIL_DT) for c in codes)


def test_dt_match_rules():
    code = [6, 10, 16, 14, 12, 4, 2, 18, 8]
    rotated = list(alx._relabel(code, 2, False))
    assert alx.dt_match(code, rotated)
    assert alx.dt_match(code, [-x for x in code])
    assert not alx.dt_match(FIGURE8_DT, [2, 4, 6, 8])
    with pytest.raises(alx.LengthMismatch):
        alx.dt_match(TREFOIL_DT, FIGURE8_DT)


def test_two_prime_sets_agree():
    rng = np.random.default_rng(8)
    for _ in range(10):
        g = random_knot(int(rng.integers(4, 9)), rng)
        assert alx.alexander_poly(g) == alx.alexander_poly(g, primes=alx.ALT_PRIMES)


def test_invariance_under_moves_and_symmetries():
    rng = np.random.default_rng(9)
    for _ in range(10):
        g = random_knot(int(rng.integers(3, 8)), rng)
        delta = alx.alexander_poly(g)
        for m, h in mv.enumerate_moves(g)[:10]:
            assert alx.alexander_poly(h) == delta
        for which in ("reverse", "hflip", "vflip", "mirror"):
            assert alx.alexander_poly(symmetry(g, which)) == delta
        assert alx.alexander_poly(translate(g, 2, 1)) == delta


def test_k1_polynomial_and_dt(k1, k1_delta, k1_computed_delta):
    assert k1_computed_delta == k1_delta
    pd = alx.planar_diagram(k1)
    from legrid.io import k1_dt_code
    code = k1_dt_code()
    assert pd.n_crossings == len(code)
    assert alx.dt_match(alx.dt_export(pd), code)
