import numpy as np
import pytest

from legrid import torus_cert as tc
from legrid.grid import symmetry, translate, trefoil, unknot
from oracles import random_knot


def _counts(cert):
    return cert.n_maximal, cert.rank, cert.kernel_dim, len(cert.nonneg_rays)


def test_unknot_has_no_types():
    assert tc.maximal_types(unknot(2)) == []
    cert = tc.certify(unknot(2))
    assert _counts(cert) == (0, 0, 0, 0)
    assert cert.conclusion == "NoEssentialTorusCandidates"


def test_maximal_types_recheck():
    rng = np.random.default_rng(21)
    for _ in range(10):
        g = random_knot(int(rng.integers(3, 8)), rng)
        n = g.n
        types = tc.maximal_types(g)
        adm = tc.admissibility(g)
        for i, j, k, l in types:
            assert i != k and j != l
            assert tc.is_admissible(g, (i, j, k, l))
            for e in ((i - 1, j, k, l), (i, j - 1, k, l), (i, j, k + 1, l), (i, j, k, l + 1)):
                assert not tc.is_admissible(g, e)
        # vectorized admissibility agrees with the direct test
        for i in range(n):
            for j in range(n):
                for L in range(1, n):
                    for M in range(1, n):
                        assert adm[i, j, L, M] == tc.is_admissible(g, (i, j, i + L, j + M))


def test_matching_system_telescopes():
    g = trefoil()
    types = tc.maximal_types(g)
    a = tc.matching_system(types, g.n).to_dense()
    n2 = g.n ** 2
    assert a.shape == (2 * n2, len(types))
    assert set(np.unique(a)) <= {-1, 0, 1}
    assert not a[:n2].sum(axis=0).any()
    assert not a[n2:].sum(axis=0).any()


def test_empty_system():
    m = tc.matching_system([], 3)
    assert m.shape == (18, 0)
    assert tc.rank_kernel(m) == (0, [])


def test_rank_kernel_identity():
    assert tc.rank_kernel(np.eye(3, dtype=np.int64)) == (3, [])


def test_rank_kernel_against_float():
    rng = np.random.default_rng(22)
    for _ in range(30):
        r, c = rng.integers(1, 8, size=2)
        a = rng.integers(-2, 3, size=(r, c))
        if rng.random() < 0.5:  # force dependent rows
            a = np.vstack([a, a[0] + a[-1]])
        rank, basis = tc.rank_kernel(a)
        assert rank == np.linalg.matrix_rank(a.astype(float))
        assert len(basis) == a.shape[1] - rank
        for v in basis:
            assert not (a @ np.array(v, dtype=object)).any()
            assert all(isinstance(x, int) for x in v)


def test_rank_kernel_exact_on_rational_kernel():
    a = np.array([[2, -3, 0], [0, 0, 5]])
    rank, basis = tc.rank_kernel(a)
    assert rank == 2 and [list(map(abs, v)) for v in basis] == [[3, 2, 0]]


def test_nonneg_rays_small_cases():
    assert tc.nonneg_rays([(1, -1)]) == []
    assert tc.nonneg_rays([(1, 0), (0, 1)]) == [(0, 1), (1, 0)]
    assert tc.nonneg_rays([(1, 1), (1, -1)]) == [(0, 1), (1, 0)]
    assert tc.nonneg_rays([]) == []
    with pytest.raises(tc.DimensionUnsupported):
        tc.nonneg_rays([tuple(int(i == k) for i in range(4)) for k in range(4)])


def test_nonneg_rays_dim3():
    rays = tc.nonneg_rays([(1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, -1)])
    for r in rays:
        assert all(x >= 0 for x in r)
    assert (1, 0, 1, 0) in rays and (0, 1, 1, 0) in rays and len(rays) == 4


def test_trefoil_certificate_equivariant():
    g = trefoil()
    base = tc.certify(g)
    assert base.conclusion == "SingleRay"
    ray = sorted(base.nonneg_rays[0])
    for dc, dr in ((1, 0), (2, 3), (4, 4)):
        c = tc.certify(translate(g, dc, dr))
        assert _counts(c) == _counts(base) and sorted(c.nonneg_rays[0]) == ray
    for which in ("hflip", "vflip", "mirror"):
        c = tc.certify(symmetry(g, which))
        assert _counts(c) == _counts(base) and sorted(c.nonneg_rays[0]) == ray


def test_k1_certificate(k1_unoriented):
    cert = tc.certify(k1_unoriented)
    assert _counts(cert) == (623, 621, 2, 1)
    assert cert.conclusion == "SingleRay"
    (ray,) = cert.nonneg_rays
    a = tc.matching_system(cert.types, 37).to_dense()
    assert not (a @ np.array(ray, dtype=object)).any()
    assert min(ray) >= 0
