"""The eleven acceptance criteria; a PASS/FAIL line per criterion is printed at the end of the run."""
import os
import time

import numpy as np
import pytest

from legrid import alexander as alx
from legrid import moves as mv
from legrid import symmetry as sym
from legrid import torus_cert as tc
from legrid.grid import symmetry as grid_symmetry
from legrid.grid import trefoil, unknot
from legrid.legendrian import decide_legendrian_pair, front_data, tb_r
from legrid.moves import Outcome
from oracles import all_knot_diagrams, geometric_front, random_knot

K1_DELTA_HIGH_TO_LOW = [1, -1, 1, -3, 3, -5, 10, -5, 6, -14, 15,
                        -14, 6, -5, 10, -5, 3, -3, 1, -1, 1]
SHIFTS = {"→I": {"+": (0, 0), "-": (-1, 1)}, "←I": {"+": (0, 0), "-": (-1, -1)},
          "→II": {"+": (-1, -1), "-": (0, 0)}, "←II": {"+": (-1, 1), "-": (0, 0)}}


def _jobs():
    return max(1, int(os.environ.get("LEGRID_JOBS", "1")))


@pytest.mark.criterion(1, "torus certificate on K1 is 623 / 621 / 2 / one ray")
def test_c01_torus_certificate(k1_unoriented):
    t0 = time.perf_counter()
    cert = tc.certify(k1_unoriented)
    assert cert.n_maximal == 623
    assert cert.rank == 621
    assert cert.kernel_dim == 2
    assert len(cert.nonneg_rays) == 1
    assert time.perf_counter() - t0 < 300


@pytest.mark.criterion(2, "Alexander polynomial of K1 matches the displayed degree-20 polynomial")
def test_c02_alexander(k1):
    t0 = time.perf_counter()
    delta = alx.alexander_poly(k1)
    assert delta.min_exp == -10
    assert list(delta.coeffs) == K1_DELTA_HIGH_TO_LOW[::-1]
    assert time.perf_counter() - t0 < 600


@pytest.mark.criterion(3, "special values of K1 are (1, -7, 17, 13, 113)")
def test_c03_special_values(k1_delta):
    t0 = time.perf_counter()
    assert sym.special_values(k1_delta) == (1, -7, 17, 13, 113)
    assert time.perf_counter() - t0 < 1


@pytest.mark.criterion(4, "exactly 32 integral ell options, spot rows match")
def test_c04_ell_options(k1_delta):
    t0 = time.perf_counter()
    opts = sym.ell_enumerate(sym.special_values(k1_delta))
    assert len(opts) == 32
    by_a = {o.a: o.ell for o in opts}
    assert by_a[(1, 1, 1, 1, 1)] == [0, 0, 0, 0, 1, 0, 0, 0, 0]
    assert by_a[(1, -1, 1, 1, 113)] == [5, -9, 14, -19, 19, -19, 14, -9, 5]
    assert time.perf_counter() - t0 < 1


@pytest.mark.criterion(5, "newton_search(20) finds 971865 solutions")
def test_c05_newton_search():
    t0 = time.perf_counter()
    assert len(sym.newton_search(20)) == 971_865
    assert time.perf_counter() - t0 < 300


@pytest.mark.criterion(6, "all 31099680 candidates eliminated with first violation k <= 31")
def test_c06_elimination(k1_delta):
    opts = sym.ell_enumerate(sym.special_values(k1_delta))
    sols = sym.newton_search(20)
    rep = sym.eliminate_candidates(opts, sols, kmax=31, jobs=_jobs())
    assert rep.n_candidates == 31_099_680
    assert rep.n_survivors == 0
    assert max(rep.first_violation) <= 31
    assert sum(rep.first_violation.values()) == rep.n_candidates


@pytest.mark.criterion(7, "Murasugi test obstructed for every prime p <= 19")
def test_c07_murasugi(k1_delta):
    t0 = time.perf_counter()
    for p in sym.primes_upto(19):
        assert sym.murasugi_test(k1_delta, p).kind == "Obstructed", p
    assert time.perf_counter() - t0 < 1


@pytest.mark.criterion(8, "the K1 diagram is rigid")
def test_c08_rigidity(k1):
    t0 = time.perf_counter()
    assert mv.is_rigid(k1)
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(9, "roots of K1's polynomial lie in |z| < 1.5")
def test_c09_roots(k1_delta):
    t0 = time.perf_counter()
    assert sym.roots_in_disk(k1_delta, 1.5, residual_tol=1e-6)
    roots = sym.durand_kerner([float(c) for c in k1_delta.coeffs])
    assert np.abs(roots).max() < 1.5
    assert time.perf_counter() - t0 < 1


def _random_orbits(n_moves, seed):
    """Random walks mixing all move kinds on knot diagrams of size <= 8."""
    rng = np.random.default_rng(seed)
    applied = []
    while len(applied) < n_moves:
        g = random_knot(int(rng.integers(2, 8)), rng)
        for _ in range(25):
            kinds = [mv.EXCHANGE, mv.DESTAB] + ([mv.STAB] if g.n < 8 else [])
            pairs = mv.enumerate_moves(g, kinds)
            if not pairs:
                break
            m, h = pairs[int(rng.integers(len(pairs)))]
            applied.append((g, m, h))
            g = h
    return applied


@pytest.mark.criterion(10, "property suites: move shifts, Alexander invariance, front census, CRT")
def test_c10_property_suites():
    # (a) tb/r under exchanges and the stabilization shifts
    applied = _random_orbits(1200, seed=2024)
    assert len(applied) >= 1000
    assert {m.kind for _, m, _ in applied} == {mv.EXCHANGE, mv.STAB, mv.DESTAB}
    violations = 0
    for g, m, h in applied:
        for s in "+-":
            (tb0, r0), (tb1, r1) = tb_r(g, s), tb_r(h, s)
            if m.kind == mv.EXCHANGE:
                want = (0, 0)
            elif m.kind == mv.STAB:
                want = SHIFTS[m.oriented_type][s]
            else:
                want = tuple(-x for x in SHIFTS[m.oriented_type][s])
            violations += (tb1 - tb0, r1 - r0) != want
    assert violations == 0

    # (b) Alexander invariance along the same walks
    cache = {}

    def delta(g):
        key = g.vertices
        if key not in cache:
            cache[key] = alx.alexander_poly(g)
        return cache[key]

    assert all(delta(g) == delta(h) for g, _, h in applied)

    # (c) combinatorial census equals the geometric front, exhaustively for n <= 6
    checked = 0
    for n in range(2, 7):
        for g in all_knot_diagrams(n):
            for s in "+-":
                fd = front_data(g, s)
                o = geometric_front(g, s)
                assert (fd.writhe, fd.cusps_up, fd.cusps_down) == \
                    (o["writhe"], o["cusps_up"], o["cusps_down"]), (g, s)
            checked += 1
    assert checked > 80_000

    # (d) two disjoint prime sets give the same polynomial
    rng = np.random.default_rng(77)
    for _ in range(100):
        g = random_knot(int(rng.integers(3, 11)), rng)
        assert alx.alexander_poly(g, primes=alx.DEFAULT_PRIMES) == \
            alx.alexander_poly(g, primes=alx.ALT_PRIMES)


@pytest.mark.criterion(11, "compare-legendrian separates unknots by r and confirms round trips")
def test_c11_legendrian_unknots():
    t0 = time.perf_counter()
    verdicts = []
    u = unknot(2)
    st = {m.oriented_type: mv.apply_move(u, m) for m in mv.stabilizations(u)}
    a, b = st["←II"], st["→II"]          # (tb, r) on the + side: (-2, 1) and (-2, -1)
    assert tb_r(a, "+") == (-2, 1) and tb_r(b, "+") == (-2, -1)
    v = decide_legendrian_pair(a, b)
    assert v["+"].outcome is Outcome.NOT_EQUIVALENT and v["+"].reason == "InvariantMismatch"
    verdicts += v.values()
    # the Legendrian mirror of a is b's class on the + side
    v = decide_legendrian_pair(grid_symmetry(a, "mirror"), b)
    assert v["+"].outcome is Outcome.EQUIVALENT
    verdicts += v.values()

    # round trips: stabilize, wander by exchanges, destabilize with the same type
    rng = np.random.default_rng(11)
    trips = 0
    for base in (unknot(2), unknot(3), unknot(4), trefoil()):
        for st_type, side in (("I", "+"), ("II", "-")):
            for _ in range(4):
                ms = [m for m in mv.stabilizations(base) if m.stab_type == st_type]
                h = mv.apply_move(base, ms[int(rng.integers(len(ms)))])
                for _ in range(3):
                    ex = mv.exchange_moves(h)
                    if ex:
                        h = mv.apply_move(h, ex[int(rng.integers(len(ex)))])
                ds = [d for d in mv.destabilizations(h) if d.stab_type == st_type]
                if not ds:
                    continue
                k = mv.apply_move(h, ds[int(rng.integers(len(ds)))])
                v = decide_legendrian_pair(base, k)
                assert v[side].outcome is Outcome.EQUIVALENT
                verdicts += v.values()
                trips += 1
    assert trips >= 20
    assert all(x.outcome is not Outcome.UNKNOWN for x in verdicts)
    assert time.perf_counter() - t0 < 60
