from itertools import product

import numpy as np
import pytest

from legrid import symmetry as sym

TREFOIL = [1, -1, 1]
ELL_113 = [5, -9, 14, -19, 19, -19, 14, -9, 5]


def test_murasugi_examples(k1_delta):
    assert str(sym.murasugi_test(TREFOIL, 2)) == "CyclotomicFactor(2)"
    assert str(sym.murasugi_test(TREFOIL, 3)) == "CyclotomicFactor(1)"
    assert sym.murasugi_test([1], 5).kind == "PthPower"
    assert sym.murasugi_test([1, 0, 0, 1], 3).kind == "PthPower"
    for p in sym.primes_upto(19):
        assert sym.murasugi_test(k1_delta, p).kind == "Obstructed"


def test_special_values(k1_delta):
    assert sym.special_values(k1_delta) == (1, -7, 17, 13, 113)
    assert sym.special_values([1]) == (1, 1, 1, 1, 1)
    # t - 1 + 1/t at t = 1, e^(i pi/3), i, e^(2 i pi/3), -1
    assert sym.special_values(TREFOIL) == (1, 0, -1, -2, -3)


def test_special_values_reciprocal_invariance(k1_delta):
    rev = list(reversed(k1_delta.coeffs))
    assert sym.special_values(rev) == sym.special_values(k1_delta)


def test_special_values_rejects_odd_degree():
    with pytest.raises(ValueError):
        sym.special_values([1, 1])


def test_ell_enumerate(k1_delta):
    opts = sym.ell_enumerate(sym.special_values(k1_delta))
    assert len(opts) == 32
    by_a = {o.a: o.ell for o in opts}
    assert by_a[(1, 1, 1, 1, 1)] == [0, 0, 0, 0, 1, 0, 0, 0, 0]
    assert by_a[(-1, -1, -1, -1, -1)] == [0, 0, 0, 0, -1, 0, 0, 0, 0]
    assert by_a[(1, -1, 1, 1, 113)] == ELL_113
    assert by_a[(-1, 1, -1, -1, -113)] == [-x for x in ELL_113]
    for o in opts:
        assert sym.special_values(o.ell) == o.a


def test_non_integral_divisor_tuple_filtered(k1_delta):
    a = (1, 1, 1, 1, -1)
    assert all(x in sym.divisors(v) for x, v in zip(a, sym.special_values(k1_delta)))
    assert any(x.denominator != 1 for x in sym.ell_solve(a))
    assert a not in {o.a for o in sym.ell_enumerate(sym.special_values(k1_delta))}


def test_newton_search_small_bounds():
    zero = sym.newton_search(0)
    assert zero.shape == (1, 5) and not zero.any()
    one = {tuple(r) for r in sym.newton_search(1).tolist()}
    brute = set()
    # |p_i| <= 1 forces |c_i| <= 1, so |c_i| <= 3 is an ample box
    for c in product(range(-3, 4), repeat=5):
        p = sym.newton_sums(np.array([c]), 5)[0]
        if all(abs(int(x)) <= 1 for x in p):
            brute.add(c)
    assert one == brute


def test_newton_search_monotone():
    s3 = {tuple(r) for r in sym.newton_search(3).tolist()}
    s5 = {tuple(r) for r in sym.newton_search(5).tolist()}
    assert s3 < s5


def test_violation_thresholds_exact():
    T = sym.violation_thresholds(31)
    for k in range(1, 32):
        m = T[k]
        assert m ** 101 * 2 ** k >= 20 ** 101 * 3 ** k
        assert (m - 1) ** 101 * 2 ** k < 20 ** 101 * 3 ** k


def test_candidates_shape_and_numeric_power_sums(k1_delta):
    opts = sym.ell_enumerate(sym.special_values(k1_delta))
    sols = sym.newton_search(20)
    rng = np.random.default_rng(31)
    picks = rng.choice(len(sols), size=100, replace=False)
    for idx in picks:
        opt = opts[int(rng.integers(len(opts)))]
        F = sym.build_candidates(opt, sols[idx:idx + 1])[0]
        assert F[0] == 1 and F[-1] == 1 and list(F) == list(F[::-1])
        assert sym.special_values(F) == opt.a
        p_id = sym.newton_sums(F[::-1][None, 1:], 12)[0].astype(float)
        roots = np.roots(F[::-1].astype(float))
        p_num = np.array([np.sum(roots ** k).real for k in range(1, 13)])
        assert np.allclose(p_num, p_id, rtol=1e-6, atol=1e-6)
        # the first five Newton sums are those of the search
        assert list(sym.newton_sums(F[::-1][None, 1:], 5)[0]) == \
            list(sym.newton_sums(sols[idx:idx + 1], 5)[0])


def test_elimination_negative_control():
    controls = np.array([[1] + [0] * 19 + [1], [1] * 21], dtype=np.int64)
    first, _ = sym.eliminate_polys(controls)
    assert list(first) == [0, 0]


def test_elimination_partition_independent(k1_delta):
    opts = sym.ell_enumerate(sym.special_values(k1_delta))[:3]
    sols = sym.newton_search(20)[:20000]
    a = sym.eliminate_candidates(opts, sols)
    b = sym.eliminate_candidates(opts, sols, chunk=777)
    c = sym.eliminate_candidates(opts, sols, chunk=5000, jobs=2)
    assert a.to_json() == b.to_json() == c.to_json()
    assert a.n_candidates == 60000 and a.n_survivors == 0


def test_rabin_examples():
    assert sym.rabin_irreducible_mod_q([1, 1, 1], 2).kind == "IrreducibleModQ"
    assert sym.rabin_irreducible_mod_q([-1, 0, 1], 3).kind == "ReducibleModQ"
    assert sym.rabin_irreducible_mod_q([1, 1, 0, 1], 2).kind == "IrreducibleModQ"
    with pytest.raises(sym.NotSquarefree):
        sym.rabin_irreducible_mod_q([1, 2, 1], 5)


def test_rabin_agrees_with_root_count():
    # degree 2 and 3 polynomials are irreducible iff they have no root
    rng = np.random.default_rng(32)
    for q in (3, 5, 7, 11):
        for _ in range(30):
            f = list(rng.integers(0, q, size=int(rng.integers(3, 5))))
            f[-1] = 1
            try:
                res = sym.rabin_irreducible_mod_q(f, q)
            except sym.NotSquarefree:
                continue
            has_root = any(sum(c * x ** i for i, c in enumerate(f)) % q == 0 for x in range(q))
            assert (res.kind == "IrreducibleModQ") == (not has_root)


def test_k1_composed_mod_q_scan(k1_delta):
    # Delta(t^2) is reducible modulo every odd prime, so no q certifies it directly
    assert sym.certify_tp_irreducible(k1_delta, 2, q_max=50) is None
    cert = sym.capelli_certificate(k1_delta, 2)
    assert cert is not None and (cert["q"] - 1) % 2 == 0


def test_small_free_periods_k1(k1_delta):
    for p in sym.primes_upto(99):
        assert sym.small_free_period(k1_delta, p)["status"] == "Excluded", p


def test_roots_in_disk(k1_delta):
    assert sym.roots_in_disk(k1_delta, 1.5)
    assert not sym.roots_in_disk([-2, 1], 1.5)
    assert sym.roots_in_disk(TREFOIL, 1.5)


def test_free_period_report_cases(k1_delta):
    assert sym.free_period_report([1])["verdict"] == "NotApplicable"
    tr = sym.free_period_report(TREFOIL, small_p_max=20)
    assert tr["verdict"] == "Unknown"
    assert tr["murasugi"][2] != "Obstructed" and tr["murasugi"][3] != "Obstructed"
    assert tr["free_small"][2]["status"] == "Excluded" and tr["free_small"][5]["status"] == "Unknown"
    k = sym.free_period_report(k1_delta, run_elimination=False)
    assert k["unknown"] == ["free periods p > 100"]
