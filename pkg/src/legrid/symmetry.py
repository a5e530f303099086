"""Obstructions to periods and free periods from the Alexander polynomial.

* :func:`murasugi_test` excludes a period ``p`` when the polynomial
  reduced mod ``p`` is neither a ``p``-th power nor divisible by
  ``(1 + t + ... + t^d)^(p-1)``.
* A free period ``p`` is excluded when ``Delta(t^p)`` has no
  self-reciprocal factor of degree ``deg Delta``.  For small ``p`` this
  follows from irreducibility of ``Delta(t^p)``, certified here by Rabin's
  test modulo auxiliary primes ``q``.  For ``p > 100`` every candidate
  factor ``f`` is pinned down by its values at five roots of unity and
  its first five Newton sums, and each candidate is refuted by a later
  Newton sum that exceeds the bound forced by the root moduli.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .alexander import LaurentPoly


class NonIntegerValue(ArithmeticError):
    pass


class NotSquarefree(ArithmeticError):
    pass


class NoConvergence(ArithmeticError):
    pass


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for k in range(2, int(n ** 0.5) + 1):
        if sieve[k]:
            sieve[k * k::k] = False
    return np.nonzero(sieve)[0].tolist()


def _as_poly(delta) -> list[int]:
    """Integer coefficients, low to high, of ``delta`` shifted to a polynomial."""
    if isinstance(delta, LaurentPoly):
        return list(delta.coeffs) or [0]
    return [int(c) for c in delta]


# --- polynomials over F_p ------------------------------------------------------

def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if nz.size else a[:0]


def pmod(a, p: int) -> np.ndarray:
    return _trim(np.asarray(a, dtype=np.int64) % p)


def pmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return a[:0]
    if p < 2 ** 20 and min(a.size, b.size) * p * p < 2 ** 62:
        return _trim(np.convolve(a, b) % p)
    out = np.zeros(a.size + b.size - 1, dtype=object)
    for i, x in enumerate(a.tolist()):
        if x:
            out[i:i + b.size] += x * b.astype(object)
    return _trim((out % p).astype(np.int64))


def pdivmod(a: np.ndarray, b: np.ndarray, p: int):
    a = pmod(a, p).copy()
    b = pmod(b, p)
    if b.size == 0:
        raise ZeroDivisionError
    inv = pow(int(b[-1]), p - 2, p)
    if a.size < b.size:
        return a[:0], a
    q = np.zeros(a.size - b.size + 1, dtype=np.int64)
    bb = b.astype(np.int64)
    for k in range(a.size - b.size, -1, -1):
        c = int(a[k + b.size - 1]) * inv % p
        if c:
            q[k] = c
            a[k:k + b.size] = (a[k:k + b.size] - c * bb) % p
    return _trim(q), _trim(a[: b.size - 1])


def pgcd(a, b, p: int) -> np.ndarray:
    a, b = pmod(a, p), pmod(b, p)
    while b.size:
        _, r = pdivmod(a, b, p)
        a, b = b, r
    if a.size:
        a = a * pow(int(a[-1]), p - 2, p) % p
    return a


def pderiv(a: np.ndarray, p: int) -> np.ndarray:
    if a.size <= 1:
        return a[:0]
    return pmod(a[1:] * np.arange(1, a.size), p)


# --- Murasugi ------------------------------------------------------------------

@dataclass(frozen=True)
class MurasugiResult:
    kind: str  # "PthPower" | "CyclotomicFactor" | "Obstructed"
    d: int | None = None

    def __str__(self):
        return f"CyclotomicFactor({self.d})" if self.kind == "CyclotomicFactor" else self.kind


def murasugi_test(delta, p: int) -> MurasugiResult:
    """Murasugi's condition for a period ``p`` on a (normalized) Alexander polynomial."""
    a = pmod(_as_poly(delta), p)
    nz = np.nonzero(a)[0]
    if nz.size == 0:
        return MurasugiResult("PthPower")
    a = _trim(a[nz[0]:])
    exps = np.nonzero(a)[0]
    if np.all(exps % p == 0):
        return MurasugiResult("PthPower")
    deg = a.size - 1
    for d in range(1, deg // (p - 1) + 1):
        base = np.ones(d + 1, dtype=np.int64)
        fac = np.array([1], dtype=np.int64)
        for _ in range(p - 1):
            fac = pmul(fac, base, p)
        _, r = pdivmod(a, fac, p)
        if r.size == 0:
            return MurasugiResult("CyclotomicFactor", d)
    return MurasugiResult("Obstructed")


# --- special values and interpolation ---------------------------------------------

ANGLES = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))  # multiples of pi


def _cos_pi(x: Fraction) -> Fraction:
    """``cos(pi * x)`` for ``x`` a multiple of 1/3 or 1/2."""
    x = x % 2
    table = {Fraction(0): 1, Fraction(1, 3): Fraction(1, 2), Fraction(1, 2): 0,
             Fraction(2, 3): Fraction(-1, 2), Fraction(1): -1, Fraction(4, 3): Fraction(-1, 2),
             Fraction(3, 2): 0, Fraction(5, 3): Fraction(1, 2)}
    return Fraction(table[x])


def _half_coeffs(delta) -> list[int]:
    cs = _as_poly(delta)
    if len(cs) % 2 == 0 or cs != cs[::-1]:
        raise ValueError("expected a self-reciprocal polynomial of even degree")
    mid = len(cs) // 2
    return cs[mid:]  # c0, c1, ..., c_mid


def special_values(delta) -> tuple[int, ...]:
    """Values of the symmetrized polynomial at ``1, e^(i pi/3), i, e^(2 i pi/3), -1``."""
    half = _half_coeffs(delta)
    out = []
    for th in ANGLES:
        v = Fraction(half[0]) + 2 * sum(Fraction(c) * _cos_pi(k * th) for k, c in enumerate(half) if k)
        if v.denominator != 1:
            raise NonIntegerValue(f"value {v} at angle {th}*pi")
        out.append(int(v))
    return tuple(out)


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("zero has infinitely many divisors")
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return sorted(ds + [-d for d in ds])


def _solve_exact(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(M)
    A = [row[:] + [rhs[i]] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] / A[i][i] for i in range(n)]


@dataclass(frozen=True)
class EllOption:
    a: tuple[int, ...]
    d: tuple[int, ...]  # symmetric coefficients d0..d4 of the Laurent form

    @property
    def ell(self) -> list[int]:
        """Coefficients of ``ell_a(t) = t^4 * ell~_a(t)``, low to high (length 9)."""
        d = list(self.d)
        return d[:0:-1] + d

    def __str__(self):
        return str(LaurentPoly(0, tuple(self.ell)))


def _cos_matrix(deg: int = 4):
    return [[Fraction(1) if k == 0 else 2 * _cos_pi(k * th) for k in range(deg + 1)] for th in ANGLES]


def ell_solve(a: Sequence[int]) -> tuple[Fraction, ...]:
    """Symmetric coefficients of the unique degree-<=8 self-reciprocal interpolant."""
    return tuple(_solve_exact(_cos_matrix(), [Fraction(x) for x in a]))


def ell_enumerate(values: Sequence[int]) -> list[EllOption]:
    """All divisor tuples ``a`` of the special values with integral interpolant."""
    out = []
    for a in product(*(divisors(v) for v in values)):
        d = ell_solve(a)
        if all(x.denominator == 1 for x in d):
            out.append(EllOption(tuple(a), tuple(int(x) for x in d)))
    return out


# --- Newton-identity search ------------------------------------------------------

def newton_search(bound: int, k: int = 5) -> np.ndarray:
    """All integer ``(c1, ..., ck)`` whose Newton sums ``p1..pk`` satisfy ``|p_i| <= bound``.

    The search runs over the Newton sums: ``c_j`` is determined by
    ``p_1..p_j`` through ``-p_j = c_1 p_{j-1} + ... + c_{j-1} p_1 + j c_j``
    and must be an integer.  Returns an int64 array of shape ``(count, k)``
    sorted lexicographically.
    """
    vals = np.arange(-bound, bound + 1, dtype=np.int64)
    P = np.zeros((1, 0), dtype=np.int64)
    C = np.zeros((1, 0), dtype=np.int64)
    for j in range(1, k + 1):
        m = P.shape[0]
        P = np.repeat(P, vals.size, axis=0)
        C = np.repeat(C, vals.size, axis=0)
        pj = np.tile(vals, m)
        num = -pj.copy()
        for i in range(1, j):
            num -= C[:, i - 1] * P[:, j - i - 1]
        ok = num % j == 0
        P = np.column_stack([P[ok], pj[ok]])
        C = np.column_stack([C[ok], num[ok] // j])
    order = np.lexsort(C.T[::-1])
    return C[order]


def newton_sums(coeffs_high: np.ndarray, kmax: int) -> np.ndarray:
    """Power sums of the roots of monic polynomials, one per row, by Newton's identities.

    ``coeffs_high[r]`` holds ``e_1..e_N`` of ``t^N + e_1 t^(N-1) + ... + e_N``.
    Returns Python-int object arrays when int64 could overflow.
    """
    E = np.asarray(coeffs_high)
    rows, N = E.shape
    out = np.zeros((rows, kmax), dtype=object)
    Eo = E.astype(object)
    for kk in range(1, kmax + 1):
        s = np.zeros(rows, dtype=object)
        for i in range(1, min(kk - 1, N) + 1):
            s = s + Eo[:, i - 1] * out[:, kk - i - 1]
        if kk <= N:
            s = s + kk * Eo[:, kk - 1]
        out[:, kk - 1] = -s
    return out


# --- candidate elimination --------------------------------------------------------

Q_FACTOR = (1, -1, 1, -1, 0, 0, -1, 1, -1, 1)  # (t^6-1)(t^2+1)(t-1), low to high


def violation_thresholds(kmax: int = 31, p: int = 101, bound: int = 20) -> list[int]:
    """``T[k]`` = least integer ``m`` with ``m >= bound * (3/2)^(k/p)``, decided exactly.

    ``|p_k| >= bound * (3/2)^(k/p)``  iff  ``|p_k|^p * 2^k >= bound^p * 3^k``.
    """
    out = [0]
    for k in range(1, kmax + 1):
        rhs = bound ** p * 3 ** k
        m = bound
        while m ** p * 2 ** k < rhs:
            m += 1
        out.append(m)
    return out


def b_from_c(c: np.ndarray) -> np.ndarray:
    """Solve the low coefficients of ``Q * B`` for ``b1..b5`` (triangular)."""
    c = np.asarray(c, dtype=np.int64)
    rows = c.shape[0]
    b = np.zeros((rows, 6), dtype=np.int64)
    b[:, 0] = 1
    q = Q_FACTOR
    for k in range(1, 6):
        acc = np.zeros(rows, dtype=np.int64)
        for i in range(1, k + 1):
            acc += q[i] * b[:, k - i]
        b[:, k] = c[:, k - 1] - acc  # q[0] = 1
    return b[:, 1:]


def build_candidates(ell: EllOption, c: np.ndarray) -> np.ndarray:
    """Coefficients (low to high, 21 columns) of ``t^10 ell~_a(t) + Q(t) B(t)``."""
    b = b_from_c(c)
    rows = b.shape[0]
    B = np.empty((rows, 12), dtype=np.int64)
    B[:, 0] = 1
    B[:, 11] = 1
    B[:, 1:6] = b
    B[:, 6:11] = b[:, ::-1]
    F = np.zeros((rows, 21), dtype=np.int64)
    for i, qv in enumerate(Q_FACTOR):
        if qv:
            F[:, i:i + 12] += qv * B
    F[:, 6:15] += np.array(ell.ell, dtype=np.int64)
    return F


@dataclass
class EliminationReport:
    n_candidates: int = 0
    n_survivors: int = 0
    survivors: list = field(default_factory=list)
    first_violation: Counter = field(default_factory=Counter)
    kmax: int = 31
    overflow_fallbacks: int = 0

    def merge(self, other: "EliminationReport") -> "EliminationReport":
        r = EliminationReport(self.n_candidates + other.n_candidates,
                              self.n_survivors + other.n_survivors,
                              self.survivors + other.survivors,
                              self.first_violation + other.first_violation, self.kmax,
                              self.overflow_fallbacks + other.overflow_fallbacks)
        return r

    def to_json(self):
        return {"n_candidates": self.n_candidates, "n_survivors": self.n_survivors,
                "survivors": [[list(a), list(c)] for a, c in self.survivors],
                "first_violation_histogram": {str(k): v for k, v in sorted(self.first_violation.items())},
                "max_first_violation": max(self.first_violation) if self.first_violation else None,
                "kmax": self.kmax, "overflow_fallbacks": self.overflow_fallbacks}


_SAFE = 2 ** 62


def eliminate_polys(F: np.ndarray, kmax: int = 31, thresholds=None):
    """First ``k <= kmax`` at which each monic self-reciprocal row of ``F`` violates the bound.

    ``F`` holds coefficients low to high (constant and leading coefficient 1).
    Returns an int array with 0 marking survivors.
    """
    T = thresholds or violation_thresholds(kmax)
    F = np.asarray(F)
    rows, width = F.shape
    N = width - 1
    E = F[:, ::-1][:, 1:]  # e_1..e_N for t^N + e_1 t^(N-1) + ...
    first = np.zeros(rows, dtype=np.int64)
    live = np.arange(rows)
    El = E.astype(np.int64)
    Pw = np.zeros((rows, kmax), dtype=np.int64)
    fallback = 0
    cap = np.abs(El).max(initial=0) if rows else 0
    # survivors have |p_j| < T[j] <= max(T); each new sum is bounded by
    # N * cap * max(T) + N * cap, so int64 is safe below this limit
    if (N + 1) * (int(cap) + 1) * (max(T) + N + 1) >= _SAFE:
        first[:] = _eliminate_exact(E, kmax, T)
        return first, rows
    Ecur, Pcur = El, Pw
    for k in range(1, kmax + 1):
        s = np.zeros(live.size, dtype=np.int64)
        for i in range(1, min(k - 1, N) + 1):
            s += Ecur[:, i - 1] * Pcur[:, k - i - 1]
        if k <= N:
            s += k * Ecur[:, k - 1]
        pk = -s
        Pcur[:, k - 1] = pk
        bad = np.abs(pk) >= T[k]
        if bad.any():
            first[live[bad]] = k
            keep = ~bad
            live, Ecur, Pcur = live[keep], Ecur[keep], Pcur[keep]
        if live.size == 0:
            break
    return first, fallback


def _eliminate_exact(E, kmax, T):
    sums = newton_sums(np.asarray(E).astype(object), kmax)
    out = []
    for row in sums:
        k0 = 0
        for k in range(1, kmax + 1):
            if abs(int(row[k - 1])) >= T[k]:
                k0 = k
                break
        out.append(k0)
    return np.array(out, dtype=np.int64)


def eliminate_candidates(ell_options: Sequence[EllOption], newton_solutions: np.ndarray,
                         kmax: int = 31, chunk: int | None = None, jobs: int = 1) -> EliminationReport:
    """Refute every candidate factor ``f`` built from an ``ell_a`` option and Newton solution ``c``.

    ``chunk`` splits the Newton solutions into blocks; the report does
    not depend on the partition.  ``jobs > 1`` processes ``ell`` options
    in parallel worker processes.
    """
    T = violation_thresholds(kmax)
    sols = np.asarray(newton_solutions, dtype=np.int64)
    tasks = [(opt, lo, min(lo + (chunk or len(sols)), len(sols)))
             for opt in ell_options for lo in range(0, max(len(sols), 1), chunk or max(len(sols), 1))]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_elim_task, [(o, sols[lo:hi], kmax, T) for o, lo, hi in tasks]))
    else:
        parts = [_elim_task((o, sols[lo:hi], kmax, T)) for o, lo, hi in tasks]
    report = EliminationReport(kmax=kmax)
    for p in parts:
        report = report.merge(p)
    return report


def _elim_task(args) -> EliminationReport:
    opt, sols, kmax, T = args
    if len(sols) == 0:
        return EliminationReport(kmax=kmax)
    F = build_candidates(opt, sols)
    first, fallback = eliminate_polys(F, kmax, T)
    surv = np.nonzero(first == 0)[0]
    hist = Counter(first[first > 0].tolist())
    return EliminationReport(len(sols), int(surv.size),
                             [(opt.a, tuple(int(x) for x in sols[i])) for i in surv[:100]],
                             hist, kmax, int(fallback))


# --- irreducibility modulo q -------------------------------------------------------

@dataclass(frozen=True)
class RabinResult:
    kind: str  # "IrreducibleModQ" | "ReducibleModQ"
    q: int
    reason: str = ""


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _mulx_matrix(g: np.ndarray, fl: np.ndarray, q: int) -> np.ndarray:
    """Matrix of multiplication by ``g`` modulo ``f`` (``x^N = -fl``), float64."""
    N = fl.size
    out = np.zeros((N, N), dtype=np.int64)
    col = np.zeros(N, dtype=np.int64)
    col[: g.size] = g[:N]
    for j in range(N):
        out[:, j] = col
        top = int(col[-1])
        col = np.concatenate([[0], col[:-1]])
        if top:
            col = (col - top * fl) % q
    return out.astype(np.float64)


def _frobenius_matrix(f: np.ndarray, q: int) -> np.ndarray:
    """Matrix ``Q`` (float64) with column ``i`` the coefficients of ``x^(q i) mod f``.

    The first ``b ~ sqrt(N)`` columns come from repeated multiplication by
    ``x^q``; later blocks of ``b`` columns are one matrix product each
    with the multiplication matrix of ``x^(q b)``.
    """
    N = f.size - 1
    inv = pow(int(f[-1]), q - 2, q)
    fl = (f[:-1] * inv) % q  # x^N = -fl
    xq = _xpow_mod(q, f, q)
    b = max(1, int(math.isqrt(N)))
    Mq = _mulx_matrix(xq, fl, q)
    Q = np.zeros((N, N), dtype=np.float64)
    cur = np.zeros(N, dtype=np.float64)
    cur[0] = 1
    for i in range(min(b, N)):
        Q[:, i] = cur
        cur = np.fmod(Mq @ cur, q)
    if b < N:
        Y = _mulx_matrix(cur.astype(np.int64), fl, q)
        for s in range(b, N, b):
            e = min(s + b, N)
            Q[:, s:e] = np.fmod(Y @ Q[:, s - b:e - b], q)
    return Q


def _mulmod_dense(a: np.ndarray, b: np.ndarray, fl: np.ndarray, q: int) -> np.ndarray:
    N = fl.size
    prod = np.convolve(a.astype(np.int64), b.astype(np.int64)) % q if a.size * q * q < 2 ** 62 else \
        (np.convolve(a.astype(object), b.astype(object)) % q).astype(np.int64)
    prod = np.concatenate([prod, np.zeros(max(0, 2 * N - 1 - prod.size), dtype=np.int64)])
    for k in range(prod.size - 1, N - 1, -1):
        c = int(prod[k])
        if c:
            prod[k - N:k] = (prod[k - N:k] - c * fl) % q
            prod[k] = 0
    return prod[:N] % q


def _xpow_mod(e: int, f: np.ndarray, q: int) -> np.ndarray:
    N = f.size - 1
    inv = pow(int(f[-1]), q - 2, q)
    fl = (f[:-1] * inv) % q
    result = np.zeros(N, dtype=np.int64)
    result[0] = 1
    base = np.zeros(N, dtype=np.int64)
    if N == 1:
        base[0] = (-fl[0]) % q
    else:
        base[1] = 1
    while e:
        if e & 1:
            result = _mulmod_dense(result, base, fl, q)
        base = _mulmod_dense(base, base, fl, q)
        e >>= 1
    return result


def _apply_frob(Qm: np.ndarray, v: np.ndarray, q: int) -> np.ndarray:
    return np.fmod(Qm @ v.astype(np.float64), q).astype(np.int64)


def rabin_irreducible_mod_q(f, q: int) -> RabinResult:
    """Rabin's irreducibility test for ``f`` over ``F_q``.

    ``f`` is given by integer coefficients, low to high; its degree must
    not drop modulo ``q``.  An ``IrreducibleModQ`` answer certifies
    irreducibility over the integers for a primitive ``f``.
    """
    a = pmod(_as_poly(f), q)
    fi = _as_poly(f)
    if a.size != len(fi):
        raise ValueError("leading coefficient vanishes modulo q")
    if a.size - 1 < 1:
        return RabinResult("ReducibleModQ", q, "constant polynomial")
    if pgcd(a, pderiv(a, q), q).size > 1:
        raise NotSquarefree(f"f is not squarefree modulo {q}")
    N = a.size - 1
    if N == 1:
        return RabinResult("IrreducibleModQ", q, "linear")
    a = a * pow(int(a[-1]), q - 2, q) % q
    if float(q) * q * N >= 2 ** 52:
        raise ValueError("q too large for the float64 Frobenius matrix")
    Qm = _frobenius_matrix(a, q)
    x = np.zeros(N, dtype=np.int64)
    x[1] = 1
    checkpoints = {N // r: r for r in _prime_factors(N)}
    cur = x.copy()
    for k in range(1, N + 1):
        cur = _apply_frob(Qm, cur, q)
        if k in checkpoints:
            diff = cur.copy()
            diff[1] = (diff[1] - 1) % q
            g = pgcd(a, diff, q)
            if g.size > 1:
                return RabinResult("ReducibleModQ", q, f"factor of degree dividing {k}")
    diff = cur.copy()
    diff[1] = (diff[1] - 1) % q
    if _trim(diff % q).size:
        return RabinResult("ReducibleModQ", q, "x^(q^N) != x")
    return RabinResult("IrreducibleModQ", q, "Rabin")


def compose_tp(delta, p: int) -> list[int]:
    """Coefficients of ``Delta(t^p)``, low to high."""
    cs = _as_poly(delta)
    out = [0] * ((len(cs) - 1) * p + 1)
    for i, c in enumerate(cs):
        out[i * p] = c
    return out


def certify_tp_irreducible(delta, p: int, q_max: int = 5000):
    """Search auxiliary primes ``q`` certifying irreducibility of ``Delta(t^p)``.

    Cheap necessary conditions are applied first: ``Delta`` itself must be
    irreducible modulo ``q`` and ``p`` must divide ``q^deg - 1``.
    Returns ``(q, RabinResult)`` or ``None``.
    """
    cs = _as_poly(delta)
    deg = len(cs) - 1
    target = compose_tp(cs, p)
    for q in primes_upto(q_max):
        if q == p or cs[-1] % q == 0:
            continue
        if pow(q, deg, p) != 1:
            continue
        try:
            base = rabin_irreducible_mod_q(cs, q)
        except NotSquarefree:
            continue
        if base.kind != "IrreducibleModQ":
            continue
        try:
            res = rabin_irreducible_mod_q(target, q)
        except (NotSquarefree, ValueError):
            continue
        if res.kind == "IrreducibleModQ":
            return q, res
    return None


# --- numeric roots ---------------------------------------------------------------

def durand_kerner(coeffs_low: Sequence[float], iters: int = 2000, tol: float = 1e-14) -> np.ndarray:
    """All complex roots by the Durand-Kerner (Weierstrass) iteration."""
    c = np.array(coeffs_low, dtype=complex)
    nz = np.nonzero(c)[0]
    c = c[: nz[-1] + 1]
    deg = c.size - 1
    if deg < 1:
        return np.zeros(0, dtype=complex)
    c = c / c[-1]
    high = c[::-1]
    radius = 1 + np.max(np.abs(c[:-1]))
    z = radius * (0.4 + 0.9j) ** np.arange(deg)
    for _ in range(iters):
        num = np.polyval(high, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        step = num / diff.prod(axis=1)
        z = z - step
        if np.max(np.abs(step)) < tol * max(1.0, np.max(np.abs(z))):
            return z
    raise NoConvergence(f"no convergence after {iters} iterations")


def roots_in_disk(delta, radius: float, margin: float = 1e-6, residual_tol: float = 1e-6) -> bool:
    """Numerically check that all roots lie in ``|z| <= radius - margin`` (advisory)."""
    cs = [float(x) for x in _as_poly(delta)]
    if not any(cs):
        raise ValueError("zero polynomial")
    roots = durand_kerner(cs)
    high = np.array(cs[::-1])
    scale = np.polyval(np.abs(high), np.abs(roots))
    res = np.abs(np.polyval(high, roots)) / np.maximum(scale, 1.0)
    if roots.size and np.max(res) > residual_tol:
        raise NoConvergence(f"residual {np.max(res):.2e}")
    return bool(np.all(np.abs(roots) <= radius - margin))


def small_free_period(delta, p: int, q_max: int = 5000) -> dict:
    """Try to show that ``Delta(t^p)`` has no factor of degree ``deg Delta``.

    Certificates are tried from cheapest to most expensive: the root-field
    argument, Rabin's test of ``Delta(t^p)`` itself, and degree patterns
    modulo several primes.  Without any certificate the status is ``Unknown``.
    """
    cs = _as_poly(delta)
    deg = len(cs) - 1
    cert = capelli_certificate(cs, p, q_max=4 * q_max, base_q_max=q_max)
    if cert:
        return {"status": "Excluded", "method": "root-field", **cert}
    found = certify_tp_irreducible(cs, p, min(q_max, 500))
    if found:
        return {"status": "Excluded", "method": "rabin", "q": found[0]}
    used = exclude_factor_degree(cs, p, deg, q_max=q_max)
    if used:
        return {"status": "Excluded", "method": "degree-pattern", "q": [q for q, _ in used]}
    return {"status": "Unknown"}


# --- aggregate report ------------------------------------------------------------

def free_period_report(delta, *, murasugi_max: int | None = None, small_p_max: int = 100,
                       q_max: int = 5000, run_elimination: bool = True, jobs: int = 1,
                       newton_bound: int = 20) -> dict:
    """Period and free-period exclusions derivable from the Alexander polynomial."""
    cs = _as_poly(delta)
    deg = len(cs) - 1
    out: dict = {"degree": deg}
    if deg == 0:
        out.update(verdict="NotApplicable",
                   note="constant polynomial: none of the criteria can exclude anything")
        return out
    pm = murasugi_max or deg + 1
    mur = {p: str(murasugi_test(cs, p)) for p in primes_upto(pm)}
    out["murasugi"] = mur
    out["murasugi_note"] = (f"for primes p > {pm} a p-th power would be constant and "
                            "(1+...+t^d)^(p-1) has degree above the polynomial's")
    free_small = {}
    for p in primes_upto(small_p_max - 1):
        free_small[p] = small_free_period(cs, p, q_max)
    out["free_small"] = free_small
    unknown = [f"period {p}" for p, v in mur.items() if v != "Obstructed"]
    unknown += [f"free period {p}" for p, v in free_small.items() if v["status"] != "Excluded"]
    if deg == 20 and run_elimination:
        roots_ok = roots_in_disk(cs, 1.5)
        values = special_values(cs)
        opts = ell_enumerate(values)
        sols = newton_search(newton_bound)
        rep = eliminate_candidates(opts, sols, jobs=jobs)
        out["free_large"] = {"roots_in_disk_1.5": roots_ok, "special_values": list(values),
                             "n_ell_options": len(opts), "n_newton_solutions": int(len(sols)),
                             **rep.to_json()}
        if not roots_ok or rep.n_survivors:
            unknown.append(f"free periods p > {small_p_max}")
    else:
        out["free_large"] = {"status": "skipped" if deg == 20 else "unsupported degree"}
        unknown.append(f"free periods p > {small_p_max}")
    out["verdict"] = "AllPeriodsExcluded" if not unknown else "Unknown"
    out["unknown"] = unknown
    return out


# --- factor-degree patterns ------------------------------------------------------

def _frobenius_orbit(f: np.ndarray, q: int, kmax: int):
    """Yield ``(k, x^(q^k) mod f)`` for ``k = 1..kmax`` (``f`` monic)."""
    N = f.size - 1
    Qm = _frobenius_matrix(f, q)
    cur = np.zeros(N, dtype=np.int64)
    if N == 1:
        cur[0] = (-f[0]) % q
    else:
        cur[1] = 1
    for k in range(1, kmax + 1):
        cur = _apply_frob(Qm, cur, q)
        yield k, cur


def _ddf(a: np.ndarray, q: int, step: int = 1) -> list[tuple[int, np.ndarray]]:
    """Distinct-degree factorization of a monic squarefree ``a`` over ``F_q``.

    Returns ``(k, g_k)`` with ``g_k`` the product of the irreducible
    factors of degree ``k``.  When every factor degree is known to be a
    multiple of ``step`` only those ``k`` are examined.
    """
    N = a.size - 1
    if N <= 0:
        return []
    if float(q) * q * N >= 2 ** 52:
        raise ValueError("q too large for the float64 Frobenius matrix")
    pieces = []
    rest = a
    for k, h in _frobenius_orbit(a, q, N):
        if rest.size - 1 < 2 * k:
            break
        if k % step:
            continue
        diff = h.copy()
        if diff.size > 1:
            diff[1] = (diff[1] - 1) % q
        else:
            diff = np.concatenate([diff, [q - 1]])
        g = pgcd(rest, diff, q)
        if g.size > 1:
            pieces.append((k, g))
            rest, _ = pdivmod(rest, g, q)
    if rest.size > 1:
        pieces.append((rest.size - 1, rest))
    return pieces


def _monic_squarefree(f, q: int) -> np.ndarray:
    a = pmod(_as_poly(f), q)
    if a.size != len(_as_poly(f)):
        raise ValueError("leading coefficient vanishes modulo q")
    if pgcd(a, pderiv(a, q), q).size > 1:
        raise NotSquarefree(f"not squarefree modulo {q}")
    return a * pow(int(a[-1]), q - 2, q) % q


def distinct_degree_pattern(f, q: int) -> list[int]:
    """Degrees of the irreducible factors of a squarefree ``f`` over ``F_q``, sorted."""
    a = _monic_squarefree(f, q)
    degs: list[int] = []
    for k, g in _ddf(a, q):
        degs += [k] * ((g.size - 1) // k)
    return sorted(degs)


def composed_degree_pattern(base, p: int, q: int) -> list[int]:
    """Factor degrees of ``base(t^p)`` over ``F_q``, sorted.

    ``base`` is split by degree first.  If ``g`` has only irreducible
    factors of degree ``m``, every root ``b`` of ``g(t^p)`` has ``b^p`` of
    degree ``m``, so all factor degrees of ``g(t^p)`` are multiples of ``m``.
    """
    a = _monic_squarefree(base, q)
    _monic_squarefree(compose_tp(a.tolist(), p), q)  # squarefreeness of the composition
    degs: list[int] = []
    for m, g in _ddf(a, q):
        comp = np.array(compose_tp(g.tolist(), p), dtype=np.int64)
        for k, h in _ddf(comp, q, step=m):
            degs += [k] * ((h.size - 1) // k)
    return sorted(degs)


def subset_sums(degs: Iterable[int], cap: int) -> set[int]:
    reach = 1
    mask = (1 << (cap + 1)) - 1
    for d in degs:
        reach = (reach | (reach << d)) & mask
    return {k for k in range(cap + 1) if reach >> k & 1}


def exclude_factor_degree(base, p: int, target: int, q_max: int = 5000, max_primes: int = 40,
                          skip: Iterable[int] = ()):
    """Certify that ``base(t^p)`` has no integer factor of degree ``target``.

    Any factorization over the integers reduces modulo each prime ``q``
    to a grouping of the irreducible factors mod ``q``, so ``target`` must
    be a subset sum of every squarefree degree pattern.  Returns the list
    of ``(q, pattern)`` used once ``target`` is ruled out, else ``None``
    after ``max_primes`` usable primes.
    """
    cs = _as_poly(base)
    N = (len(cs) - 1) * p
    possible = set(range(1, N))
    used = []
    skip = set(skip)
    tried = 0
    for q in primes_upto(q_max):
        if q in skip or cs[-1] % q == 0 or q == p:
            continue
        try:
            base_pat = distinct_degree_pattern(cs, q)
            # a factor h of degree m with p not dividing q^m - 1 keeps a factor of
            # degree m in h(t^p); if that holds for every m the pattern is useless
            if all(pow(q, m, p) != 1 for m in set(base_pat)):
                continue
            pat = composed_degree_pattern(cs, p, q)
        except (NotSquarefree, ValueError):
            continue
        tried += 1
        sums = subset_sums(pat, N)
        if possible - sums:
            possible &= sums
            used.append((q, pat))
            if target not in possible:
                return used
        if tried >= max_primes:
            break
    return None


# --- p-th powers in the root field ------------------------------------------------

def _roots_mod_q(cs: Sequence[int], q: int) -> list[int]:
    x = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(cs):
        acc = (acc * x + c) % q
    return np.nonzero(acc == 0)[0].tolist()


def capelli_certificate(delta, p: int, q_max: int = 20000, base_q_max: int = 5000):
    """Certify irreducibility of ``Delta(t^p)`` through the root field of ``Delta``.

    For irreducible ``Delta`` with root ``a``, ``Delta(t^p)`` is irreducible
    iff ``t^p - a`` is irreducible over ``Q(a)``, which (``p`` prime, odd or
    not) holds iff ``a`` is not a ``p``-th power there.  A prime ``q`` with
    ``Delta`` squarefree mod ``q`` and a root ``r`` of ``Delta`` mod ``q``
    that is not a ``p``-th power in ``F_q`` witnesses this: a ``p``-th root
    of ``a`` would reduce to one of ``r`` at the degree-one prime over
    ``q`` attached to ``r``.  Returns a dict with the two primes, or
    ``None``.
    """
    cs = _as_poly(delta)
    if len(cs) < 2:
        return None
    base = None
    for q0 in primes_upto(base_q_max):
        if cs[-1] % q0 == 0:
            continue
        try:
            if rabin_irreducible_mod_q(cs, q0).kind == "IrreducibleModQ":
                base = q0
                break
        except NotSquarefree:
            continue
    if base is None:
        return None
    for q in primes_upto(q_max):
        if (q - 1) % p or cs[-1] % q == 0:
            continue
        a = pmod(cs, q)
        if pgcd(a, pderiv(a, q), q).size > 1:
            continue
        for r in _roots_mod_q(cs, q):
            if pow(r, (q - 1) // p, q) != 1:
                return {"irreducible_mod": base, "q": q, "root": r}
    return None
