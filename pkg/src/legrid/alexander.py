"""Planar diagrams, Alexander polynomials and Dowker-Thistlethwaite codes of grid diagrams.

The Alexander polynomial is computed from the Wirtinger presentation:
one row per crossing, one column per arc, with a row and a column
deleted.  The resulting minor is a polynomial in ``t`` of degree less
than the number of crossings; it is evaluated at integer points modulo
word-size primes with numpy, interpolated, lifted by the Chinese
remainder theorem and normalized.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .grid import GridDiagram

DEFAULT_PRIMES = (2147483647, 2147483629)
ALT_PRIMES = (2147483587, 2147483579)


class NormalizationFailure(ArithmeticError):
    """The computed minor is not of the form +-t^k times a symmetric polynomial with value 1 at 1."""


class LengthMismatch(ValueError):
    pass


# --- Laurent polynomials -------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """``sum(coeffs[i] * t**(min_exp + i))`` with integer coefficients."""

    min_exp: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = [int(c) for c in self.coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))
        object.__setattr__(self, "min_exp", self.min_exp + lo if hi > lo else 0)

    @classmethod
    def from_poly(cls, coeffs_low_to_high: Sequence[int], shift: int = 0) -> "LaurentPoly":
        return cls(shift, tuple(coeffs_low_to_high))

    @classmethod
    def from_high(cls, coeffs_high_to_low: Sequence[int], max_exp: int) -> "LaurentPoly":
        cs = tuple(reversed(list(coeffs_high_to_low)))
        return cls(max_exp - len(cs) + 1, cs)

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_self_reciprocal(self) -> bool:
        return self.coeffs == self.coeffs[::-1] and self.min_exp == -self.max_exp

    def poly(self) -> list[int]:
        """Coefficients (low to high) of ``t**(-min_exp)`` times the polynomial."""
        return list(self.coeffs)

    def __call__(self, t):
        return sum(c * t ** (self.min_exp + i) for i, c in enumerate(self.coeffs))

    def __neg__(self):
        return LaurentPoly(self.min_exp, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "LaurentPoly"):
        if not self.coeffs or not other.coeffs:
            return LaurentPoly(0, ())
        c = np.convolve(np.array(self.coeffs, dtype=object), np.array(other.coeffs, dtype=object))
        return LaurentPoly(self.min_exp + other.min_exp, tuple(int(x) for x in c))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            e = self.min_exp + i
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            body = str(mag) if (mono == "" or mag != 1) else ""
            body = body + ("*" if body and mono else "") + mono
            terms.append(("-" if c < 0 else "+") + " " + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_json(self):
        return {"min_exp": self.min_exp, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["min_exp"]), tuple(int(c) for c in d["coeffs"]))


# --- planar diagram ----------------------------------------------------------------

@dataclass(frozen=True)
class PlanarDiagram:
    """Crossings ``(over_arc, under_in_arc, under_out_arc, sign)`` and the visit sequence.

    ``visits`` lists ``(crossing index, is_over)`` in traversal order;
    ``positions`` gives the grid point ``(col, row)`` of every crossing.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    visits: tuple[tuple[int, bool], ...]
    positions: tuple[tuple[int, int], ...]

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_arcs(self) -> int:
        return len(self.crossings)


def planar_diagram(g: GridDiagram) -> PlanarDiagram:
    """Planar diagram of a knot diagram, vertical strands over horizontal ones."""
    cr_rows = g.col_rows
    cr_cols = g.row_cols
    # crossing (c, r) exists iff r strictly inside column c's edge and c strictly inside row r's edge
    idx: dict[tuple[int, int], int] = {}
    signs: list[int] = []
    positions: list[tuple[int, int]] = []
    events: list[tuple[int, bool]] = []
    trav = g.traversal()
    m = len(trav)
    for k in range(m):
        (c0, r0), (c1, r1) = trav[k], trav[(k + 1) % m]
        if c0 == c1:  # vertical edge, over
            step = 1 if r1 > r0 else -1
            for r in range(r0 + step, r1, step):
                a, b = sorted(cr_cols[r])
                if a < c0 < b:
                    key = (c0, r)
                    if key not in idx:
                        idx[key] = len(idx)
                        positions.append(key)
                        signs.append(0)
                    events.append((idx[key], True))
        else:  # horizontal edge, under
            step = 1 if c1 > c0 else -1
            for c in range(c0 + step, c1, step):
                a, b = sorted(cr_rows[c])
                if a < r0 < b:
                    key = (c, r0)
                    if key not in idx:
                        idx[key] = len(idx)
                        positions.append(key)
                        signs.append(0)
                    events.append((idx[key], False))
    ncr = len(idx)
    # directions for the crossing sign: vertical v, horizontal h, sign = -v*h
    vdir, hdir = {}, {}
    for k in range(m):
        (c0, r0), (c1, r1) = trav[k], trav[(k + 1) % m]
        if c0 == c1:
            vdir[c0] = 1 if r1 > r0 else -1
        else:
            hdir[r0] = 1 if c1 > c0 else -1
    over = [0] * ncr
    u_in = [0] * ncr
    u_out = [0] * ncr
    arc = 0
    for ci, is_over in events:
        if is_over:
            over[ci] = arc
        else:
            u_in[ci] = arc
            arc = (arc + 1) % ncr
            u_out[ci] = arc
    out = []
    for ci, (c, r) in enumerate(positions):
        out.append((over[ci], u_in[ci], u_out[ci], -vdir[c] * hdir[r]))
    return PlanarDiagram(tuple(out), tuple(events), tuple(positions))


# --- modular determinants -----------------------------------------------------------

def alexander_matrix_at(pd: PlanarDiagram, t: int, p: int) -> np.ndarray:
    """Wirtinger Alexander matrix evaluated at ``t`` modulo ``p`` (last row and column deleted)."""
    m = pd.n_crossings
    a = np.zeros((m, m), dtype=np.int64)
    for row, (k, i, j, s) in enumerate(pd.crossings):
        if s > 0:
            vals = ((k, 1 - t), (i, t), (j, -1))
        else:
            vals = ((k, 1 - t), (i, -1), (j, t))
        for col, v in vals:
            a[row, col] = (a[row, col] + v) % p
    return a[:-1, :-1]


def det_mod(a: np.ndarray, p: int) -> int:
    """Determinant modulo a prime ``p < 2**31`` by Gaussian elimination in int64."""
    a = a.copy() % p
    n = a.shape[0]
    det = 1
    for k in range(n):
        nz = np.nonzero(a[k:, k])[0]
        if nz.size == 0:
            return 0
        piv = k + int(nz[0])
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        pv = int(a[k, k])
        det = det * pv % p
        if k + 1 == n:
            break
        inv = pow(pv, p - 2, p)
        rowk = (a[k, k:] * inv) % p
        f = a[k + 1:, k].copy()
        rows = np.nonzero(f)[0]
        if rows.size:
            sub = a[k + 1 + rows, k:]
            a[k + 1 + rows, k:] = (sub - (f[rows, None] * rowk[None, :]) % p) % p
    return det % p


def interpolate_mod(xs: Sequence[int], ys: Sequence[int], p: int) -> list[int]:
    """Coefficients (low to high) of the interpolating polynomial modulo ``p`` (Newton form)."""
    n = len(xs)
    coef = [y % p for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], p - 2, p) % p
    poly = [0] * n
    poly[0] = coef[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        new = [0] * n
        for d in range(deg + 1):
            new[d + 1] = (new[d + 1] + poly[d]) % p
            new[d] = (new[d] - xs[i] * poly[d]) % p
        new[0] = (new[0] + coef[i]) % p
        poly = new
        deg += 1
    return poly


def _crt_lift(residues: Sequence[Sequence[int]], primes: Sequence[int]) -> list[int]:
    mod = 1
    for p in primes:
        mod *= p
    out = []
    for vals in zip(*residues):
        x = 0
        for v, p in zip(vals, primes):
            q = mod // p
            x += v * q * pow(q, -1, p)
        x %= mod
        out.append(x - mod if x > mod // 2 else x)
    return out


def minor_poly(pd: PlanarDiagram, primes: Sequence[int] = DEFAULT_PRIMES) -> list[int]:
    """Integer coefficients (low to high) of the Alexander-matrix minor."""
    m = pd.n_crossings
    if m == 0:
        return [1]
    xs = list(range(1, m + 2))  # degree <= m - 1, one spare point
    per_prime = []
    for p in primes:
        ys = [det_mod(alexander_matrix_at(pd, x, p), p) for x in xs]
        per_prime.append(interpolate_mod(xs, ys, p))
    return _crt_lift(per_prime, primes)


def normalize(coeffs_low_to_high: Sequence[int]) -> LaurentPoly:
    """Normalize ``+-t^k * poly`` to the symmetric representative with value 1 at ``t = 1``."""
    lp = LaurentPoly(0, tuple(coeffs_low_to_high))
    if lp.is_zero():
        raise NormalizationFailure("the minor vanishes identically")
    cs = lp.coeffs
    if len(cs) % 2 == 0:
        raise NormalizationFailure("odd span")
    at1 = sum(cs)
    if at1 not in (1, -1):
        raise NormalizationFailure(f"value at t=1 is {at1}")
    cs = tuple(c * at1 for c in cs)
    if cs != cs[::-1]:
        raise NormalizationFailure("not self-reciprocal")
    return LaurentPoly(-(len(cs) // 2), cs)


def alexander_poly(g: GridDiagram | PlanarDiagram, primes: Sequence[int] = DEFAULT_PRIMES) -> LaurentPoly:
    """Normalized Alexander polynomial of a knot diagram."""
    pd = g if isinstance(g, PlanarDiagram) else planar_diagram(g)
    return normalize(minor_poly(pd, primes))


# --- Dowker-Thistlethwaite codes --------------------------------------------------

def _visit_labels(pd: PlanarDiagram, start: int, direction: int):
    visits = list(pd.visits)
    if direction < 0:
        visits = visits[::-1]
    nv = len(visits)
    rot = visits[start % nv:] + visits[:start % nv] if nv else []
    return [(lab + 1, ci, over) for lab, (ci, over) in enumerate(rot)]


def dt_export(pd: GridDiagram | PlanarDiagram, start: int = 0, direction: int = 1,
              over_negative: bool = True) -> list[int]:
    """DT code: for odd labels 1, 3, ... the paired even label.

    When ``over_negative`` the even label is negated if the strand passes
    over at that visit; otherwise if it passes under.
    """
    if isinstance(pd, GridDiagram):
        pd = planar_diagram(pd)
    labs = _visit_labels(pd, start, direction)
    by_cross: dict[int, list[tuple[int, bool]]] = {}
    for lab, ci, over in labs:
        by_cross.setdefault(ci, []).append((lab, over))
    code = {}
    for ci, pair in by_cross.items():
        (l1, o1), (l2, o2) = pair
        odd, even = ((l1, o1), (l2, o2)) if l1 % 2 else ((l2, o2), (l1, o1))
        if odd[0] % 2 == 0 or even[0] % 2:
            raise ValueError("crossing visits do not pair odd with even labels")
        neg = even[1] if over_negative else not even[1]
        code[odd[0]] = -even[0] if neg else even[0]
    return [code[k] for k in sorted(code)]


def dt_variants(pd: GridDiagram | PlanarDiagram) -> list[list[int]]:
    """All ``4c`` numbering variants (start visit x direction) of a diagram's DT code."""
    if isinstance(pd, GridDiagram):
        pd = planar_diagram(pd)
    nv = len(pd.visits)
    return [dt_export(pd, s, d) for d in (1, -1) for s in range(nv)]


def _code_visits(code: Sequence[int]):
    """Reconstruct ``(pairs, over_at)`` from a DT code under the over-negative convention."""
    pairs = []
    for k, e in enumerate(code):
        odd = 2 * k + 1
        pairs.append((odd, abs(e), e < 0))  # over at the even visit iff negative
    return pairs


def _relabel(code: Sequence[int], shift: int, reverse: bool) -> tuple[int, ...]:
    nv = 2 * len(code)
    out = {}
    for odd, even, over_even in _code_visits(code):
        def f(v):
            w = (-(v - 1) if reverse else (v - 1)) - shift
            return w % nv + 1
        a, b = f(odd), f(even)
        over_a = not over_even
        over_b = over_even
        if a % 2 == 0:
            a, b, over_a, over_b = b, a, over_b, over_a
        out[a] = -b if over_b else b
    return tuple(out[k] for k in sorted(out))


def dt_match(seq1: Sequence[int], seq2: Sequence[int]) -> bool:
    """Whether two DT codes agree up to start, direction and global sign convention."""
    if len(seq1) != len(seq2):
        raise LengthMismatch(f"codes of lengths {len(seq1)} and {len(seq2)}")
    if not seq1:
        return True
    target = tuple(seq2)
    neg = tuple(-x for x in seq2)
    nv = 2 * len(seq1)
    for rev in (False, True):
        for s in range(nv):
            v = _relabel(seq1, s, rev)
            if v == target or v == neg:
                return True
    return False
