"""Maximal rectangle types and the matching system of a rigid grid diagram.

A *type* ``(i, j, k, l)`` with ``i != k`` and ``j != l`` stands for the
rectangles ``[theta'; theta''] x [phi'; phi'']`` whose corners sit in the
gaps ``(i; i+1)``, ``(j; j+1)``, ``(k; k+1)``, ``(l; l+1)``.  Such a
rectangle covers the grid columns ``i+1, ..., k`` and rows
``j+1, ..., l`` (cyclically); the type is admissible when none of these
cells holds a vertex.

Each closed surface built from rectangles of maximal types gives a
non-negative integer solution of the matching system: at every gap
corner ``(i, j)`` the rectangles with a lower-left corner there are as
many as those with an upper-right corner there, and likewise for
upper-left against lower-right corners.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .grid import GridDiagram, UnorientedGridDiagram


class DimensionUnsupported(ValueError):
    """Ray enumeration is implemented for kernels of dimension at most three."""


def _as_unoriented(R) -> UnorientedGridDiagram:
    return R.unoriented() if isinstance(R, GridDiagram) else R


def admissibility(R) -> np.ndarray:
    """Boolean array ``adm[i, j, L, M]``: the type ``(i, j, i+L, j+M)`` is admissible.

    Entries with ``L == 0`` or ``M == 0`` are ``False``.
    """
    R = _as_unoriented(R)
    n = R.n
    cells = np.zeros((n, n), dtype=np.int32)
    for c, r in R.vertices:
        cells[c, r] = 1
    tiled = np.tile(cells, (2, 2))
    P = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int32)
    P[1:, 1:] = tiled.cumsum(0).cumsum(1)
    a0 = (np.arange(n) + 1)[:, None, None, None]
    b0 = (np.arange(n) + 1)[None, :, None, None]
    L = np.arange(n)[None, None, :, None]
    M = np.arange(n)[None, None, None, :]
    count = P[a0 + L, b0 + M] - P[a0, b0 + M] - P[a0 + L, b0] + P[a0, b0]
    adm = count == 0
    adm[:, :, 0, :] = False
    adm[:, :, :, 0] = False
    return adm


def maximal_types(R) -> list[tuple[int, int, int, int]]:
    """All maximal types ``(i, j, k, l)`` of an (unoriented) diagram, sorted."""
    R = _as_unoriented(R)
    n = R.n
    if n < 2:
        return []
    adm = admissibility(R)
    pad = np.zeros((n, n, n + 1, n + 1), dtype=bool)
    pad[:, :, :n, :n] = adm
    grow_k = pad[:, :, 1:, :n]                    # (i, j, k+1, l)
    grow_l = pad[:, :, :n, 1:]                    # (i, j, k, l+1)
    grow_i = np.roll(pad, 1, axis=0)[:, :, 1:, :n]  # (i-1, j, k, l): start i-1, length L+1
    grow_j = np.roll(pad, 1, axis=1)[:, :, :n, 1:]  # (i, j-1, k, l)
    maximal = adm & ~grow_k & ~grow_l & ~grow_i & ~grow_j
    i, j, L, M = np.nonzero(maximal)
    types = sorted(zip(i.tolist(), j.tolist(), ((i + L) % n).tolist(), ((j + M) % n).tolist()))
    return types


def is_admissible(R, t: tuple[int, int, int, int]) -> bool:
    """Direct (non-vectorized) admissibility test of one type."""
    R = _as_unoriented(R)
    n = R.n
    i, j, k, l = (x % n for x in t)
    if i == k or j == l:
        return False
    cols = {(i + 1 + s) % n for s in range((k - i) % n)}
    rows = {(j + 1 + s) % n for s in range((l - j) % n)}
    return not any(c in cols and r in rows for c, r in R.vertices)


@dataclass
class SparseIntMatrix:
    """Integer matrix in coordinate form."""

    shape: tuple[int, int]
    entries: dict = field(default_factory=dict)  # (row, col) -> int

    def to_dense(self) -> np.ndarray:
        a = np.zeros(self.shape, dtype=np.int64)
        for (r, c), v in self.entries.items():
            a[r, c] = v
        return a

    def rows(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [dict() for _ in range(self.shape[0])]
        for (r, c), v in self.entries.items():
            if v:
                out[r][c] = v
        return out


def matching_system(types: Sequence[tuple[int, int, int, int]], n: int | None = None) -> SparseIntMatrix:
    """Matching equations over the gap corners ``(i, j)`` of the grid.

    Two rectangles sharing a vertex meet at opposite corners.  Rows
    ``i * n + j`` balance lower-left against upper-right corners at
    ``(i, j)``; rows ``n * n + i * n + j`` balance upper-left against
    lower-right corners.  Every variable has one ``+1`` and one ``-1`` in
    each family.
    """
    if n is None:
        n = max(max(t) for t in types) + 1 if types else 0
    ent: dict[tuple[int, int], int] = {}

    def add(row, col, v):
        ent[(row, col)] = ent.get((row, col), 0) + v

    for v, (i, j, k, l) in enumerate(types):
        add(i * n + j, v, 1)
        add(k * n + l, v, -1)
        add(n * n + i * n + l, v, 1)
        add(n * n + k * n + j, v, -1)
    return SparseIntMatrix((2 * n * n, len(types)), ent)


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def rank_kernel(mat: SparseIntMatrix | np.ndarray):
    """Exact rank and an integer kernel basis by sparse Gauss-Jordan elimination over Q."""
    if isinstance(mat, np.ndarray):
        nrows, ncols = mat.shape
        rows = [{c: Fraction(int(v)) for c, v in enumerate(r) if v} for r in mat.tolist()]
    else:
        nrows, ncols = mat.shape
        rows = [{c: Fraction(v) for c, v in r.items()} for r in mat.rows()]
    rows = [r for r in rows if r]
    pivots: dict[int, dict[int, Fraction]] = {}  # pivot column -> normalized row
    col_index: dict[int, set[int]] = {}
    live = {idx: r for idx, r in enumerate(rows)}
    for idx, r in live.items():
        for c in r:
            col_index.setdefault(c, set()).add(idx)
    for c in range(ncols):
        cand = [idx for idx in col_index.get(c, ()) if idx in live and c in live[idx]]
        if not cand:
            continue
        piv = min(cand, key=lambda x: (len(live[x]), x))
        prow = live.pop(piv)
        pv = prow[c]
        prow = {k: v / pv for k, v in prow.items()}
        targets = [idx for idx in col_index.get(c, ()) if idx in live and c in live[idx]]
        targets_p = [pc for pc, r in pivots.items() if c in r]
        for idx in targets:
            r = live[idx]
            f = r[c]
            for k, v in prow.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    if k not in r:
                        col_index.setdefault(k, set()).add(idx)
                    r[k] = nv
                else:
                    r.pop(k, None)
            if not r:
                del live[idx]
        for pc in targets_p:
            r = pivots[pc]
            f = r[c]
            for k, v in prow.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        pivots[c] = prow
    rank = len(pivots)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for pc, r in pivots.items():
            if fcol in r:
                vec[pc] = -r[fcol]
        basis.append(_primitive(vec))
    return rank, basis


def nonneg_rays(basis: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the cone ``{x in span(basis) : x >= 0}`` as primitive integer vectors."""
    dim = len(basis)
    if dim > 3:
        raise DimensionUnsupported(f"kernel dimension {dim} > 3")
    if dim == 0:
        return []
    B = [list(map(int, b)) for b in basis]
    nvar = len(B[0])
    normals = {tuple(B[d][i] for d in range(dim)) for i in range(nvar)}
    normals = [v for v in normals if any(v)]

    def vec(coef):
        return tuple(sum(coef[d] * B[d][i] for d in range(dim)) for i in range(nvar))

    cands = []
    if dim == 1:
        cands = [(1,), (-1,)]
    elif dim == 2:
        for a, b in normals:
            cands += [(b, -a), (-b, a)]
    else:
        for u, w in combinations(normals, 2):
            cr = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
            if any(cr):
                cands += [cr, tuple(-x for x in cr)]
    rays = set()
    for coef in cands:
        x = vec(coef)
        if any(x) and all(v >= 0 for v in x):
            g = 0
            for v in x:
                g = math.gcd(g, v)
            rays.add(tuple(v // g for v in x))
    return sorted(rays)


@dataclass
class Certificate:
    n_maximal: int
    rank: int
    kernel_dim: int
    nonneg_rays: list
    conclusion: str
    types: list = field(default_factory=list)
    n_equations: int = 0

    def to_json(self, with_types: bool = False) -> dict:
        d = {"n_maximal": self.n_maximal, "n_equations": self.n_equations, "rank": self.rank,
             "kernel_dim": self.kernel_dim, "n_rays": len(self.nonneg_rays),
             "rays": [list(r) for r in self.nonneg_rays], "conclusion": self.conclusion}
        if with_types:
            d["types"] = [list(t) for t in self.types]
        return d


def certify(R) -> Certificate:
    """Maximal types, matching rank and non-negative solution rays for ``R``."""
    R = _as_unoriented(R)
    types = maximal_types(R)
    mat = matching_system(types, R.n)
    rank, basis = rank_kernel(mat) if types else (0, [])
    rays = nonneg_rays(basis)
    if not rays:
        concl = "NoEssentialTorusCandidates"
    elif len(rays) == 1:
        concl = "SingleRay"
    else:
        concl = "MultiRay"
    return Certificate(len(types), rank, len(basis), rays, concl, types, mat.shape[0])
