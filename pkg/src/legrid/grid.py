"""Rectangular (grid) diagrams of knots and links.

A diagram lives on an ``n x n`` toroidal grid.  Every occupied column
(meridian) and row (longitude) carries exactly two vertices; in the
oriented case they carry opposite signs.  Vertical edges run from the
``+`` vertex to the ``-`` vertex, horizontal edges from ``-`` to ``+``,
so ``+`` is the tail of the vertical edge through it (the ``X`` marking
of grid-diagram literature).

All diagrams are immutable.  Coordinates are compacted integers mod
``n``; only the cyclic order of levels matters.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

PLUS = 1
MINUS = -1


class GridError(ValueError):
    """Raised for malformed diagram input."""


class LineCardinality(GridError):
    """A column or row holds a number of vertices other than 0 or 2."""


class SignClash(GridError):
    """Two vertices on one line carry the same sign."""


class Disconnected(GridError):
    """A knot was requested but the diagram has several components."""


def _parse_sign(s) -> int:
    if s in ("+", 1, "1", "+1", True):
        return PLUS
    if s in ("-", -1, "-1", "−"):
        return MINUS
    raise GridError(f"unrecognised sign {s!r}")


def _compaction(values: Iterable[int]) -> dict[int, int]:
    return {v: i for i, v in enumerate(sorted(set(values)))}


def _partners(points: Sequence[tuple[int, int]], n: int):
    col_rows: list[list[int]] = [[] for _ in range(n)]
    row_cols: list[list[int]] = [[] for _ in range(n)]
    for c, r in points:
        col_rows[c].append(r)
        row_cols[r].append(c)
    for idx, lines in (("column", col_rows), ("row", row_cols)):
        for k, line in enumerate(lines):
            if len(line) != 2:
                raise LineCardinality(f"{idx} {k} holds {len(line)} vertices")
    return tuple(tuple(x) for x in col_rows), tuple(tuple(x) for x in row_cols)


def _components(points: Sequence[tuple[int, int]], col_rows, row_cols):
    seen: set[tuple[int, int]] = set()
    comps = []
    for start in sorted(points):
        if start in seen:
            continue
        comp = []
        v = start
        vertical = True
        while v not in seen:
            seen.add(v)
            comp.append(v)
            c, r = v
            if vertical:
                a, b = col_rows[c]
                v = (c, b if a == r else a)
            else:
                a, b = row_cols[r]
                v = (b if a == c else a, r)
            vertical = not vertical
        comps.append(tuple(comp))
    return tuple(comps)


class _Base:
    n: int

    @property
    def points(self) -> tuple[tuple[int, int], ...]:
        raise NotImplementedError

    @cached_property
    def _lines(self):
        return _partners(self.points, self.n)

    @property
    def col_rows(self) -> tuple[tuple[int, int], ...]:
        """For every column, the rows of its two vertices."""
        return self._lines[0]

    @property
    def row_cols(self) -> tuple[tuple[int, int], ...]:
        """For every row, the columns of its two vertices."""
        return self._lines[1]

    @cached_property
    def components(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Vertex cycles, each starting with a vertical edge."""
        return _components(self.points, self.col_rows, self.row_cols)

    @property
    def is_knot(self) -> bool:
        return len(self.components) == 1

    def col_partner(self, c: int, r: int) -> int:
        a, b = self.col_rows[c]
        return b if a == r else a

    def row_partner(self, c: int, r: int) -> int:
        a, b = self.row_cols[r]
        return b if a == c else a


@dataclass(frozen=True)
class GridDiagram(_Base):
    """Oriented rectangular diagram.

    ``vertices`` is a sorted tuple of ``(col, row, sign)`` with sign
    ``+1``/``-1``.  Construct through :func:`validate` unless the input is
    already normalized.
    """

    n: int
    vertices: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        if len(self.vertices) != 2 * self.n:
            raise LineCardinality(f"{len(self.vertices)} vertices on an {self.n}-grid")
        signs = self.signs
        for lines, coord in ((self.col_rows, "column"), (self.row_cols, "row")):
            for k, (a, b) in enumerate(lines):
                pa, pb = ((k, a), (k, b)) if coord == "column" else ((a, k), (b, k))
                if signs[pa] == signs[pb]:
                    raise SignClash(f"{coord} {k}: both vertices signed {signs[pa]:+d}")

    @cached_property
    def points(self) -> tuple[tuple[int, int], ...]:
        return tuple((c, r) for c, r, _ in self.vertices)

    @cached_property
    def signs(self) -> dict[tuple[int, int], int]:
        return {(c, r): s for c, r, s in self.vertices}

    def sign(self, c: int, r: int) -> int:
        return self.signs[(c, r)]

    def unoriented(self) -> "UnorientedGridDiagram":
        return UnorientedGridDiagram(self.n, self.points)

    def cells(self) -> np.ndarray:
        """``n x n`` int8 array indexed ``[row, col]``: 0 empty, 1 plus, 2 minus."""
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for c, r, s in self.vertices:
            a[r, c] = 1 if s == PLUS else 2
        return a

    def traversal(self) -> tuple[tuple[int, int], ...]:
        """Vertices of a knot in orientation order, starting at the smallest ``+`` vertex.

        Consecutive pairs alternate: vertical edge (``+`` to ``-``), then
        horizontal edge (``-`` to ``+``).
        """
        if not self.is_knot:
            raise Disconnected("traversal is defined for knots only")
        start = min(p for p in self.points if self.signs[p] == PLUS)
        out = [start]
        c, r = start
        for k in range(2 * self.n - 1):
            if k % 2 == 0:
                r = self.col_partner(c, r)
            else:
                c = self.row_partner(c, r)
            out.append((c, r))
        return tuple(out)

    def __repr__(self):
        vs = ", ".join(f"({c},{r},{'+' if s > 0 else '-'})" for c, r, s in self.vertices)
        return f"GridDiagram(n={self.n}, [{vs}])"


@dataclass(frozen=True)
class UnorientedGridDiagram(_Base):
    """Rectangular diagram without vertex signs."""

    n: int
    vertices: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        if len(self.vertices) != 2 * self.n:
            raise LineCardinality(f"{len(self.vertices)} vertices on an {self.n}-grid")
        _ = self._lines

    @property
    def points(self) -> tuple[tuple[int, int], ...]:
        return self.vertices

    def cells(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for c, r in self.vertices:
            a[r, c] = 1
        return a

    def orient(self, choice: int = 0) -> GridDiagram:
        """Assign signs consistently on every component.

        Each component starts at its smallest vertex, which gets ``+``
        under ``choice=0`` and ``-`` under ``choice=1``.
        """
        signs = {}
        first = PLUS if choice == 0 else MINUS
        for comp in self.components:
            for k, p in enumerate(comp):
                signs[p] = first if k % 2 == 0 else -first
        return GridDiagram(self.n, tuple((c, r, signs[(c, r)]) for c, r in self.vertices))

    def __repr__(self):
        return f"UnorientedGridDiagram(n={self.n}, {list(self.vertices)})"


def validate(raw, n: int | None = None, *, require_knot: bool = False) -> GridDiagram:
    """Build a normalized :class:`GridDiagram` from signed ``(col, row, sign)`` triples.

    Empty levels are removed and coordinates compacted to ``0..n-1``.
    ``n``, if given, is the declared grid size of the raw coordinates
    (coordinates are reduced mod ``n`` first).
    """
    pts: dict[tuple[int, int], int] = {}
    for item in raw:
        c, r, s = item
        c, r = int(c), int(r)
        if n is not None:
            c, r = c % n, r % n
        if (c, r) in pts:
            raise LineCardinality(f"vertex ({c},{r}) listed twice")
        pts[(c, r)] = _parse_sign(s)
    cmap = _compaction(c for c, _ in pts)
    rmap = _compaction(r for _, r in pts)
    if len(cmap) != len(rmap):
        raise LineCardinality(f"{len(cmap)} occupied columns but {len(rmap)} occupied rows")
    g = GridDiagram(len(cmap), tuple((cmap[c], rmap[r], s) for (c, r), s in pts.items()))
    if require_knot and not g.is_knot:
        raise Disconnected(f"diagram has {len(g.components)} components")
    return g


def validate_unoriented(raw, n: int | None = None, *, require_knot: bool = False) -> UnorientedGridDiagram:
    pts = set()
    for c, r in raw:
        c, r = int(c), int(r)
        if n is not None:
            c, r = c % n, r % n
        if (c, r) in pts:
            raise LineCardinality(f"vertex ({c},{r}) listed twice")
        pts.add((c, r))
    cmap = _compaction(c for c, _ in pts)
    rmap = _compaction(r for _, r in pts)
    if len(cmap) != len(rmap):
        raise LineCardinality(f"{len(cmap)} occupied columns but {len(rmap)} occupied rows")
    g = UnorientedGridDiagram(len(cmap), tuple((cmap[c], rmap[r]) for c, r in pts))
    if require_knot and not g.is_knot:
        raise Disconnected(f"diagram has {len(g.components)} components")
    return g


def from_permutations(xs: Sequence[int], os: Sequence[int]) -> GridDiagram:
    """Diagram whose column ``i`` has ``+`` at row ``xs[i]`` and ``-`` at row ``os[i]``."""
    if len(xs) != len(os):
        raise GridError("X and O lists differ in length")
    verts = [(i, x, PLUS) for i, x in enumerate(xs)] + [(i, o, MINUS) for i, o in enumerate(os)]
    return validate(verts)


def to_permutations(g: GridDiagram) -> tuple[list[int], list[int]]:
    xs, os = [0] * g.n, [0] * g.n
    for c, r, s in g.vertices:
        (xs if s == PLUS else os)[c] = r
    return xs, os


# --- combinatorial equivalence ------------------------------------------------

def _lexmin_rows(rows: np.ndarray) -> np.ndarray:
    cand = np.arange(rows.shape[0])
    for j in range(rows.shape[1]):
        col = rows[cand, j]
        m = col.min()
        cand = cand[col == m]
        if cand.size == 1:
            break
    return rows[cand[0]]


def canonical_form(g: GridDiagram | UnorientedGridDiagram) -> bytes:
    """Key identifying ``g`` up to cyclic shifts of rows and columns.

    The key is the row-major cell string (0 empty, 1 ``+``, 2 ``-``)
    minimised lexicographically over all ``n**2`` translations, prefixed
    by the orientation flag and ``n``.
    """
    n = g.n
    a = g.cells()
    shifts = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n  # [shift, pos]
    allv = a[shifts[:, None, :, None], shifts[None, :, None, :]]  # [dr, dc, r, c]
    best = _lexmin_rows(allv.reshape(n * n, n * n))
    tag = b"O" if isinstance(g, GridDiagram) else b"U"
    return tag + n.to_bytes(4, "big") + best.tobytes()


def equivalent(g1, g2) -> bool:
    """True iff the diagrams are combinatorially equivalent (translation classes agree)."""
    if type(g1) is not type(g2) or g1.n != g2.n:
        return False
    return canonical_form(g1) == canonical_form(g2)


def from_key(key: bytes) -> GridDiagram | UnorientedGridDiagram:
    """Inverse of :func:`canonical_form` (returns the minimal translate)."""
    n = int.from_bytes(key[1:5], "big")
    cells = np.frombuffer(key[5:], dtype=np.int8).reshape(n, n)
    rs, cs = np.nonzero(cells)
    if key[:1] == b"U":
        return UnorientedGridDiagram(n, tuple(zip(cs.tolist(), rs.tolist())))
    return GridDiagram(n, tuple((int(c), int(r), PLUS if cells[r, c] == 1 else MINUS)
                                for r, c in zip(rs, cs)))


def translate(g, dc: int, dr: int):
    n = g.n
    if isinstance(g, GridDiagram):
        return GridDiagram(n, tuple(((c + dc) % n, (r + dr) % n, s) for c, r, s in g.vertices))
    return UnorientedGridDiagram(n, tuple(((c + dc) % n, (r + dr) % n) for c, r in g.vertices))


SYMMETRIES = ("reverse", "hflip", "vflip", "mirror")


def symmetry(g, which: str):
    """Apply a grid symmetry.

    ``reverse``  orientation reversal (all signs flipped);
    ``hflip``    horizontal flip ``col -> -col`` (the reflection written r_|);
    ``vflip``    vertical flip ``row -> -row`` (r_-);
    ``mirror``   Legendrian mirror, rotation by pi (``hflip`` after ``vflip``).

    The edge orientation rules do not refer to left/right or up/down, so
    the flips keep vertex signs and carry the knot orientation along.
    """
    n = g.n
    oriented = isinstance(g, GridDiagram)
    if which == "reverse":
        if not oriented:
            raise GridError("reverse needs an oriented diagram")
        return GridDiagram(n, tuple((c, r, -s) for c, r, s in g.vertices))
    fc = (lambda c: (-c - 1) % n) if which in ("hflip", "mirror") else (lambda c: c)
    fr = (lambda r: (-r - 1) % n) if which in ("vflip", "mirror") else (lambda r: r)
    if which not in SYMMETRIES:
        raise GridError(f"unknown symmetry {which!r}")
    if oriented:
        return GridDiagram(n, tuple((fc(c), fr(r), s) for c, r, s in g.vertices))
    return UnorientedGridDiagram(n, tuple((fc(c), fr(r)) for c, r in g.vertices))


# --- standard small diagrams ---------------------------------------------------

def unknot(n: int = 2) -> GridDiagram:
    """Staircase unknot on an ``n``-grid (``n = 2`` is the smallest diagram)."""
    if n == 2:
        return validate([(0, 0, "+"), (0, 1, "-"), (1, 0, "-"), (1, 1, "+")])
    return from_permutations(list(range(n)), [(i + 1) % n for i in range(n)])


def torus_knot_grid(p: int, q: int) -> GridDiagram:
    """Grid diagram of the ``(p, q)`` torus knot/link on a ``(p + q)``-grid."""
    n = p + q
    return from_permutations(list(range(n)), [(i + p) % n for i in range(n)])


def trefoil() -> GridDiagram:
    """A 5x5 positive trefoil diagram whose ``+`` front has ``tb = 1``."""
    return symmetry(torus_knot_grid(2, 3), "hflip")
