"""Elementary moves of rectangular diagrams.

Moves are described on a *doubled* circle: the levels of an ``n``-grid
sit at even positions ``0, 2, ..., 2n-2`` and the gap following level
``i`` is position ``2i + 1``.  New levels introduced by a move live in
gaps, so a move is the symmetric difference of the diagram with the
corner set ``{theta1, theta2} x {phi1, phi2}`` of a rectangle on this
doubled circle.  Results are compacted back to an ordinary grid.

An independent checker, :func:`check_move`, re-derives legality and the
(oriented) type of every move from the source and target vertex sets.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

from .grid import GridDiagram, GridError, canonical_form, validate

EXCHANGE = "exchange"
STAB = "stabilization"
DESTAB = "destabilization"


class IllegalMove(GridError):
    """A proposed move violates the elementary-move conditions."""


@dataclass(frozen=True)
class ElementaryMove:
    """A single elementary move.

    ``corners`` is ``(theta1, theta2, phi1, phi2)`` on the doubled circle
    of the source diagram (size ``2n``); the move's rectangle is
    ``[theta1; theta2] x [phi1; phi2]``.
    """

    corners: tuple[int, int, int, int]
    kind: str
    stab_type: str | None = None
    oriented_type: str | None = None

    def describe(self) -> str:
        t1, t2, p1, p2 = self.corners
        s = f"{self.kind} [{t1};{t2}]x[{p1};{p2}]"
        if self.oriented_type:
            s += f" ({self.oriented_type})"
        return s


# --- cyclic helpers -------------------------------------------------------------

def in_arc(p: int, a: int, b: int, m: int) -> bool:
    """Whether ``p`` lies on the closed arc from ``a`` to ``b`` of a circle of size ``m``."""
    return (p - a) % m <= (b - a) % m


def _compact(points: dict[tuple[int, int], int]) -> GridDiagram:
    return validate([(c, r, s) for (c, r), s in points.items()])


def doubled(g: GridDiagram) -> dict[tuple[int, int], int]:
    return {(2 * c, 2 * r): s for c, r, s in g.vertices}


# --- independent checker --------------------------------------------------------

def _line_ok(pts: dict[tuple[int, int], int]) -> bool:
    cols: dict[int, list[int]] = {}
    rows: dict[int, list[int]] = {}
    for (c, r), s in pts.items():
        cols.setdefault(c, []).append(s)
        rows.setdefault(r, []).append(s)
    return all(len(v) == 2 and v[0] != v[1] for v in (*cols.values(), *rows.values()))


def check_move(src: dict[tuple[int, int], int], dst: dict[tuple[int, int], int],
               size: int) -> ElementaryMove:
    """Verify that ``src -> dst`` is an elementary move and classify it.

    Both arguments map points of a ``size x size`` torus grid to signs.
    Raises :class:`IllegalMove` naming the first violated condition.
    """
    if not (_line_ok(src) and _line_ok(dst)):
        raise IllegalMove("source or target is not an oriented rectangular diagram")
    s1, s2 = set(src), set(dst)
    delta = s1 ^ s2
    thetas = sorted({c for c, _ in delta})
    phis = sorted({r for _, r in delta})
    # (1), (2)
    if len(thetas) != 2 or len(phis) != 2 or delta != set(product(thetas, phis)):
        raise IllegalMove("symmetric difference is not the corner set of a rectangle")
    # (3)
    has_edge = False
    for part in (s1 & delta, s2 & delta):
        for a in part:
            for b in part:
                if a < b and (a[0] == b[0] or a[1] == b[1]):
                    has_edge = True
    if not has_edge:
        raise IllegalMove("symmetric difference contains no edge")
    # (4)
    if s1 <= s2 or s2 <= s1:
        raise IllegalMove("one diagram contains the other")
    # (6)
    for v in s1 & s2:
        if src[v] != dst[v]:
            raise IllegalMove(f"vertex {v} changes sign")
    # (5): some labeling of the corners bounds an otherwise empty rectangle
    union = s1 | s2
    legal = []
    for t1, t2 in (thetas, thetas[::-1]):
        for p1, p2 in (phis, phis[::-1]):
            inside = {(c, r) for c, r in union
                      if in_arc(c, t1, t2, size) and in_arc(r, p1, p2, size)}
            if inside == delta:
                legal.append((t1, t2, p1, p2))
    if not legal:
        raise IllegalMove("rectangle meets the diagrams away from its corners")

    if len(s1) == len(s2):
        return ElementaryMove(legal[0], EXCHANGE)
    if len(s2) == len(s1) + 2:
        kind, small, big = STAB, s1, (s2, dst)
    elif len(s1) == len(s2) + 2:
        kind, small, big = DESTAB, s2, (s1, src)
    else:  # pragma: no cover - excluded by (2)
        raise IllegalMove("vertex counts differ by more than two")
    found = set()
    for t1, t2, p1, p2 in legal:
        (v,) = small & delta
        if v in ((t1, p1), (t2, p2)):
            st = "I"
        elif v in ((t1, p2), (t2, p1)):
            st = "II"
        else:  # pragma: no cover
            raise IllegalMove("inconsistent corner membership")
        bigset, bigsigns = big
        (phi0,) = [p for p in (p1, p2) if (t1, p) in bigset and (t2, p) in bigset]
        arrow = "→" if bigsigns[(t2, phi0)] > 0 else "←"
        found.add(((t1, t2, p1, p2), st, arrow + st))
    types = {(a, b) for _, a, b in found}
    if len(types) != 1:
        raise IllegalMove(f"ambiguous stabilization type {sorted(types)}")
    corners, st, ot = min(found)
    return ElementaryMove(corners, kind, st, ot)


# --- application ----------------------------------------------------------------

def _infer_signs(known: dict[tuple[int, int], int], fresh: set[tuple[int, int]]):
    pts = dict(known)
    todo = set(fresh)
    allp = set(known) | todo
    while todo:
        progress = False
        for p in sorted(todo):
            for q in allp:
                if q != p and (q[0] == p[0] or q[1] == p[1]) and q in pts:
                    pts[p] = -pts[q]
                    todo.discard(p)
                    progress = True
                    break
        if not progress:
            raise IllegalMove("cannot assign signs to new vertices")
    return pts


def apply_move_raw(src: dict[tuple[int, int], int], corners, size: int):
    """Apply a move on a doubled grid; returns the target point->sign map."""
    t1, t2, p1, p2 = corners
    box = {(t, p) for t in (t1, t2) for p in (p1, p2)}
    keep = {v: s for v, s in src.items() if v not in box}
    fresh = box - set(src)
    return _infer_signs(keep, fresh)


def apply_move(g: GridDiagram, m: ElementaryMove) -> GridDiagram:
    """Apply ``m`` to ``g`` after re-verifying it with :func:`check_move`."""
    size = 2 * g.n
    src = doubled(g)
    corners = tuple(x % size for x in m.corners)
    dst = apply_move_raw(src, corners, size)
    chk = check_move(src, dst, size)
    if chk.kind != m.kind or chk.oriented_type != m.oriented_type:
        raise IllegalMove(f"move classifies as {chk.kind}/{chk.oriented_type}, "
                          f"not {m.kind}/{m.oriented_type}")
    return _compact(dst)


# --- enumeration ----------------------------------------------------------------

def _line_moves(lines, n: int):
    """Legal relocations of a line (column, by default) into a gap.

    ``lines[c]`` holds the two cross-coordinates on line ``c``.  Yields
    ``(c, gap, rectangle)`` with the rectangle in doubled coordinates
    ``(a1, a2, b1, b2)`` along and across the lines.
    """
    m = 2 * n
    for c in range(n):
        a, b = lines[c]
        for j in range(n):
            if j == c or j == (c - 1) % n:
                continue
            gap = 2 * j + 1
            for arc in ((a, b), (b, a)):
                lo, hi = 2 * arc[0], 2 * arc[1]
                found = None
                # move forward: passes lines c+1 .. j
                passed = [(c + k) % n for k in range(1, (j - c) % n + 1)]
                if all(not in_arc(2 * x, lo, hi, m) for d in passed for x in lines[d]):
                    found = (2 * c, gap, lo, hi)
                else:
                    passed = [(j + k) % n for k in range(1, (c - j) % n)]
                    if all(not in_arc(2 * x, lo, hi, m) for d in passed for x in lines[d]):
                        found = (gap, 2 * c, lo, hi)
                if found:
                    yield c, gap, found
                    break


def exchange_moves(g: GridDiagram) -> list[ElementaryMove]:
    """All exchange moves of ``g``, one per (line, target gap) pair."""
    out = []
    for _, _, (t1, t2, p1, p2) in _line_moves(g.col_rows, g.n):
        out.append(ElementaryMove((t1, t2, p1, p2), EXCHANGE))
    for _, _, (p1, p2, t1, t2) in _line_moves(g.row_cols, g.n):
        out.append(ElementaryMove((t1, t2, p1, p2), EXCHANGE))
    return out


def _stab_class(g: GridDiagram, c: int, r: int, dx: int, dy: int):
    s = g.sign(c, r)
    tv, pv = 2 * c, 2 * r
    tn, pn = (tv + dx) % (2 * g.n), (pv + dy) % (2 * g.n)
    t1, t2 = (tv, tn) if dx > 0 else (tn, tv)
    p1, p2 = (pv, pn) if dy > 0 else (pn, pv)
    st = "I" if dx == dy else "II"
    sign_t2_phi0 = -s if dx > 0 else s
    return ElementaryMove((t1, t2, p1, p2), STAB, st, ("→" if sign_t2_phi0 > 0 else "←") + st)


def stabilizations(g: GridDiagram) -> list[ElementaryMove]:
    """Stabilizations at every vertex, new levels adjacent to the vertex's levels."""
    return [_stab_class(g, c, r, dx, dy)
            for c, r, _ in g.vertices for dx in (1, -1) for dy in (1, -1)]


def destabilizations(g: GridDiagram) -> list[ElementaryMove]:
    out = []
    if g.n <= 2:
        return out
    pts = g.signs
    size = 2 * g.n
    for x, y, s in g.vertices:
        y2 = g.col_partner(x, y)
        x2 = g.row_partner(x, y)
        if (x2, y2) in pts:
            continue
        src = doubled(g)
        box = {(2 * a, 2 * b) for a in (x, x2) for b in (y, y2)}
        dst = {v: t for v, t in src.items() if v not in box}
        dst[(2 * x2, 2 * y2)] = -s
        try:
            mv = check_move(src, dst, size)
        except IllegalMove:
            continue
        out.append(mv)
    return out


def enumerate_moves(g: GridDiagram, kinds: Iterable[str] = (EXCHANGE, STAB, DESTAB)):
    """All elementary moves from ``g`` with their (compacted) results."""
    kinds = set(kinds)
    moves: list[ElementaryMove] = []
    if EXCHANGE in kinds:
        moves += exchange_moves(g)
    if STAB in kinds:
        moves += stabilizations(g)
    if DESTAB in kinds:
        moves += destabilizations(g)
    return [(m, apply_move(g, m)) for m in moves]


def exchange_neighbors(g: GridDiagram) -> list[GridDiagram]:
    """Results of all exchange moves (unchecked fast path)."""
    out = []
    src = doubled(g)
    m = 2 * g.n
    for mv in exchange_moves(g):
        out.append(_compact(apply_move_raw(src, mv.corners, m)))
    return out


# --- exchange classes -------------------------------------------------------------

@dataclass
class ExchangeClass:
    members: frozenset
    representative: GridDiagram
    complete: bool

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        key = g if isinstance(g, bytes) else canonical_form(g)
        return key in self.members


def _bfs(seed: GridDiagram, budget: int | None, order: Callable | None = None,
         neighbors=exchange_neighbors):
    start = canonical_form(seed)
    seen = {start}
    queue = deque([seed])
    complete = True
    while queue:
        g = queue.popleft()
        nbrs = [(canonical_form(h), h) for h in neighbors(g)]
        nbrs.sort(key=order or (lambda kh: kh[0]))
        for k, h in nbrs:
            if k in seen:
                continue
            if budget is not None and len(seen) >= budget:
                complete = False
                queue.clear()
                break
            seen.add(k)
            queue.append(h)
    return seen, complete


def exchange_class(g: GridDiagram, budget: int | None = 100_000, order=None) -> ExchangeClass:
    """Breadth-first closure of ``g`` under exchange moves, deduplicated by canonical key."""
    members, complete = _bfs(g, budget, order)
    return ExchangeClass(frozenset(members), g, complete)


def is_rigid(g: GridDiagram) -> bool:
    """True iff no exchange move changes the combinatorial type of ``g``."""
    key = canonical_form(g)
    return all(canonical_form(h) == key for h in exchange_neighbors(g))


class Outcome(enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    outcome: Outcome
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.outcome is Outcome.EQUIVALENT

    def to_json(self):
        w = self.witness
        if isinstance(w, (list, tuple)):
            w = [x.describe() if isinstance(x, ElementaryMove) else str(x) for x in w]
        elif w is not None:
            w = str(w)
        return {"outcome": self.outcome.value, "reason": self.reason, "witness": w}


def exchange_equivalent(g1: GridDiagram, g2: GridDiagram, budget: int = 100_000) -> Verdict:
    """Bidirectional BFS over exchange moves.

    ``budget`` bounds the total number of diagrams visited on both sides.
    """
    if g1.n != g2.n:
        return Verdict(Outcome.NOT_EQUIVALENT, reason="exchange moves preserve the grid size")
    k1, k2 = canonical_form(g1), canonical_form(g2)
    if k1 == k2:
        return Verdict(Outcome.EQUIVALENT, reason="identical canonical keys")
    sides = [({k1: None}, deque([g1]), True), ({k2: None}, deque([g2]), True)]
    seen = [sides[0][0], sides[1][0]]
    queues = [sides[0][1], sides[1][1]]
    total = 2
    while True:
        if budget is not None and total >= budget:
            return Verdict(Outcome.UNKNOWN, reason=f"budget of {budget} diagrams exhausted")
        for i in (0, 1):
            if not queues[i]:
                return Verdict(Outcome.NOT_EQUIVALENT,
                               witness=len(seen[i]),
                               reason=f"exchange class of diagram {i + 1} is complete "
                                      f"({len(seen[i])} members) and misses the other")
        i = 0 if len(queues[0]) <= len(queues[1]) else 1
        g = queues[i].popleft()
        for h in exchange_neighbors(g):
            k = canonical_form(h)
            if k in seen[1 - i]:
                return Verdict(Outcome.EQUIVALENT, witness=total,
                               reason="exchange classes meet")
            if k not in seen[i]:
                if budget is not None and total >= budget:
                    return Verdict(Outcome.UNKNOWN, reason=f"budget of {budget} diagrams exhausted")
                seen[i][k] = None
                queues[i].append(h)
                total += 1
