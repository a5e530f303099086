"""Rectangular diagrams of surfaces.

A rectangle ``(t1, t2, p1, p2)`` on an ``m x m`` torus grid is the closed
set ``[t1; t2] x [p1; p2]`` where ``[a; b]`` is the arc running in the
positive direction from ``a`` to ``b``.  A surface diagram is a set of
pairwise compatible rectangles with at most two free vertices (vertices
of exactly one rectangle) on every meridian and longitude; its free
vertices form an unoriented rectangular diagram of a link.

The module also holds the dividing code (the two shared-corner
relations), the special surface spanning a given diagram, and the move
sequence sliding one boundary component of a staircase annulus onto the
other.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism

from .grid import GridDiagram, UnorientedGridDiagram, validate, validate_unoriented
from .moves import DESTAB, EXCHANGE, STAB, ElementaryMove, IllegalMove, check_move

Rect = tuple[int, int, int, int]

UDOT = "udotdot"  # r1 = [t1;t2]x[p1;p2], r2 = [t2;t3]x[p2;p3]
DDOT = "ddotdot"  # r1 = [t1;t2]x[p2;p3], r2 = [t2;t3]x[p1;p2]

REFINE = 7


class SurfaceError(ValueError):
    """Base class for surface diagram errors."""


class IncompatiblePair(SurfaceError):
    """Two rectangles intersect in a forbidden way."""


class FreeVertexOverflow(SurfaceError):
    """A meridian or longitude carries more than two free vertices."""


class NotStaircase(SurfaceError):
    """The diagram is not a cyclic staircase of rectangles."""


# --- geometry of closed arcs and rectangles ----------------------------------------

def _arc_atoms(a: int, b: int, m: int) -> np.ndarray:
    """Closed arc ``[a; b]`` as a boolean mask over the ``2m`` atoms of the circle.

    Atom ``2k`` is the point ``k``, atom ``2k + 1`` the open unit interval ``(k, k+1)``.
    """
    mask = np.zeros(2 * m, dtype=bool)
    length = 2 * ((b - a) % m) + 1
    mask[(2 * a + np.arange(length)) % (2 * m)] = True
    return mask


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Maximal cyclic runs ``(start, length)`` of a boolean atom mask."""
    size = mask.size
    if mask.all():
        return [(0, size)]
    if not mask.any():
        return []
    start = int(np.argmin(mask))  # a False atom; runs cannot cross it
    rolled = np.roll(mask, -start)
    out, k = [], 0
    while k < size:
        if rolled[k]:
            j = k
            while j < size and rolled[j]:
                j += 1
            out.append(((k + start) % size, j - k))
            k = j
        else:
            k += 1
    return out


def rect_vertices(r: Rect) -> tuple[tuple[int, int], ...]:
    """Vertices in the order bottom-left, bottom-right, top-left, top-right."""
    t1, t2, p1, p2 = r
    return (t1, p1), (t2, p1), (t1, p2), (t2, p2)


def _in_rect(pt: tuple[int, int], r: Rect, m: int) -> bool:
    t1, t2, p1, p2 = r
    return (pt[0] - t1) % m <= (t2 - t1) % m and (pt[1] - p1) % m <= (p2 - p1) % m


def intersection_kind(r1: Rect, r2: Rect, m: int) -> str:
    """``"empty"``, ``"vertices"``, ``"rectangle"`` (all compatible) or ``"bad"``."""
    th = _runs(_arc_atoms(r1[0], r1[1], m) & _arc_atoms(r2[0], r2[1], m))
    ph = _runs(_arc_atoms(r1[2], r1[3], m) & _arc_atoms(r2[2], r2[3], m))
    if not th or not ph:
        return "empty"
    if all(ln == 1 for _, ln in th + ph):
        # isolated points of intersecting arcs are endpoints of both arcs
        return "vertices"
    if len(th) == 1 and len(ph) == 1 and th[0][1] > 1 and ph[0][1] > 1:
        if any(_in_rect(v, r2, m) for v in rect_vertices(r1)) or \
                any(_in_rect(v, r1, m) for v in rect_vertices(r2)):
            return "bad"
        return "rectangle"
    return "bad"


def compatible(r1: Rect, r2: Rect, m: int) -> bool:
    return intersection_kind(r1, r2, m) != "bad"


# --- surface diagrams -----------------------------------------------------------

@dataclass(frozen=True)
class SurfaceDiagram:
    m: int
    rects: tuple[Rect, ...]

    @property
    def vertex_counts(self) -> Counter:
        return Counter(v for r in self.rects for v in rect_vertices(r))

    @property
    def free_vertices(self) -> list[tuple[int, int]]:
        return sorted(v for v, k in self.vertex_counts.items() if k == 1)

    def to_json(self) -> dict:
        return {"m": self.m, "rects": [list(r) for r in self.rects]}

    @classmethod
    def from_json(cls, d: dict) -> "SurfaceDiagram":
        return validate_surface(d["rects"], d["m"])


def _arcs_meet(a, b, c, d, m):
    """Whether closed arcs ``[a; b]`` and ``[c; d]`` meet (vectorized over ``c, d``)."""
    return ((c - a) % m <= (b - a) % m) | ((a - c) % m <= (d - c) % m)


def _candidate_pairs(rects: Sequence[Rect], m: int) -> list[tuple[int, int]]:
    """Pairs of rectangles whose closed sets meet (both arcs intersect)."""
    if len(rects) < 2:
        return []
    A = np.array(rects, dtype=np.int64)
    out = []
    for i in range(len(A) - 1):
        t1, t2, p1, p2 = A[i]
        rest = A[i + 1:]
        hit = _arcs_meet(t1, t2, rest[:, 0], rest[:, 1], m) & _arcs_meet(p1, p2, rest[:, 2], rest[:, 3], m)
        out += [(i, i + 1 + int(j)) for j in np.nonzero(hit)[0]]
    return out


def validate_surface(rects: Iterable[Sequence[int]], m: int) -> SurfaceDiagram:
    """Check pairwise compatibility and the free-vertex bound."""
    rs = []
    for r in rects:
        t1, t2, p1, p2 = (int(x) % m for x in r)
        if t1 == t2 or p1 == p2:
            raise SurfaceError(f"degenerate rectangle {tuple(r)}")
        rs.append((t1, t2, p1, p2))
    if len(set(rs)) != len(rs):
        raise IncompatiblePair("repeated rectangle")
    for i, j in _candidate_pairs(rs, m):
        if intersection_kind(rs[i], rs[j], m) == "bad":
            raise IncompatiblePair(f"rectangles {i} {rs[i]} and {j} {rs[j]} are not compatible")
    P = SurfaceDiagram(m, tuple(rs))
    free = P.free_vertices
    for axis, name in ((0, "meridian"), (1, "longitude")):
        cnt = Counter(v[axis] for v in free)
        over = [lv for lv, k in cnt.items() if k > 2]
        if over:
            raise FreeVertexOverflow(f"{name} {over[0]} has {cnt[over[0]]} free vertices")
    return P


def boundary(P: SurfaceDiagram) -> UnorientedGridDiagram:
    """The free vertices of ``P`` as a compacted unoriented diagram."""
    return validate_unoriented(P.free_vertices)


# --- dividing code ----------------------------------------------------------------

@dataclass(frozen=True)
class DividingCode:
    n_rects: int
    pairs: tuple[tuple[int, int, str], ...]

    def to_json(self) -> dict:
        return {"n_rects": self.n_rects, "pairs": [list(p) for p in self.pairs]}

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(self.n_rects))
        for i, j, rel in self.pairs:
            g.add_edge(i, j, rel=rel)
        return g


def dividing_code(P: SurfaceDiagram) -> DividingCode:
    """All ordered pairs related by a shared top-right/bottom-left or bottom-right/top-left corner."""
    by_bl, by_tl = {}, {}
    for k, (t1, t2, p1, p2) in enumerate(P.rects):
        by_bl.setdefault((t1, p1), []).append(k)
        by_tl.setdefault((t1, p2), []).append(k)
    pairs = []
    for i, (t1, t2, p1, p2) in enumerate(P.rects):
        for j in by_bl.get((t2, p2), ()):
            pairs.append((i, j, UDOT))
        for j in by_tl.get((t2, p1), ()):
            pairs.append((i, j, DDOT))
    return DividingCode(len(P.rects), tuple(sorted(pairs)))


def code_equivalent(c1: DividingCode, c2: DividingCode) -> bool:
    """Whether a bijection of rectangles carries one code onto the other."""
    if c1.n_rects != c2.n_rects or len(c1.pairs) != len(c2.pairs):
        return False
    if Counter(r for *_, r in c1.pairs) != Counter(r for *_, r in c2.pairs):
        return False
    gm = isomorphism.MultiDiGraphMatcher(
        c1.graph(), c2.graph(), edge_match=isomorphism.categorical_multiedge_match("rel", None))
    return gm.is_isomorphic()


def _compact_rects(P: SurfaceDiagram):
    ths = sorted({x for r in P.rects for x in r[:2]})
    phs = sorted({x for r in P.rects for x in r[2:]})
    tm = {v: i for i, v in enumerate(ths)}
    pm = {v: i for i, v in enumerate(phs)}
    return len(ths), len(phs), [(tm[a], tm[b], pm[c], pm[d]) for a, b, c, d in P.rects]


def combinatorially_equivalent(P1: SurfaceDiagram, P2: SurfaceDiagram) -> bool:
    """Equivalence under orientation-preserving homeomorphisms ``f x g`` of the torus.

    After compacting the occupied levels such a homeomorphism is a pair of
    cyclic shifts.
    """
    a1, b1, r1 = _compact_rects(P1)
    a2, b2, r2 = _compact_rects(P2)
    if (a1, b1, len(r1)) != (a2, b2, len(r2)):
        return False
    target = set(r2)
    for s in range(a1):
        for t in range(b1):
            moved = {((x + s) % a1, (y + s) % a1, (z + t) % b1, (w + t) % b1) for x, y, z, w in r1}
            if moved == target:
                return True
    return False


# --- special surface ---------------------------------------------------------------

def _directed_cycles(R) -> list[list[tuple[int, int]]]:
    """Vertex cycles ``(t1,p1), (t1,p2), (t2,p2), ...`` starting with a vertical edge.

    For an oriented diagram the cycles follow the orientation.
    """
    out = []
    for comp in R.components:
        comp = list(comp)
        if isinstance(R, GridDiagram) and R.sign(*comp[0]) < 0:
            comp = [comp[1], comp[0]] + comp[:1:-1]
        out.append(comp)
    return out


def _cells(r: Rect, m: int):
    t1, t2, p1, p2 = r
    cols = (t1 + np.arange((t2 - t1) % m)) % m
    rows = (p1 + np.arange((p2 - p1) % m)) % m
    return np.ix_(cols, rows)


def _cyclic_span(vals: set[int], m: int):
    """``(start, length)`` of the shortest cyclic interval of cells covering ``vals``."""
    if len(vals) == m:
        return None
    s = sorted(vals)
    gaps = [((s[(k + 1) % len(s)] - s[k]) % m or m, k) for k in range(len(s))]
    g, k = max(gaps)
    start = s[(k + 1) % len(s)]
    return start, m - g + 1


def region_rectangles(mask: np.ndarray) -> list[Rect]:
    """Rectangles of a cell region ``mask[col, row]`` on the torus.

    Edge-connected components that are cyclic boxes give one rectangle
    each; any other component is cut by a greedy maximal-rectangle sweep.
    """
    m = mask.shape[0]
    seen = np.zeros_like(mask, dtype=bool)
    out: list[Rect] = []
    for a, b in zip(*np.nonzero(mask)):
        if seen[a, b]:
            continue
        comp = []
        dq = deque([(int(a), int(b))])
        seen[a, b] = True
        while dq:
            x, y = dq.popleft()
            comp.append((x, y))
            for nx_, ny in ((x + 1) % m, y), ((x - 1) % m, y), (x, (y + 1) % m), (x, (y - 1) % m):
                if mask[nx_, ny] and not seen[nx_, ny]:
                    seen[nx_, ny] = True
                    dq.append((nx_, ny))
        cs = _cyclic_span({x for x, _ in comp}, m)
        rs = _cyclic_span({y for _, y in comp}, m)
        if cs and rs and cs[1] * rs[1] == len(comp):
            out.append((cs[0], (cs[0] + cs[1]) % m, rs[0], (rs[0] + rs[1]) % m))
        else:
            out += _greedy_rects(comp, m)
    return sorted(out)


def _greedy_rects(cells: list[tuple[int, int]], m: int) -> list[Rect]:
    # widths and heights stay below m: a rectangle cannot close up into an annulus
    left = set(cells)
    out = []
    for y in range(m):
        for x in range(m):
            if (x, y) not in left:
                continue
            w = 1
            while w < m - 1 and ((x + w) % m, y) in left:
                w += 1
            h = 1
            while h < m - 1 and all(((x + d) % m, (y + h) % m) in left for d in range(w)):
                h += 1
            for d in range(w):
                for e in range(h):
                    left.discard(((x + d) % m, (y + e) % m))
            out.append((x, (x + w) % m, y, (y + h) % m))
    return out


@dataclass
class SpecialSurface:
    """Result of :func:`special_surface` with the intermediate stages."""

    surface: SurfaceDiagram
    stage1: list[Rect] = field(default_factory=list)
    stage2: list[Rect] = field(default_factory=list)
    stage3: list[Rect] = field(default_factory=list)
    cycles: list = field(default_factory=list)

    def level(self, value: int, j: int) -> int:
        return REFINE * value + j


def special_surface(R, refine: int = REFINE, keep_stages: bool = False):
    """Surface diagram ``P`` with ``R`` in its boundary whose dividing code fixes its combinatorial type.

    Levels are refined by ``refine`` (at least 7): the level ``x`` of ``R``
    becomes ``refine * x`` and the sublevels ``x_j`` are ``refine * x + j``,
    ``j = 0..5``.  The construction lays a band of rectangles along the
    diagram, removes the overlaps of the band, and then takes symmetric
    differences with the meridional strips ``[x_1; x_2]``, ``[x_4; x_5]``
    and the longitudinal ones.  Returns the validated :class:`SurfaceDiagram`,
    or a :class:`SpecialSurface` holding every stage when ``keep_stages``.
    """
    if refine < 7:
        raise ValueError("refinement factor must be at least 7")
    m = refine * R.n

    def L(x, j):
        return (refine * x + j) % m

    cycles = _directed_cycles(R)
    stage1: list[Rect] = []
    for cyc in cycles:
        k = len(cyc) // 2
        th = [cyc[2 * i][0] for i in range(k)]
        ph = [cyc[2 * i][1] for i in range(k)]
        for i in range(k):
            i1 = (i + 1) % k
            stage1.append((L(th[i], 0), L(th[i], 3), L(ph[i], 3), L(ph[i1], 0)))
            stage1.append((L(th[i], 3), L(th[i1], 0), L(ph[i1], 0), L(ph[i1], 3)))
    cover = np.zeros((m, m), dtype=np.int32)
    for r in stage1:
        cover[_cells(r, m)] += 1
    region = cover == 1
    stage2 = region_rectangles(region) if keep_stages else []
    strips = np.zeros(m, dtype=bool)
    for c in {c for c, _ in R.points}:
        for j in (1, 4):
            strips[L(c, j)] = True
    region = region ^ strips[:, None]
    stage3 = region_rectangles(region) if keep_stages else []
    strips = np.zeros(m, dtype=bool)
    for r in {r for _, r in R.points}:
        for j in (1, 4):
            strips[L(r, j)] = True
    region = region ^ strips[None, :]
    P = validate_surface(region_rectangles(region), m)
    free = set(P.free_vertices)
    missing = [(c, r) for c, r in R.points if (refine * c, refine * r) not in free]
    if missing:  # pragma: no cover - guarded by tests
        raise SurfaceError(f"vertices {missing[:3]} of R are not free in the constructed surface")
    if keep_stages:
        return SpecialSurface(P, stage1, stage2, stage3, cycles)
    return P


# --- staircase annuli --------------------------------------------------------------

def staircase_order(P: SurfaceDiagram) -> list[int]:
    """Indices ``i_1, ..., i_N`` with ``r_{i_{k-1}} cap r_{i_k}`` the bottom-left vertex of ``r_{i_k}``.

    The cycle starts at the rectangle listed first in ``P``.
    """
    rs = P.rects
    N = len(rs)
    if N < 2:
        raise NotStaircase("a staircase needs at least two rectangles")
    by_bl: dict[tuple[int, int], list[int]] = {}
    for k, r in enumerate(rs):
        by_bl.setdefault((r[0], r[2]), []).append(k)
    order = [0]
    while True:
        t1, t2, p1, p2 = rs[order[-1]]
        nxt = by_bl.get((t2, p2), [])
        if len(nxt) != 1:
            raise NotStaircase(f"rectangle {order[-1]} has {len(nxt)} successors")
        if nxt[0] == order[0]:
            break
        if nxt[0] in order:
            raise NotStaircase("successor chain closes up before covering the diagram")
        order.append(nxt[0])
    if len(order) != N:
        raise NotStaircase(f"cycle covers {len(order)} of {N} rectangles")
    for k in range(N):
        a, b = rs[order[k - 1]], rs[order[k]]
        if intersection_kind(a, b, P.m) != "vertices" or \
                {v for v in rect_vertices(a)} & {v for v in rect_vertices(b)} != {(b[0], b[2])}:
            raise NotStaircase(f"consecutive rectangles {order[k - 1]}, {order[k]} meet beyond a corner")
    return order


def staircase_annulus(thetas: Sequence[int], phis: Sequence[int], m: int) -> SurfaceDiagram:
    """Validated staircase ``r_i = [theta_{i-1}; theta_i] x [phi_{i-1}; phi_i]`` (indices cyclic)."""
    N = len(thetas)
    rects = [(thetas[i - 1], thetas[i % N], phis[i - 1], phis[i % N]) for i in range(1, N + 1)]
    return validate_surface(rects, m)


@dataclass
class AnnulusSlide:
    """Moves sliding the boundary component through ``(theta_1, phi_0)`` onto the other one.

    ``states`` are vertex-to-sign maps on the tripled grid of size
    ``3m`` (level ``x`` sits at ``3x + 1``, ``x - eps`` at ``3x`` and
    ``x + eps`` at ``3x + 2``); ``moves[k]`` takes ``states[k]`` to
    ``states[k + 1]`` and is re-derived by :func:`check_move`.
    """

    size: int
    states: list
    moves: list
    start: GridDiagram
    end: GridDiagram

    @property
    def kinds(self) -> list[str]:
        return [m.kind if m.kind == EXCHANGE else f"{m.kind} {m.stab_type}" for m in self.moves]

    def to_json(self) -> dict:
        return {"size": self.size, "n_moves": len(self.moves), "kinds": self.kinds,
                "moves": [m.describe() for m in self.moves],
                "start": [list(v) for v in self.start.vertices],
                "end": [list(v) for v in self.end.vertices]}


def slide_annulus_boundary(P: SurfaceDiagram, top_left_sign: int = 1) -> AnnulusSlide:
    """Type II stabilization, ``N - 2`` exchanges and a type II destabilization.

    ``P`` must be a staircase annulus of ``N = 2k`` rectangles.  Its
    boundary vertices are the top-left corners (sign ``top_left_sign``)
    and bottom-right corners (opposite sign) of the rectangles.  The
    component through the bottom-right corner of the first rectangle is
    pushed along the staircase until it runs parallel to the other
    component.
    """
    order = staircase_order(P)
    N = len(order)
    if N % 2 or N < 4:
        raise NotStaircase(f"a staircase annulus has an even number >= 4 of rectangles, got {N}")
    rs = [P.rects[k] for k in order]
    th = [r[0] for r in rs]  # theta_{i-1} is the left side of r_i
    ph = [r[2] for r in rs]
    m = P.m
    size = 3 * m

    def lv(x):
        return 3 * x + 1

    def mi(x):  # x - eps
        return 3 * x

    s = 1 if top_left_sign > 0 else -1
    state = {}
    for i in range(1, N + 1):
        state[(lv(th[i - 1]), lv(ph[i % N]))] = s      # top-left of r_i
        state[(lv(th[i % N]), lv(ph[i - 1]))] = -s     # bottom-right of r_i
    if len(state) != 2 * N:
        raise NotStaircase("boundary vertices of the staircase coincide")

    def t(i):
        return th[i % N]

    def p(i):
        return ph[i % N]

    steps = []
    # stabilization at (theta_1, phi_0)
    v = (lv(t(1)), lv(p(0)))
    steps.append(([v], [(mi(t(0)), lv(p(0))), (mi(t(0)), mi(p(1))), (lv(t(1)), mi(p(1)))]))
    for i in range(1, N - 1):
        if i % 2:  # vertical edge at theta_i moves to theta_{i+1} - eps
            old = [(lv(t(i)), mi(p(i))), (lv(t(i)), lv(p(i + 1)))]
            new = [(mi(t(i + 1)), mi(p(i))), (mi(t(i + 1)), lv(p(i + 1)))]
        else:  # horizontal edge at phi_i moves to phi_{i+1} - eps
            old = [(mi(t(i)), lv(p(i))), (lv(t(i + 1)), lv(p(i)))]
            new = [(mi(t(i)), mi(p(i + 1))), (lv(t(i + 1)), mi(p(i + 1)))]
        steps.append((old, new))
    steps.append(([(lv(t(N - 1)), mi(p(N - 1))), (lv(t(N - 1)), lv(p(0))), (mi(t(0)), lv(p(0)))],
                  [(mi(t(0)), mi(p(N - 1)))]))

    states = [dict(state)]
    moves: list[ElementaryMove] = []
    for old, new in steps:
        nxt = dict(states[-1])
        for q in old:
            if q not in nxt:
                raise NotStaircase(f"expected vertex {q} is missing")
            del nxt[q]
        for q in new:
            nxt[q] = 0
        _fill_signs(nxt)
        moves.append(check_move(states[-1], nxt, size))
        states.append(nxt)
    expected = [STAB] + [EXCHANGE] * (N - 2) + [DESTAB]
    got = [mv.kind for mv in moves]
    if got != expected or moves[0].stab_type != "II" or moves[-1].stab_type != "II":
        raise IllegalMove(f"unexpected move classification {got}")

    def grid(st):
        return validate([(c, r, sg) for (c, r), sg in st.items()])

    return AnnulusSlide(size, states, moves, grid(states[0]), grid(states[-1]))


def _fill_signs(pts: dict) -> None:
    """Give the new vertices (sign 0) the sign opposite to their line partner."""
    todo = [q for q, sg in pts.items() if sg == 0]
    while todo:
        progress = False
        for q in list(todo):
            for o, sg in pts.items():
                if o != q and sg and (o[0] == q[0] or o[1] == q[1]):
                    pts[q] = -sg
                    todo.remove(q)
                    progress = True
                    break
        if not progress:
            raise IllegalMove("cannot assign signs to new vertices")
