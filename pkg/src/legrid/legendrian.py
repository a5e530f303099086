"""Legendrian invariants of the two front projections of a grid diagram.

The ``+`` front is the planar diagram (vertical strands over horizontal
ones) rotated slightly counterclockwise; the ``-`` front is defined
through the horizontal flip, ``front(G, -) = front(hflip(G), +)``.

Corner rule for the ``+`` side.  Name each vertex after the corner it
occupies in its L-shaped pair of edges: a vertex whose edges leave
upward and to the right is a south-west (SW) corner, and so on.  After
a counterclockwise rotation both edges of a SE or NW corner leave to the
same side, so exactly these corners become cusps.  A SE corner is
traversed upward when its sign is ``+``; a NW corner when its sign is
``-``.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .grid import GridDiagram, canonical_form, symmetry
from .moves import (Outcome, Verdict, apply_move, destabilizations, exchange_equivalent,
                    exchange_moves, stabilizations)

SIDES = ("+", "-")


class InvariantMismatch(Exception):
    """The classical invariants of two Legendrian classes differ."""


def _side(side) -> str:
    if side in ("+", "plus", 1, "p"):
        return "+"
    if side in ("-", "minus", -1, "m"):
        return "-"
    raise ValueError(f"unknown side {side!r}")


@dataclass
class FrontData:
    side: str
    crossings: list = field(default_factory=list)
    corner_census: dict = field(default_factory=dict)
    writhe: int = 0
    cusps_up: int = 0
    cusps_down: int = 0

    @property
    def cusps(self) -> int:
        return self.cusps_up + self.cusps_down

    @property
    def tb(self) -> int:
        return self.writhe - self.cusps // 2

    @property
    def r(self) -> int:
        return (self.cusps_down - self.cusps_up) // 2


def corner_name(g: GridDiagram, c: int, r: int) -> str:
    """Compass name of the corner vertex ``(c, r)`` occupies."""
    rr = g.col_partner(c, r)
    cc = g.row_partner(c, r)
    # the planar diagram is drawn in a square cut open away from the vertices,
    # so edges never wrap and the order of coordinates decides
    vert = "S" if rr > r else "N"
    hor = "W" if cc > c else "E"
    return vert + hor


def _edges(g: GridDiagram):
    """Vertical and horizontal edges with their traversal directions.

    Vertical: ``(col, lo, hi, v)`` with ``v = +1`` when traversed upward.
    Horizontal: ``(row, lo, hi, h)`` with ``h = +1`` when traversed rightward.
    """
    vs, hs = [], []
    for c, (a, b) in enumerate(g.col_rows):
        plus, minus = (a, b) if g.sign(c, a) > 0 else (b, a)
        vs.append((c, min(a, b), max(a, b), 1 if minus > plus else -1))
    for r, (a, b) in enumerate(g.row_cols):
        minus, plus = (a, b) if g.sign(a, r) < 0 else (b, a)
        hs.append((r, min(a, b), max(a, b), 1 if plus > minus else -1))
    return vs, hs


def crossings(g: GridDiagram):
    """Crossings of the planar diagram as ``(col, row, sign)``.

    The vertical strand is over; the sign is ``+1`` for right-handed
    crossings, which here equals ``-v * h``.
    """
    vs, hs = _edges(g)
    out = []
    for c, r0, r1, v in vs:
        for r, c0, c1, h in hs:
            if c0 < c < c1 and r0 < r < r1:
                out.append((c, r, -v * h))
    return out


def front_data(g: GridDiagram, side="+") -> FrontData:
    side = _side(side)
    h = g if side == "+" else symmetry(g, "hflip")
    census = {k: 0 for k in ("NE", "NW", "SE", "SW")}
    up = down = 0
    for c, r, s in h.vertices:
        name = corner_name(h, c, r)
        census[name] += 1
        if name == "SE":
            up, down = (up + 1, down) if s > 0 else (up, down + 1)
        elif name == "NW":
            up, down = (up + 1, down) if s < 0 else (up, down + 1)
    xs = crossings(h)
    return FrontData(side, xs, census, sum(x[2] for x in xs), up, down)


def tb_r(g: GridDiagram, side="+") -> tuple[int, int]:
    """Thurston-Bennequin and rotation numbers of the chosen Legendrian class."""
    fd = front_data(g, side)
    return fd.tb, fd.r


def front_polyline(g: GridDiagram, side="+", angle: float = math.pi / 6):
    """Closed front polyline of a knot diagram in traversal order (rotated coordinates)."""
    side = _side(side)
    ca, sa = math.cos(angle), math.sin(angle)
    pts = []
    for c, r in g.traversal():
        if side == "+":
            x, z = ca * c - sa * r, sa * c + ca * r
        else:  # rotate clockwise, then reflect horizontally
            x, z = -(ca * c + sa * r), -sa * c + ca * r
        pts.append((x, z))
    return pts


def front_svg(g: GridDiagram, side="+", scale: float = 20.0) -> str:
    """Minimal SVG rendering of the front, crossings drawn with a gap in the under strand."""
    pts = front_polyline(g, side)
    xs = [p[0] for p in pts]
    zs = [p[1] for p in pts]
    x0, z1 = min(xs) - 1, max(zs) + 1
    w = (max(xs) - x0 + 1) * scale
    hgt = (z1 - min(zs) + 1) * scale
    path = " ".join(f"{(x - x0) * scale:.2f},{(z1 - z) * scale:.2f}" for x, z in pts + pts[:1])
    tb, r = tb_r(g, side)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{hgt:.0f}">'
            f'<title>front {side}: tb={tb} r={r}</title>'
            f'<polyline fill="none" stroke="black" stroke-width="1.5" points="{path}"/></svg>\n')


# --- decision procedure -----------------------------------------------------

def _preserving_moves(g: GridDiagram, side: str, n_max: int):
    """Moves preserving the ``side`` class: exchanges plus type I (side +) or II (side -)."""
    keep = "I" if side == "+" else "II"
    out = [(m, apply_move(g, m)) for m in exchange_moves(g)]
    if g.n < n_max:
        out += [(m, apply_move(g, m)) for m in stabilizations(g) if m.stab_type == keep]
    out += [(m, apply_move(g, m)) for m in destabilizations(g) if m.stab_type == keep]
    return out


def orbit(g: GridDiagram, side: str, n_max: int, budget: int):
    """Diagrams reachable from ``g`` by ``side``-preserving moves with grid size <= ``n_max``.

    Returns ``(parents, complete)`` where ``parents`` maps a canonical key
    to ``(parent key, move, diagram)``.
    """
    side = _side(side)
    k0 = canonical_form(g)
    parents = {k0: (None, None, g)}
    queue = deque([g])
    complete = True
    while queue:
        h = queue.popleft()
        for m, h2 in _preserving_moves(h, side, n_max):
            k = canonical_form(h2)
            if k in parents:
                continue
            if len(parents) >= budget:
                return parents, False
            parents[k] = (canonical_form(h), m, h2)
            queue.append(h2)
    return parents, complete


def _path(parents, key):
    seq = []
    while parents[key][0] is not None:
        pk, m, _ = parents[key]
        seq.append(m)
        key = pk
    return seq[::-1]


def decide_legendrian_pair(g1: GridDiagram, g2: GridDiagram, budget: int = 20_000,
                           assume_trivial_symmetry: bool = False,
                           extra_size: int = 2) -> dict[str, Verdict]:
    """Compare the ``+`` and ``-`` Legendrian classes of two knot diagrams.

    For each side: differing ``(tb, r)`` gives ``NotEquivalent`` at once;
    a chain of side-preserving moves gives ``Equivalent``.  Otherwise, if
    ``assume_trivial_symmetry`` holds, a diagram ``R3`` sharing the side
    class of ``g1`` and the opposite class of ``g2`` is searched for; then
    the classes of ``g1`` and ``g2`` agree exactly when ``R3`` and ``g2``
    are related by exchange moves.  Budget exhaustion gives ``Unknown``.
    """
    out = {}
    n_top = max(g1.n, g2.n) + extra_size
    for side in SIDES:
        other = "-" if side == "+" else "+"
        i1, i2 = tb_r(g1, side), tb_r(g2, side)
        if i1 != i2:
            out[side] = Verdict(Outcome.NOT_EQUIVALENT, witness={"tb_r": [i1, i2]},
                                reason="InvariantMismatch")
            continue
        k2 = canonical_form(g2)
        verdict = None
        par1 = None
        for n_max in range(max(g1.n, g2.n), n_top + 1):
            par1, complete1 = orbit(g1, side, n_max, budget)
            if k2 in par1:
                verdict = Verdict(Outcome.EQUIVALENT, witness=_path(par1, k2),
                                  reason=f"side-preserving move sequence (grid size <= {n_max})")
                break
        if verdict is None and assume_trivial_symmetry:
            par2, _ = orbit(g2, other, n_top, budget)
            common = sorted(k for k in par1 if k in par2 and par1[k][2].n == g2.n)
            for k in common:
                r3 = par1[k][2]
                v = exchange_equivalent(r3, g2, budget)
                if v.outcome is Outcome.EQUIVALENT:
                    verdict = Verdict(Outcome.EQUIVALENT, witness=_path(par1, k),
                                      reason="intermediate diagram is exchange-equivalent to the target")
                    break
                if v.outcome is Outcome.NOT_EQUIVALENT:
                    verdict = Verdict(Outcome.NOT_EQUIVALENT, witness=_path(par1, k),
                                      reason="intermediate diagram's exchange class is complete "
                                             "and excludes the target")
                    break
        out[side] = verdict or Verdict(Outcome.UNKNOWN, reason=f"budget of {budget} exhausted")
    return out
