"""Rectangular diagrams of surfaces.

Builds the special surface spanning the trefoil diagram on a grid
refined sevenfold, checks its boundary, and slides one boundary
component of a staircase annulus onto the other.
"""
from legrid import surface as S
from legrid.grid import canonical_form, translate, trefoil

R = trefoil()
sp = S.special_surface(R, keep_stages=True)
P = sp.surface
print(f"trefoil special surface: m={P.m}, {len(P.rects)} rectangles "
      f"(band {len(sp.stage1)}, after overlap removal {len(sp.stage2)}, "
      f"after column strips {len(sp.stage3)})")
free = set(P.free_vertices)
print("R lies in the boundary:", all((7 * c, 7 * r) in free for c, r in R.points))
code = S.dividing_code(P)
kinds = [rel for *_, rel in code.pairs]
print(f"dividing code: {kinds.count(S.UDOT)} udotdot and {kinds.count(S.DDOT)} ddotdot pairs")
Q = S.special_surface(translate(R, 2, 1))
print("translated input gives a combinatorially equivalent surface:", S.combinatorially_equivalent(P, Q))

print()
for N in (4, 6):
    levels = list(range(0, 2 * N, 2))
    an = S.staircase_annulus(levels, levels, 2 * N)
    sl = S.slide_annulus_boundary(an)
    print(f"staircase annulus of {N} rectangles: {len(sl.moves)} moves")
    for m in sl.moves:
        print("   ", m.describe())
    print("    start and end diagrams agree:", canonical_form(sl.start) == canonical_form(sl.end))
