"""Legendrian invariants of small grid diagrams and the comparison procedure.

Every grid diagram carries two Legendrian classes, read off the ``+`` and
``-`` fronts.  Type I stabilizations keep the ``+`` class and shift the
``-`` invariants; type II stabilizations do the opposite.
"""
from legrid import moves as mv
from legrid.grid import symmetry, trefoil, unknot
from legrid.legendrian import decide_legendrian_pair, tb_r

u = unknot(2)
print("2x2 unknot: (tb, r) on + and - =", tb_r(u, "+"), tb_r(u, "-"))
print("5x5 trefoil:", tb_r(trefoil(), "+"), tb_r(trefoil(), "-"))

print("\nstabilizations of the 2x2 unknot (one per oriented type):")
stabs = {}
for m in mv.stabilizations(u):
    if m.oriented_type not in stabs:
        h = stabs[m.oriented_type] = mv.apply_move(u, m)
        print(f"  {m.oriented_type:<4} -> + {tb_r(h, '+')}   - {tb_r(h, '-')}")

a, b = stabs["←II"], stabs["→II"]
print("\ncomparing the two type II stabilizations:")
for side, v in decide_legendrian_pair(a, b).items():
    print(f"  side {side}: {v.outcome.value:<13} {v.reason}")

print("\nthe Legendrian mirror of the first against the second:")
for side, v in decide_legendrian_pair(symmetry(a, "mirror"), b).items():
    print(f"  side {side}: {v.outcome.value:<13} {v.reason}")
    if v.witness:
        print("    ", "; ".join(m.describe() for m in v.witness))
