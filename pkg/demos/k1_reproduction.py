"""Recompute the numbers attached to the 37-grid diagram K1.

Run with ``python3 demos/k1_reproduction.py`` (add ``--full`` for the
31 million candidate elimination, about a minute on one core).
"""
import sys
import time

from legrid import alexander as alx
from legrid import io as gio
from legrid import moves as mv
from legrid import symmetry as sym
from legrid import torus_cert as tc


def timed(label, fn):
    t0 = time.perf_counter()
    value = fn()
    print(f"{label:<44} {value}  [{time.perf_counter() - t0:.2f} s]")
    return value


R = gio.k1_unoriented()
K1 = gio.k1_diagram()
print(f"K1: {R.n}x{R.n} grid, {len(R.vertices)} vertices, knot={R.is_knot}\n")

cert = timed("maximal types / rank / kernel / rays",
             lambda: (lambda c: (c.n_maximal, c.rank, c.kernel_dim, len(c.nonneg_rays)))(tc.certify(R)))
pd = alx.planar_diagram(K1)
print(f"{'crossings of the planar diagram':<44} {pd.n_crossings}")
delta = timed("Alexander polynomial", lambda: alx.alexander_poly(pd))
timed("matches the bundled polynomial", lambda: delta == gio.k1_alexander())
timed("DT code matches the bundled code", lambda: alx.dt_match(alx.dt_export(pd), gio.k1_dt_code()))
values = timed("special values", lambda: sym.special_values(delta))
opts = sym.ell_enumerate(values)
timed("number of ell options", lambda: len(opts))
print(f"{'':<44} e.g. a={opts[-1].a}: {opts[-1]}")
timed("Murasugi verdicts for p <= 19",
      lambda: sorted({str(sym.murasugi_test(delta, p)) for p in sym.primes_upto(19)}))
timed("roots inside |z| < 1.5", lambda: sym.roots_in_disk(delta, 1.5))
timed("rigid (no type-changing exchange move)", lambda: mv.is_rigid(K1))
sols = timed("Newton solutions with |p_k| <= 20", lambda: len(sym.newton_search(20)))

print("\nfree periods p < 100 (certificate per prime):")
for p in sym.primes_upto(99):
    r = sym.small_free_period(delta, p)
    detail = {k: v for k, v in r.items() if k not in ("status",)}
    print(f"  p={p:<3} {r['status']:<9} {detail}")

if "--full" in sys.argv:
    rep = timed("candidate elimination (survivors)",
                lambda: sym.eliminate_candidates(opts, sym.newton_search(20)))
    print(f"  candidates={rep.n_candidates} survivors={rep.n_survivors} "
          f"max first violation k={max(rep.first_violation)}")
