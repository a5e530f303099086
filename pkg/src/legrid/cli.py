"""Command-line interface ``legrid``.

Every subcommand prints JSON (default) or a plain key/value table
(``--format table``) on stdout.  Usage errors exit with status 2;
computation errors exit with status 1 and a JSON object
``{"error": ..., "message": ...}`` on stderr.  ``--jobs`` defaults to
the ``LEGRID_JOBS`` environment variable and never changes any value
that is printed.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path

from . import alexander as alx
from . import io as gio
from . import legendrian as leg
from . import moves as mv
from . import surface as srf
from . import symmetry as sym
from . import torus_cert as tc
from .grid import GridDiagram, canonical_form

K1_SPECIAL_VALUES = (1, -7, 17, 13, 113)
K1_TORUS = {"n_maximal": 623, "rank": 621, "kernel_dim": 2, "n_rays": 1}
K1_NEWTON = 971_865
K1_ELL_OPTIONS = 32


class CliError(Exception):
    pass


# --- helpers -------------------------------------------------------------------------

def _jobs(args) -> int:
    if getattr(args, "jobs", None):
        return max(1, int(args.jobs))
    try:
        return max(1, int(os.environ.get("LEGRID_JOBS", "1")))
    except ValueError:
        return 1


def _grid(path, oriented: bool = True):
    if path in (None, "k1"):
        return gio.k1_diagram() if oriented else gio.k1_unoriented()
    g = gio.load_grid(path)
    if oriented and not isinstance(g, GridDiagram):
        g = g.orient(0)
    return g


def _delta(args):
    if getattr(args, "delta", None):
        return alx.LaurentPoly(0, tuple(int(x) for x in args.delta.replace(",", " ").split()))
    if getattr(args, "input", None):
        return alx.alexander_poly(_grid(args.input))
    return gio.k1_alexander()


def _surface(path) -> srf.SurfaceDiagram:
    return srf.SurfaceDiagram.from_json(json.loads(Path(path).read_text()))


def _table(obj, prefix="") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            nested = isinstance(v, dict) or (
                isinstance(v, list) and not all(isinstance(x, (int, str, float)) for x in v))
            if nested and v:
                lines += _table(v, f"{prefix}{k}.")
            else:
                lines.append(f"{prefix}{k}: {v}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines += _table(v, f"{prefix}{i}.") if isinstance(v, (dict, list)) else [f"{prefix}{i}: {v}"]
    else:
        lines.append(f"{prefix}{obj}")
    return lines


def _emit(args, obj) -> None:
    if getattr(args, "format", "json") == "table":
        print("\n".join(_table(obj)))
    else:
        text = json.dumps(obj, indent=2, default=str)
        # keep lists of scalars on one line
        print(re.sub(r"\[[^\[\]{}]*\]", lambda mt: " ".join(mt.group(0).split()), text))


def _fd_json(g, side):
    fd = leg.front_data(g, side)
    return {"tb": fd.tb, "r": fd.r, "writhe": fd.writhe, "cusps": fd.cusps,
            "cusps_up": fd.cusps_up, "cusps_down": fd.cusps_down, "corner_census": fd.corner_census}


# --- subcommands ------------------------------------------------------------------------

def cmd_validate(args):
    g = _grid(args.input, oriented=False)
    if args.require_knot and not g.is_knot:
        raise CliError(f"diagram has {len(g.components)} components")
    return {"n": g.n, "oriented": isinstance(g, GridDiagram), "components": len(g.components),
            "is_knot": g.is_knot, "canonical_key": canonical_form(g).hex(),
            "normalized": gio.grid_to_json(g)}


def cmd_invariants(args):
    g = _grid(args.input)
    sides = {"plus": ["+"], "minus": ["-"], "both": ["+", "-"]}[args.side]
    out = {s: _fd_json(g, s) for s in sides}
    if args.svg:
        Path(args.svg).write_text(leg.front_svg(g, sides[0]))
    if len(sides) == 1:
        return {"side": sides[0], **out[sides[0]]}
    return out


def _kinds(k):
    return {"exchange": [mv.EXCHANGE], "stabilization": [mv.STAB],
            "destabilization": [mv.DESTAB], "all": [mv.EXCHANGE, mv.STAB, mv.DESTAB]}[k]


def cmd_moves(args):
    g = _grid(args.input)
    pairs = mv.enumerate_moves(g, _kinds(args.kind))
    ms = [m for m, _ in pairs]
    if args.action == "list":
        return {"n": g.n, "count": len(ms),
                "moves": [{"index": i, "kind": m.kind, "corners": list(m.corners),
                           "stab_type": m.stab_type, "oriented_type": m.oriented_type}
                          for i, m in enumerate(ms)]}
    if args.index is None or not 0 <= args.index < len(ms):
        raise CliError(f"--index must be in 0..{len(ms) - 1}")
    m, h = pairs[args.index]
    if args.output:
        gio.save_grid(h, args.output)
    return {"move": m.describe(), "result": gio.grid_to_json(h),
            "tb_r": {s: list(leg.tb_r(h, s)) for s in ("+", "-")}}


def cmd_exchange_class(args):
    g = _grid(args.input)
    ec = mv.exchange_class(g, budget=args.budget)
    return {"size": len(ec), "complete": ec.complete, "rigid": mv.is_rigid(g)}


def cmd_compare(args):
    g1, g2 = _grid(args.a), _grid(args.b)
    res = leg.decide_legendrian_pair(g1, g2, budget=args.budget,
                                     assume_trivial_symmetry=args.assume_trivial_symmetry)
    return {s: v.to_json() for s, v in res.items()}


def cmd_surface(args):
    if args.action == "special":
        P = srf.special_surface(_grid(args.input))
        out = P.to_json()
        if args.output:
            Path(args.output).write_text(json.dumps(out) + "\n")
            return {"m": P.m, "n_rects": len(P.rects), "output": args.output}
        return out
    P = _surface(args.surface)
    if args.action == "boundary":
        return gio.grid_to_json(srf.boundary(P))
    if args.action == "dividing-code":
        return srf.dividing_code(P).to_json()
    sl = srf.slide_annulus_boundary(P)
    return sl.to_json()


def cmd_torus_cert(args):
    cert = tc.certify(_grid(args.input, oriented=False))
    return cert.to_json(with_types=args.with_types)


def cmd_alexander(args):
    g = _grid(args.input)
    pd = alx.planar_diagram(g)
    poly = alx.alexander_poly(pd)
    out = {"crossings": len(pd.crossings), "delta": poly.to_json(), "text": str(poly)}
    if args.dt:
        code = alx.dt_export(pd)
        out["dt"] = code
        if args.input in (None, "k1"):
            out["dt_matches_fixture"] = alx.dt_match(code, gio.k1_dt_code())
    return out


def cmd_symmetry(args):
    if args.action == "newton-search":
        sols = sym.newton_search(args.bound)
        return {"bound": args.bound, "count": int(len(sols))} if args.count_only else \
            {"bound": args.bound, "count": int(len(sols)), "solutions": sols.tolist()}
    delta = _delta(args)
    if args.action == "murasugi":
        pmax = args.pmax or len(delta.coeffs)
        return {"delta": delta.to_json(),
                "results": {str(p): str(sym.murasugi_test(delta, p)) for p in sym.primes_upto(pmax)}}
    if args.action == "special-values":
        return {"values": list(sym.special_values(delta))}
    if args.action == "ell":
        opts = sym.ell_enumerate(sym.special_values(delta))
        return {"count": len(opts), "options": [{"a": list(o.a), "ell": o.ell} for o in opts]}
    if args.action == "eliminate":
        opts = sym.ell_enumerate(sym.special_values(delta))
        if args.options:
            opts = opts[: args.options]
        sols = sym.newton_search(args.bound)
        rep = sym.eliminate_candidates(opts, sols, jobs=_jobs(args))
        return {"n_ell_options": len(opts), "n_newton_solutions": int(len(sols)), **rep.to_json()}
    rep = sym.free_period_report(delta, run_elimination=not args.skip_elimination, jobs=_jobs(args),
                                 small_p_max=args.small_p_max)
    return {k: ({str(a): b for a, b in v.items()} if isinstance(v, dict) else v) for k, v in rep.items()}


def _check(name, expected, fn):
    t0 = time.perf_counter()
    got = fn()
    ok = got == expected
    return {"name": name, "ok": bool(ok), "expected": expected, "got": got,
            "seconds": round(time.perf_counter() - t0, 3)}


def cmd_repro_k1(args):
    R = gio.k1_unoriented()
    g = gio.k1_diagram()
    pd = alx.planar_diagram(g)
    delta = gio.k1_alexander()
    checks = [
        _check("alexander polynomial equals fixture", delta.to_json(),
               lambda: alx.alexander_poly(pd).to_json()),
        _check("DT code matches fixture", True, lambda: alx.dt_match(alx.dt_export(pd), gio.k1_dt_code())),
        _check("special values", list(K1_SPECIAL_VALUES), lambda: list(sym.special_values(delta))),
        _check("ell options", K1_ELL_OPTIONS, lambda: len(sym.ell_enumerate(sym.special_values(delta)))),
        _check("murasugi obstructed for p <= 19", True,
               lambda: all(sym.murasugi_test(delta, p).kind == "Obstructed" for p in sym.primes_upto(19))),
        _check("roots inside |z| < 1.5", True, lambda: sym.roots_in_disk(delta, 1.5)),
        _check("torus certificate", K1_TORUS,
               lambda: {k: v for k, v in tc.certify(R).to_json().items() if k in K1_TORUS}),
        _check("rigid", True, lambda: mv.is_rigid(g)),
        _check("newton solutions (bound 20)", K1_NEWTON, lambda: int(len(sym.newton_search(20)))),
    ]
    if not args.quick:
        def elim():
            opts = sym.ell_enumerate(sym.special_values(delta))
            rep = sym.eliminate_candidates(opts, sym.newton_search(20), jobs=_jobs(args))
            return {"n_candidates": rep.n_candidates, "n_survivors": rep.n_survivors,
                    "max_first_violation_le_31": max(rep.first_violation) <= 31}
        checks.append(_check("candidate elimination",
                             {"n_candidates": K1_ELL_OPTIONS * K1_NEWTON, "n_survivors": 0,
                              "max_first_violation_le_31": True}, elim))
        checks.append(_check("exchange class is a single diagram", {"size": 1, "complete": True},
                             lambda: (lambda ec: {"size": len(ec), "complete": ec.complete})(
                                 mv.exchange_class(g))))
    out = {"quick": bool(args.quick), "all_ok": all(c["ok"] for c in checks), "checks": checks}
    if not out["all_ok"]:
        _emit(args, out)
        raise CliError("some K1 checks failed: " + ", ".join(c["name"] for c in checks if not c["ok"]))
    return out


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: $LEGRID_JOBS or 1)")
    p = argparse.ArgumentParser(prog="legrid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=fn)
        return sp

    def grid_arg(sp, required=False):
        sp.add_argument("--input", "-i", required=required,
                        help="grid file (JSON or X/O text); 'k1' or omitted: bundled K1")

    sp = add("validate", cmd_validate, help="validate and normalize a grid file")
    grid_arg(sp, True)
    sp.add_argument("--require-knot", action="store_true")

    sp = add("invariants", cmd_invariants, help="tb, r and writhe of the Legendrian classes")
    grid_arg(sp, True)
    sp.add_argument("--side", choices=("plus", "minus", "both"), default="both")
    sp.add_argument("--svg", help="write the front of the (first) side as SVG")

    sp = add("moves", cmd_moves, help="list or apply elementary moves")
    sp.add_argument("action", choices=("list", "apply"))
    grid_arg(sp, True)
    sp.add_argument("--kind", choices=("exchange", "stabilization", "destabilization", "all"), default="all")
    sp.add_argument("--index", type=int)
    sp.add_argument("--output", "-o")

    sp = add("exchange-class", cmd_exchange_class, help="size of the exchange class")
    grid_arg(sp)
    sp.add_argument("--budget", type=int, default=100_000)

    sp = add("compare-legendrian", cmd_compare, help="compare the Legendrian classes of two diagrams")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--budget", type=int, default=20_000)
    sp.add_argument("--assume-trivial-symmetry", action="store_true")

    sp = add("surface", cmd_surface, help="rectangular diagrams of surfaces")
    sp.add_argument("action", choices=("special", "boundary", "dividing-code", "slide-annulus"))
    grid_arg(sp)
    sp.add_argument("--surface", help="surface JSON {'m': int, 'rects': [[t1,t2,p1,p2], ...]}")
    sp.add_argument("--output", "-o")

    sp = add("torus-cert", cmd_torus_cert, help="maximal types, matching rank and rays")
    grid_arg(sp)
    sp.add_argument("--with-types", action="store_true")

    sp = add("alexander", cmd_alexander, help="Alexander polynomial (and DT code)")
    grid_arg(sp)
    sp.add_argument("--dt", action="store_true", help="also export the DT code")

    sp = add("symmetry", cmd_symmetry, help="period and free-period obstructions")
    sp.add_argument("action", choices=("murasugi", "special-values", "ell", "newton-search",
                                       "eliminate", "free-period"))
    grid_arg(sp)
    sp.add_argument("--delta", help="coefficients low to high (default: bundled K1 polynomial)")
    sp.add_argument("--pmax", type=int)
    sp.add_argument("--bound", type=int, default=20)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--options", type=int, help="use only the first N ell options")
    sp.add_argument("--small-p-max", type=int, default=100)
    sp.add_argument("--skip-elimination", action="store_true")

    sp = add("repro-k1", cmd_repro_k1, help="recompute and check every K1 number")
    sp.add_argument("--quick", action="store_true", help="skip the elimination and exchange-class runs")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "surface":
        if args.action == "special" and not args.input:
            parser.error("surface special needs --input")
        if args.action != "special" and not args.surface:
            parser.error(f"surface {args.action} needs --surface")
    if getattr(args, "action", None) == "apply" and args.index is None:
        parser.error("moves apply needs --index")
    try:
        out = args.func(args)
    except Exception as e:  # reported as JSON
        json.dump({"error": type(e).__name__, "message": str(e), "command": args.command}, sys.stderr)
        sys.stderr.write("\n")
        return 1
    _emit(args, out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
