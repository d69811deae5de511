"""Command line front end.

Four subcommands: generate writes polygon files from the built-in
families, span builds and verifies a spanning surface, verify re-runs
the mesh checks on existing files, bounds evaluates the count bounds
for a polygon.  Reports are JSON with rationals rendered as strings;
wall-clock timings live under a single "timings" key so reports can be
compared byte-for-byte without them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .bounds import bounds_report
from .diagram import project_polygon
from .mesh import (
    boundary_matches,
    check_embedded,
    read_off,
    write_off,
)
from .otherdims import (
    cone_highdim,
    earclip_2d,
    embedded_4d,
    immersed_disk_4d,
    polygon_contact_clean,
)
from .polygon import (
    gen_planar_ngon,
    gen_random,
    gen_torus_stick,
    gen_twist_writhe,
    polygon_text,
    read_polygon,
    write_polygon,
)
from .seifert import spanning_surface_r3

STRATEGY_DIMS = {
    "earclip": lambda d: d == 2,
    "seifert": lambda d: d == 3,
    "immersed4": lambda d: d == 4,
    "embedded4": lambda d: d == 4,
    "cone": lambda d: d >= 5,
}


def _default_seed() -> int:
    try:
        return int(os.environ.get("PLSPAN_SEED", "0"))
    except ValueError:
        return 0


def _plain(x):
    """JSON-safe copy: exact rationals become strings like '14/9'."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    from .geom import rat_str
    return rat_str(x)


def _write_report(report: dict, path: str | None) -> None:
    text = json.dumps(_plain(report), indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _auto_strategy(dim: int) -> str:
    if dim == 2:
        return "earclip"
    if dim == 3:
        return "seifert"
    if dim == 4:
        return "immersed4"
    return "cone"


def cmd_generate(args) -> int:
    fam = args.family
    if fam == "torus":
        if args.m is None:
            raise SystemExit("--m required for the torus family")
        poly = gen_torus_stick(args.m)
    elif fam == "twist":
        if args.m is None:
            raise SystemExit("--m required for the twist family")
        poly = gen_twist_writhe(args.m)
    elif fam == "ngon":
        if args.n is None:
            raise SystemExit("--n required for the ngon family")
        poly = gen_planar_ngon(args.n, dim=args.dim or 2)
    elif fam == "random":
        if args.n is None or args.dim is None:
            raise SystemExit("--n and --dim required for the random family")
        poly = gen_random(args.n, args.dim, seed=args.seed)
    else:
        raise SystemExit("unknown family %r" % fam)
    echo = "n=%d dim=%d" % (len(poly.vertices), poly.dim)
    if args.out:
        write_polygon(poly, args.out)
        print(echo)
    else:
        sys.stdout.write(polygon_text(poly))
        print(echo, file=sys.stderr)
    return 0


def cmd_span(args) -> int:
    poly = read_polygon(args.polygon)
    n, dim = len(poly.vertices), poly.dim
    strategy = args.strategy
    if strategy == "auto":
        strategy = _auto_strategy(dim)
    if not STRATEGY_DIMS[strategy](dim):
        raise SystemExit("strategy %s does not apply in dimension %d"
                         % (strategy, dim))
    report: dict = {
        "input": args.polygon,
        "n": n,
        "dim": dim,
        "strategy": strategy,
        "rule": args.rule if strategy in ("seifert", "embedded4") else None,
        "seed": args.seed,
    }
    timings: dict = {}
    t0 = time.perf_counter()
    try:
        if strategy == "earclip":
            mesh, rep = earclip_2d(poly)
        elif strategy == "seifert":
            mesh, rep = spanning_surface_r3(poly, seed=args.seed,
                                            rule=args.rule)
        elif strategy == "immersed4":
            mesh, rep = immersed_disk_4d(poly, seed=args.seed)
        elif strategy == "embedded4":
            mesh, rep = embedded_4d(poly, seed=args.seed, rule=args.rule)
        else:
            mesh, rep = cone_highdim(poly, seed=args.seed)
    except (ValueError, AssertionError, RuntimeError) as exc:
        timings["construct"] = time.perf_counter() - t0
        report.update({"error": str(exc), "certificates": {},
                       "timings": timings})
        _write_report(report, args.report)
        return 1
    timings["construct"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    manifold_problems = mesh.validate_manifold()
    orientable, orient_witness = mesh.orientation_propagate()
    bmatch = boundary_matches(mesh, poly)
    if strategy == "immersed4":
        contact = polygon_contact_clean(mesh, poly)
        interior_ok = contact is None
        witness = contact
        certificate_kind = "complementary-immersed"
    else:
        violation = check_embedded(mesh)
        interior_ok = violation is None
        witness = repr(violation) if violation else None
        certificate_kind = "embedded"
    chi = mesh.euler_characteristic()
    chi_ok = chi == rep["euler"]
    timings["verify"] = time.perf_counter() - t1

    certs = {
        "manifold": not manifold_problems,
        certificate_kind: interior_ok,
        "boundary_match": bmatch,
        "chi_consistent": chi_ok,
    }
    if strategy == "seifert" and args.rule == "orientation":
        certs["orientable"] = orientable

    genus = None
    if orientable and mesh.connected_components() == 1:
        genus = mesh.genus()
    report.update({
        "c": rep.get("crossings"),
        "writhe": rep.get("writhe"),
        "circuits": rep.get("circuits"),
        "levels": rep.get("levels"),
        "t": len(mesh.triangles),
        "chi": chi,
        "genus": genus,
        "orientable": orientable,
        "embedded": interior_ok,
        "certificate": certificate_kind,
        "boundary_match": bmatch,
        "certificates": certs,
        "bounds": bounds_report(n, dim=dim, c=rep.get("crossings"),
                                w=rep.get("writhe"), g=args.knot_genus,
                                t=len(mesh.triangles)),
        "timings": timings,
    })
    if not certs["manifold"]:
        report["manifold_witness"] = manifold_problems[0]
    if not orientable and orient_witness is not None:
        report["orientation_witness"] = repr(orient_witness)
    if witness is not None:
        report["violation_witness"] = witness
    if args.mesh_out:
        write_off(mesh, args.mesh_out)
    _write_report(report, args.report)
    return 0 if all(certs.values()) else 1


def cmd_verify(args) -> int:
    mesh = read_off(args.mesh)
    report: dict = {
        "input": args.mesh,
        "dim": mesh.dim,
        "t": len(mesh.triangles),
        "chi": mesh.euler_characteristic(),
        "mode": args.mode,
    }
    certs: dict = {}
    problems = mesh.validate_manifold()
    certs["manifold"] = not problems
    if problems:
        report["manifold_witness"] = problems[0]
    orientable, _ = mesh.orientation_propagate()
    report["orientable"] = orientable
    report["boundary_cycles"] = mesh.boundary_components()
    poly = None
    if args.polygon:
        poly = read_polygon(args.polygon)
        certs["boundary_match"] = boundary_matches(mesh, poly)
    if args.mode == "embedded":
        violation = check_embedded(mesh)
        certs["embedded"] = violation is None
        if violation is not None:
            report["violation_witness"] = repr(violation)
    else:
        if poly is None:
            raise SystemExit("--polygon is required for immersed mode")
        contact = polygon_contact_clean(mesh, poly)
        certs["complementary-immersed"] = contact is None
        if contact is not None:
            report["violation_witness"] = contact
    report["certificates"] = certs
    _write_report(report, args.report)
    return 0 if all(certs.values()) else 1


def cmd_bounds(args) -> int:
    poly = read_polygon(args.polygon)
    n, dim = len(poly.vertices), poly.dim
    report: dict = {"input": args.polygon, "n": n, "dim": dim}
    c = w = None
    if dim == 2:
        c, w = 0, 0
    elif dim == 3:
        projections = []
        for seed in range(args.projections):
            dia = project_polygon(poly, seed=seed)
            projections.append({"seed": seed, "c": len(dia.crossings),
                                "w": dia.writhe})
        report["projections"] = projections
        w = max((p["w"] for p in projections), key=abs)
        c = projections[0]["c"]
        report["max_abs_writhe"] = abs(w)
    report["bounds"] = bounds_report(n, dim=dim, c=c, w=w,
                                     g=args.knot_genus,
                                     gstar=args.unoriented_genus)
    _write_report(report, args.report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="plspan",
        description="Triangulated spanning surfaces for closed polygons")
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a polygon from a family")
    g.add_argument("--family", required=True,
                   choices=["torus", "twist", "ngon", "random"])
    g.add_argument("--m", type=int, help="family parameter (torus, twist)")
    g.add_argument("--n", type=int, help="vertex count (ngon, random)")
    g.add_argument("--dim", type=int, help="ambient dimension")
    g.add_argument("--seed", type=int, default=_default_seed())
    g.add_argument("--out", help="output polygon path (default stdout)")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("span", help="build and verify a spanning surface")
    s.add_argument("polygon", help="input polygon path")
    s.add_argument("--strategy", default="auto",
                   choices=["auto", "earclip", "seifert", "immersed4",
                            "embedded4", "cone"])
    s.add_argument("--rule", default="orientation",
                   choices=["orientation", "white-edge"])
    s.add_argument("--seed", type=int, default=_default_seed())
    s.add_argument("--knot-genus", type=int, default=None,
                   help="user-supplied knot genus for the bounds block")
    s.add_argument("--mesh-out", help="write the surface as an OFF file")
    s.add_argument("--report", help="report path (default stdout)")
    s.set_defaults(func=cmd_span)

    v = sub.add_parser("verify", help="re-run mesh checks on files")
    v.add_argument("mesh", help="OFF mesh path")
    v.add_argument("--polygon", help="polygon the mesh should span")
    v.add_argument("--mode", default="embedded",
                   choices=["embedded", "immersed"])
    v.add_argument("--report", help="report path (default stdout)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="evaluate count bounds for a polygon")
    b.add_argument("polygon", help="input polygon path")
    b.add_argument("--projections", type=int, default=8,
                   help="seeded projections used to estimate writhe (dim 3)")
    b.add_argument("--knot-genus", type=int, default=None)
    b.add_argument("--unoriented-genus", default=None,
                   help="half-integers accepted, e.g. 1/2")
    b.add_argument("--report", help="report path (default stdout)")
    b.set_defaults(func=cmd_bounds)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)
