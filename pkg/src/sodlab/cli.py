"""``sodlab`` command line interface.

Output is JSON on stdout unless ``--output table`` is given.  Exit codes:
0 success, 1 domain error (message on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable, Sequence

from . import catalog, descent, excol, links, numk, piclat, surfdb, weylgal
from .numk import KClass
from .piclat import LatticeError, SurfaceModel, format_divisor, surface_from_name


class UsageError(Exception):
    pass


# ------------------------------------------------------------ parsing helpers


def _surface(args) -> SurfaceModel:
    return surface_from_name(args.surface)


def _divisor(S: SurfaceModel, text: str):
    return S.parse(text)


_KCLASS = re.compile(r"^(-)?O\((.*)\)$")


def parse_kclass(S: SurfaceModel, text: str) -> KClass:
    """``O(D)``, ``-O(D)``, ``rank:c1:c2`` or ``rank:c1`` (c2 from chi(E,E) = 1)."""
    text = text.strip()
    m = _KCLASS.match(text)
    if m:
        E = numk.line_bundle(S.parse(m.group(2)))
        return numk.negate(S, E) if m.group(1) else E
    parts = text.split(":")
    if len(parts) == 3:
        return KClass(int(parts[0]), S.parse(parts[1]), int(parts[2]))
    if len(parts) == 2:
        return numk.exceptional_bundle(S, int(parts[0]), S.parse(parts[1]))
    raise LatticeError(f"cannot parse K-class {text!r}; use O(D), rank:c1:c2 or rank:c1")


def _kdict(S: SurfaceModel, E: KClass) -> dict:
    d = E.to_dict()
    d["c1_text"] = format_divisor(S, E.c1)
    return d


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


# ------------------------------------------------------------ command handlers


def cmd_surface_info(args) -> dict:
    S = _surface(args)
    out = {
        "name": S.name,
        "degree": S.degree,
        "picard_rank": S.picard_rank,
        "basis_labels": S.basis_labels,
        "gram": [list(r) for r in S.gram],
        "K": piclat.canonical_class(S).to_list(),
    }
    if args.intersect:
        D1, D2 = (_divisor(S, t) for t in args.intersect)
        out["intersect"] = {"D": D1.to_list(), "D2": D2.to_list(), "value": piclat.intersect(S, D1, D2)}
    return out


def cmd_classes_enumerate(args) -> dict:
    S = _surface(args)
    if args.kind == "lines":
        s, k = -1, -1
    elif args.kind == "roots":
        s, k = -2, 0
    else:
        if args.self_int is None or args.k_int is None:
            raise UsageError("classes enumerate needs --kind or both --self-int and --k-int")
        s, k = args.self_int, args.k_int
    cls = piclat.enumerate_classes(S, s, k)
    return {"surface": S.name, "self_int": s, "k_int": k, "count": len(cls),
            "classes": [c.to_list() for c in cls]}


def cmd_chi(args) -> dict:
    S = _surface(args)
    if args.divisor is not None:
        D = _divisor(S, args.divisor)
        return {"surface": S.name, "D": D.to_list(), "rr_chi": piclat.rr_chi(S, D),
                "line_bundle": _kdict(S, numk.line_bundle(D))}
    if args.E is None:
        raise UsageError("chi needs --divisor or --E [--F]")
    E = parse_kclass(S, args.E)
    if args.F is None:
        return {"surface": S.name, "E": _kdict(S, E), "chi": numk.chi(S, E)}
    F = parse_kclass(S, args.F)
    return {"surface": S.name, "E": _kdict(S, E), "F": _kdict(S, F),
            "chi_EF": numk.euler_pairing(S, E, F), "chi_FE": numk.euler_pairing(S, F, E)}


def cmd_kclass(args) -> dict:
    S = _surface(args)
    E = parse_kclass(S, args.E)
    op = args.op
    if op == "sum":
        if args.F is None:
            raise UsageError("kclass sum needs --F")
        res = numk.direct_sum(S, E, parse_kclass(S, args.F))
    elif op == "twist":
        if args.divisor is None:
            raise UsageError("kclass twist needs --divisor")
        res = numk.twist(S, E, _divisor(S, args.divisor))
    elif op == "multiple":
        if args.m is None:
            raise UsageError("kclass multiple needs --m")
        res = numk.multiple(S, E, args.m)
    elif op == "dual":
        res = numk.dual(E)
    else:
        res = E
    return {"surface": S.name, "op": op, "E": _kdict(S, E), "result": _kdict(S, res),
            "coordinates": numk.coordinates(S, res)}


def cmd_mutate(args) -> dict:
    S = _surface(args)
    if args.serre is not None:
        E = parse_kclass(S, args.serre)
        return {"surface": S.name, "op": "serre_twist", "E": _kdict(S, E),
                "result": _kdict(S, excol.serre_twist(S, E))}
    if args.F is None:
        raise UsageError("mutate needs --F (with --E or --block) or --serre")
    F = parse_kclass(S, args.F)
    if args.block:
        block = [parse_kclass(S, t) for t in args.block]
        res = excol.mutate_block(S, block, F, args.direction)
        return {"surface": S.name, "op": "mutate_block", "direction": args.direction,
                "block": [_kdict(S, b) for b in block], "F": _kdict(S, F), "result": _kdict(S, res)}
    if args.E is None:
        raise UsageError("mutate needs --E or --block")
    E = parse_kclass(S, args.E)
    if args.direction == "left":
        res = excol.left_mutate(S, E, F)
    else:
        res = excol.right_mutate(S, E, F)
    pair = [res, E] if args.direction == "left" else [F, res]
    rep = excol.verify_sod(excol.MarkedCollection(S, pair))
    return {"surface": S.name, "op": f"{args.direction}_mutate", "E": _kdict(S, E), "F": _kdict(S, F),
            "chi_EF": numk.euler_pairing(S, E, F), "result": _kdict(S, res),
            "new_pair": [_kdict(S, c) for c in pair],
            "new_pair_exceptional": rep.is_numerically_exceptional,
            "new_pair_backward_orthogonal": rep.backward_orthogonal}


def _entry(args):
    if args.degree is None:
        raise UsageError("--degree is required (or --all for verify)")
    e = catalog.three_block(args.degree, args.variant or "")
    return catalog.corrected_entry(e) if getattr(args, "corrected", False) else e


def cmd_catalog_show(args) -> dict:
    return _entry(args).to_dict()


def cmd_catalog_verify(args) -> dict | list:
    if args.all:
        entries = catalog.all_entries()
        if args.corrected:
            entries = [catalog.corrected_entry(e) for e in entries]
        return [catalog.check_entry(e).to_dict() for e in entries]
    return catalog.check_entry(_entry(args)).to_dict()


def cmd_replay_dp5(args) -> dict:
    return catalog.replay_dp5().to_dict()


def cmd_replay_dp6(args) -> dict:
    steps = catalog.replay_dp6(args.case)
    return {"case": args.case, "steps": [s.to_dict() for s in steps],
            "all_backward_orthogonal": all(s.report.backward_orthogonal for s in steps)}


def cmd_descent_check(args) -> dict:
    rep = descent.check_case(args.case, args.bound)
    return rep.to_dict(args.max_witnesses)


def cmd_descent_scenario(args) -> dict:
    return descent.run_scenario(args.file, args.max_witnesses)


def cmd_descent_solve(args) -> dict:
    key = args.case.replace("(", "").replace(")", "").replace(" ", "").lower()
    if key not in descent.CASES:
        raise descent.UnknownCase(f"unknown case {args.case!r}; known: {', '.join(descent.CASES)}")
    case = descent.CASES[key]
    if args.block not in case.blocks:
        raise LatticeError(f"case {key} has no block {args.block!r}; known: {', '.join(case.blocks)}")
    P = descent._problem(case, args.block)
    return {"case": key, "block": args.block, "problem": P.to_dict(),
            "solution": descent.solve_fixed_coefficients(P, _ints(args.x)).to_dict()}


def cmd_links_matrix(args) -> dict | list:
    keys = sorted(links.TABLE, reverse=True) if args.all else [(args.deg_surface, args.deg_point)]
    out = []
    for ds, dp in keys:
        d = links.link_matrix(ds, dp).to_dict()
        d["derived_matrix"] = links.expand_link(ds, dp).to_dict()["derived_matrix"]
        out.append(d)
    return out if args.all else out[0]


def cmd_links_expand(args) -> dict:
    return links.expand_link(args.deg_surface, args.deg_point).to_dict()


def cmd_links_classify(args) -> dict:
    return links.classify_f_classes(args.deg_surface, args.deg_point).to_dict()


def cmd_links_homaloidal(args) -> dict:
    systems = links.homaloidal_systems(args.r)
    return {"r": args.r, "degree_bound": links.degree_bound(args.r), "count": len(systems),
            "systems": [s.to_dict() for s in systems]}


def _cases(args) -> list:
    if args.all:
        return surfdb.all_cases()
    if args.table is None:
        raise UsageError("index needs --table (and --row) or --all")
    return [surfdb.surface_case(args.table, args.row)]


def cmd_index_compute(args) -> dict:
    case = surfdb.surface_case(args.table, args.row)
    m = _ints(args.m)
    return {"case": case.to_dict(), "multiplicities": m, "c2": surfdb.c2_values(case, m),
            "index_from_c2": surfdb.index_from_c2(case, m)}


def cmd_index_witness(args) -> dict | list:
    out = [surfdb.index_report(c, args.m_max) for c in _cases(args)]
    return out if args.all else out[0]


def cmd_roots(args) -> dict:
    S = _surface(args)
    simple = weylgal.simple_roots(S)
    out = {"surface": S.name, "simple_roots": [a.to_list() for a in simple]}
    if args.all:
        rs = weylgal.root_closure(S)
        out["root_count"] = len(rs)
        out["roots"] = [a.to_list() for a in rs]
    return out


def cmd_reflect(args) -> dict:
    S = _surface(args)
    D, a = _divisor(S, args.divisor), _divisor(S, args.root)
    return {"surface": S.name, "D": D.to_list(), "root": a.to_list(),
            "result": weylgal.reflect(S, D, a).to_list()}


def cmd_orbit(args) -> dict:
    S = _surface(args)
    D = _divisor(S, args.divisor)
    gens = [_divisor(S, g) for g in args.gens] if args.gens else None
    orb = weylgal.orbit(S, D, gens, cap=args.cap)
    return {"surface": S.name, "D": D.to_list(), "size": len(orb), "orbit": [c.to_list() for c in orb]}


def _generator(S: SurfaceModel, text: str):
    text = text.strip()
    if text.startswith("perm:"):
        return weylgal.Permutation(tuple(_ints(text[5:])))
    return _divisor(S, text)


def cmd_invariant(args) -> dict:
    S = _surface(args)
    classes = [_divisor(S, c) for c in args.classes]
    ranks = _ints(args.ranks) if args.ranks else None
    gens = [_generator(S, g) for g in args.gens]
    w = weylgal.invariant_combination(S, classes, ranks, gens)
    return {"surface": S.name, "classes": [c.to_list() for c in classes],
            "witness": None if w is None else w.to_dict()}


# ------------------------------------------------------------ table rendering


def _render_rows(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in header]] + [[json.dumps(c) if isinstance(c, (list, dict)) else str(c) for c in r]
                                          for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _table_catalog_verify(data) -> str:
    data = data if isinstance(data, list) else [data]
    rows = [[d["label"], d["completeness"], d["count_ok"], d["ranks_ok"], d["markov_ok"],
             d["sod"]["all_pass"], d["sod"]["basis_det"], d["passed"]] for d in data]
    return _render_rows(["entry", "data", "count", "ranks", "markov", "sod", "det", "match"], rows)


def _table_index(data) -> str:
    data = data if isinstance(data, list) else [data]
    rows = []
    for d in data:
        rc = d["recompute"]
        rows.append([d["row"], d["index"], rc["stored"], rc["recomputed"], d["witness"], d["witness_c2"],
                     d["index_from_c2"], rc["ok"] and d["index_from_c2"] == d["index"]])
    return _render_rows(["row", "ind", "printed (rk,c2)", "recomputed", "m", "c2", "gcd", "match"], rows)


def _table_links(data) -> str:
    data = data if isinstance(data, list) else [data]
    rows = [[f"M{d['deg_surface']},{d['deg_point']}", d["m"], d["derived_matrix"], d["involution"], d["det"],
             d["derived_matrix"] == d["involution"]] for d in data]
    return _render_rows(["link", "printed", "derived", "sign-conjugate", "det", "match"], rows)


def _table_generic(data) -> str:
    if isinstance(data, list):
        return "\n\n".join(_table_generic(d) for d in data)
    lines = []
    for k, v in data.items():
        lines.append(f"{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}")
    return "\n".join(lines)


# ------------------------------------------------------------ parser


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--output", choices=["json", "table"], default="json")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, Callable]]:
    parser = argparse.ArgumentParser(prog="sodlab", description="Numerical exceptional collections on del Pezzo surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    dispatch: dict[str, Callable] = {}
    parser.leaves = {}

    def leaf(parent, name: str, key: str, fn: Callable, help: str):
        p = parent.add_parser(name, help=help)
        _add_common(p)
        p.set_defaults(_key=key)
        dispatch[key] = fn
        parser.leaves[key] = p
        return p

    def group(name: str, help: str):
        p = sub.add_parser(name, help=help)
        return p.add_subparsers(dest="action", required=True)

    def surf(p, default=None):
        p.add_argument("--surface", required=default is None, default=default,
                       help="P2, Quadric, BlowupP2(r) or dP<d>")

    g = group("surface", "Picard lattice of a split model")
    p = leaf(g, "info", "surface info", cmd_surface_info, "basis, Gram matrix, canonical class")
    surf(p)
    p.add_argument("--intersect", nargs=2, metavar="D")

    g = group("classes", "class enumeration")
    p = leaf(g, "enumerate", "classes enumerate", cmd_classes_enumerate, "classes with given D.D and D.K")
    surf(p)
    p.add_argument("--kind", choices=["lines", "roots"])
    p.add_argument("--self-int", type=int)
    p.add_argument("--k-int", type=int)

    p = leaf(sub, "chi", "chi", cmd_chi, "Riemann-Roch and Euler pairing")
    surf(p)
    p.add_argument("--divisor")
    p.add_argument("--E")
    p.add_argument("--F")

    p = leaf(sub, "kclass", "kclass", cmd_kclass, "operations on numerical K-classes")
    surf(p)
    p.add_argument("op", choices=["show", "sum", "twist", "multiple", "dual"])
    p.add_argument("--E", required=True)
    p.add_argument("--F")
    p.add_argument("--divisor")
    p.add_argument("--m", type=int)

    p = leaf(sub, "mutate", "mutate", cmd_mutate, "mutations and Serre twist")
    surf(p)
    p.add_argument("--E")
    p.add_argument("--F")
    p.add_argument("--block", nargs="+")
    p.add_argument("--serre")
    p.add_argument("--direction", choices=["left", "right"], default="left")

    g = group("catalog", "3-block decompositions")
    for name, fn in (("show", cmd_catalog_show), ("verify", cmd_catalog_verify)):
        p = leaf(g, name, f"catalog {name}", fn, f"{name} a catalog entry")
        p.add_argument("--degree")
        p.add_argument("--variant", default="")
        p.add_argument("--corrected", action="store_true", help="apply recorded errata")
        if name == "verify":
            p.add_argument("--all", action="store_true")

    g = group("replay", "mutation replays")
    leaf(g, "dp5", "replay dp5", cmd_replay_dp5, "degree 5 construction")
    p = leaf(g, "dp6", "replay dp6", cmd_replay_dp6, "degree 3 / 2 mutation sequences")
    p.add_argument("--case", choices=["deg3", "deg2"], default="deg3")

    g = group("descent", "twist-descent obstruction engine")
    p = leaf(g, "check", "descent check", cmd_descent_check, "run one theorem case")
    p.add_argument("--case", required=True)
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--max-witnesses", type=int, default=20)
    p = leaf(g, "scenario", "descent scenario", cmd_descent_scenario, "run a scenario JSON file")
    p.add_argument("--file", required=True)
    p.add_argument("--max-witnesses", type=int, default=20)
    p = leaf(g, "solve", "descent solve", cmd_descent_solve, "all twists for fixed coefficients")
    p.add_argument("--case", required=True)
    p.add_argument("--block", required=True)
    p.add_argument("--x", required=True, help="comma separated coefficients")

    g = group("links", "Sarkisov links and homaloidal systems")
    for name, fn in (("matrix", cmd_links_matrix), ("expand", cmd_links_expand), ("classify", cmd_links_classify)):
        p = leaf(g, name, f"links {name}", fn, f"link {name}")
        p.add_argument("--deg-surface", type=int, required=name != "matrix")
        p.add_argument("--deg-point", type=int, required=name != "matrix")
        if name == "matrix":
            p.add_argument("--all", action="store_true")
    p = leaf(g, "homaloidal", "links homaloidal", cmd_links_homaloidal, "homaloidal systems on r points")
    p.add_argument("--r", type=int, required=True)

    g = group("index", "index tables and gcd of c2")
    p = leaf(g, "compute", "index compute", cmd_index_compute, "gcd of c2 at given multiplicities")
    p.add_argument("--table", required=True)
    p.add_argument("--row", default="")
    p.add_argument("--m", required=True, help="m0,m1,m2")
    p = leaf(g, "witness", "index witness", cmd_index_witness, "smallest multiplicities reaching the index")
    p.add_argument("--table")
    p.add_argument("--row", default="")
    p.add_argument("--all", action="store_true")
    p.add_argument("--m-max", type=int, default=4)

    p = leaf(sub, "roots", "roots", cmd_roots, "simple roots, optionally all roots")
    surf(p)
    p.add_argument("--all", action="store_true")
    p = leaf(sub, "reflect", "reflect", cmd_reflect, "reflect a class in a root")
    surf(p)
    p.add_argument("--divisor", required=True)
    p.add_argument("--root", required=True)
    p = leaf(sub, "orbit", "orbit", cmd_orbit, "orbit under reflections")
    surf(p)
    p.add_argument("--divisor", required=True)
    p.add_argument("--gens", nargs="+")
    p.add_argument("--cap", type=int, default=weylgal.DEFAULT_ORBIT_CAP)
    p = leaf(sub, "invariant", "invariant", cmd_invariant, "Galois-invariant combination of classes")
    surf(p)
    p.add_argument("--classes", nargs="+", required=True)
    p.add_argument("--ranks")
    p.add_argument("--gens", nargs="+", required=True, help="roots, or perm:i1,...,ir")
    return parser, dispatch


_TABLES = {
    "catalog verify": _table_catalog_verify,
    "index witness": _table_index,
    "links matrix": _table_links,
}


def render(key: str, data, fmt: str) -> str:
    if fmt == "table":
        return _TABLES.get(key, _table_generic)(data)
    return json.dumps(data, indent=2)


def _protect_negatives(argv: Sequence[str]) -> list[str]:
    # values such as -K or -O(H) would otherwise be read as options;
    # argparse treats a token containing a space as a value
    return [" " + a if a.startswith("-") and not a.startswith("--") and a != "-h" else a for a in argv]


def main(argv: Sequence[str] | None = None) -> int:
    parser, dispatch = build_parser()
    args = parser.parse_args(_protect_negatives(sys.argv[1:] if argv is None else argv))
    key = args._key
    try:
        data = dispatch[key](args)
    except UsageError as exc:
        sys.stderr.write(parser.leaves[key].format_usage())
        print(f"sodlab {key}: error: {exc}", file=sys.stderr)
        return 2
    except (LatticeError, OSError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(key, data, args.output) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
