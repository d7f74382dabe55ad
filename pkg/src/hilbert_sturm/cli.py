"""Command line interface: resolve, invariants, bound, sturm-set, check, atlas."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .bounds import PreconditionError, appendix_b_bound, general_bound, hecke_bound, sturm_bound
from .cuspres import CONVENTIONS, CuspResolution, resolve_all_cusps
from .fourier import format_dual, sturm_set
from .ideals import FracIdeal, narrow_class_group
from .invariants import UnsupportedSurface, classify, intersection_numbers, select_n, zeta_minus_one
from .qfield import QuadElem, format_elem, is_fundamental_discriminant
from .sturmcheck import canonical_map, check_congruence, check_vanishing, read_coeff_file, sturm_set_for


def _pair(q: QuadElem) -> list[str]:
    return [str(q.x), str(q.y)]


def _ideal(args) -> FracIdeal:
    D = args.D
    if getattr(args, "ideal", None):
        gens = []
        for g in args.ideal:
            x, _, y = g.partition(",")
            gens.append(QuadElem(Fraction(x), Fraction(y or 0), D))
        return FracIdeal.from_generators(gens, D)
    G = narrow_class_group(D)
    if not 0 <= args.cls < G.order:
        raise ValueError(f"class index must be in 0..{G.order - 1}")
    return G.reps[args.cls]


def resolution_dict(res: CuspResolution) -> dict:
    alpha, beta = res.lattice.basis
    return {
        "lattice": [_pair(beta), _pair(alpha)],
        "form": list(res.form.as_tuple()),
        "cycle": list(res.cycle),
        "self_intersections": list(res.self_intersections),
        "r": res.r, "nu": res.nu, "unit_index": res.unit_index, "r_tilde": res.r_tilde,
        "sigma": res.sigma, "singular": res.singular, "double_point": res.double_point,
        "multiplicity": res.multiplicity,
        "vertices": [_pair(v) for v in res.vertices],
        "vertices_text": [format_elem(v) for v in res.vertices],
        "normalized_vertices": [_pair(v) for v in res.normalized_vertices()],
        "unit": _pair(res.eta),
    }


def _emit(args, payload, text=None, rows=None):
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv" and rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        out = buf.getvalue()
    else:
        out = (text if text is not None else json.dumps(payload, sort_keys=True, indent=2)) + "\n"
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def cmd_resolve(args) -> int:
    a = _ideal(args)
    cs = resolve_all_cusps(args.D, a, args.n, args.convention)
    payload = {"D": args.D, "a_class": narrow_class_group(args.D).class_index(a),
               "level": args.n, "convention": args.convention,
               "cusps": [resolution_dict(c) for c in cs]}
    lines = [f"D={args.D} level={args.n} cusps={len(cs)}"]
    for i, c in enumerate(cs):
        lines.append(f"cusp {i}: cycle {tuple(c.cycle)}  vertices " +
                     ", ".join(format_elem(v) for v in c.vertices[1:-1]))
    rows = [["cusp", "cycle", "sigma"]] + [[i, " ".join(map(str, c.cycle)), c.sigma]
                                           for i, c in enumerate(cs)]
    _emit(args, payload, "\n".join(lines), rows)
    return 0


def cmd_invariants(args) -> int:
    a = _ideal(args)
    sc = classify(args.D, a)
    payload = {"D": args.D, "a_class": sc.a_class, "zeta": str(zeta_minus_one(args.D)),
               "principal_genus": sc.principal_genus, "rational": sc.is_rational,
               "conjecture_known": sc.conjecture_known, "reasons": list(sc.reasons)}
    try:
        choice = select_n(args.D, a)
    except UnsupportedSurface as exc:
        payload["route"] = "unsupported"
        payload["error"] = str(exc)
        _emit(args, payload)
        return 2
    payload.update(n=choice.n, route=choice.route, route_detail=choice.detail)
    if choice.route != "AppendixB":
        n = args.n if args.n > 1 else choice.n
        rep = intersection_numbers(args.D, a, n)
        payload["intersection"] = {
            "n": rep.n, "d": rep.d, "unit_index": rep.unit_index, "c_prime": rep.c_prime,
            "sigmas": list(rep.sigmas), "K.S": [str(x) for x in rep.K_S],
            "S.S": [str(x) for x in rep.S_S], "K.K": str(rep.K_K)}
    _emit(args, payload)
    return 0


def cmd_bound(args) -> int:
    if args.appendix_b:
        rep = appendix_b_bound(args.D, args.weight, args.s, principal_genus=args.cls == 0)
    else:
        a = _ideal(args)
        if args.prime:
            rep = sturm_bound(args.D, a, args.cusp, args.weight, args.s, args.prime, args.convention)
        elif args.weight2 is not None or args.index != 1:
            k2 = args.weight if args.weight2 is None else args.weight2
            rep = general_bound(args.D, a, args.cusp, (args.weight, k2), args.s, args.index,
                                args.convention)
        else:
            rep = hecke_bound(args.D, a, args.cusp, args.weight, args.s, args.convention)
    text = (f"D={rep.D} weight={rep.weight} s={rep.s} n={rep.n} route={rep.route}: "
            f"a > {rep.threshold}  (a_min={rep.a_min}, check traces < {rep.T})")
    _emit(args, rep.as_dict(), text)
    return 0


def cmd_sturm_set(args) -> int:
    a = _ideal(args)
    S = sturm_set(args.D, a, (args.weight, args.weight), args.s, args.cusp, args.convention)
    payload = {"bound": S.report.as_dict(), "count": S.count,
               "ideal_count_experimental": S.ideal_count(),
               "reps": [list(map(str, r.row())) for r in S.reps],
               "reps_text": [format_dual(r.xi) for r in S.reps]}
    rows = [["x_num", "x_den", "y_num", "y_den", "witness_j", "trace"]] + [list(r.row()) for r in S.reps]
    text = "\n".join([f"{S.count} representatives (traces < {S.T})"] +
                     [f"{format_dual(r.xi)}  j={r.witness} trace={r.trace}" for r in S.reps])
    _emit(args, payload, text, rows)
    return 0


def cmd_check(args) -> int:
    cf = read_coeff_file(args.coefficients)
    S = sturm_set_for(cf)
    A = canonical_map(cf.entries, S)
    if args.against:
        cg = read_coeff_file(args.against)
        if (cg.D, cg.a_class, cg.weight, cg.s, cg.cusp) != (cf.D, cf.a_class, cf.weight, cf.s, cf.cusp):
            raise ValueError("the two coefficient files describe different spaces")
        v = check_congruence(A, canonical_map(cg.entries, S), args.prime, S)
    else:
        v = check_vanishing(A, S, args.prime)
    _emit(args, v.as_dict(), f"{v.status}: {v.message}".rstrip(": "))
    return 0 if v.certified else 1


# atlas -------------------------------------------------------------------------

def atlas_rows(D: int, convention: str = "wide") -> list[dict]:
    rows = []
    G = narrow_class_group(D)
    for ci, a in enumerate(G.reps):
        row = {"D": D, "class": ci, "form": " ".join(map(str, G.forms[ci].as_tuple())),
               "zeta": str(zeta_minus_one(D))}
        cs = resolve_all_cusps(D, a, convention=convention)
        row["cycles"] = ";".join(" ".join(map(str, c.cycle)) for c in cs)
        row["sigmas"] = " ".join(str(c.sigma) for c in cs)
        try:
            choice = select_n(D, a, total_sigma=cs.total_sigma)
        except UnsupportedSurface:
            row.update(route="unsupported", n="", k_coeff="", s_coeff="")
            rows.append(row)
            continue
        row.update(route=choice.route, n=choice.n)
        if choice.route == "AppendixB":
            rep = appendix_b_bound(D, 1, 0, principal_genus=classify(D, a).principal_genus)
        else:
            rep = general_bound(D, a, 0, (1, 1), 0, 1, convention)
        row.update(k_coeff=str(rep.k_coeff), s_coeff=str(rep.s_coeff))
        rows.append(row)
    return rows


ATLAS_FIELDS = ["D", "class", "form", "zeta", "cycles", "sigmas", "route", "n", "k_coeff", "s_coeff"]


def cycle_svg(cycle, title: str = "") -> str:
    """Polygon of resolution curves labeled with their self-intersections."""
    r = len(cycle)
    size, rad = 240, 80
    pts = [(size / 2 + rad * math.cos(2 * math.pi * i / r - math.pi / 2),
            size / 2 + rad * math.sin(2 * math.pi * i / r - math.pi / 2)) for i in range(r)]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
             f'<text x="8" y="16" font-size="12">{title}</text>']
    if r > 1:
        poly = " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)
        parts.append(f'<polygon points="{poly}" fill="none" stroke="black"/>')
    for (x, y), b in zip(pts, cycle):
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="12" fill="white" stroke="black"/>')
        parts.append(f'<text x="{x:.1f}" y="{y + 4:.1f}" font-size="11" text-anchor="middle">{-b}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_atlas(args) -> int:
    Ds = [D for D in range(args.min, args.max + 1) if is_fundamental_discriminant(D)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            chunks = list(ex.map(atlas_rows, Ds, [args.convention] * len(Ds)))
    else:
        chunks = [atlas_rows(D, args.convention) for D in Ds]
    rows = [r for ch in chunks for r in ch]
    if args.svg:
        out = Path(args.svg)
        out.mkdir(parents=True, exist_ok=True)
        for r in rows:
            for i, cyc in enumerate(r["cycles"].split(";")):
                b = [int(x) for x in cyc.split()]
                (out / f"D{r['D']}_class{r['class']}_cusp{i}.svg").write_text(
                    cycle_svg(b, f"D={r['D']} class {r['class']} cusp {i}"))
    table = [ATLAS_FIELDS] + [[r[k] for k in ATLAS_FIELDS] for r in rows]
    if args.format == "csv" or args.format == "text":
        args.format = "csv"
    _emit(args, rows, None, table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hilbert-sturm", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, weight=False):
        p.add_argument("-D", type=int, required=True, help="fundamental discriminant")
        p.add_argument("--class", dest="cls", type=int, default=0,
                       help="narrow class index (sorted by reduced form (a, b))")
        p.add_argument("--ideal", nargs="+", metavar="X,Y",
                       help="ideal generators x + y*sqrt(D) instead of --class")
        p.add_argument("--convention", choices=CONVENTIONS, default="wide")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("-o", "--output")
        if weight:
            p.add_argument("-k", "--weight", type=int, default=2, help="parallel weight 2k")
            p.add_argument("-s", type=int, default=0, help="vanishing order at all cusps")
            p.add_argument("--cusp", type=int, default=0, help="cusp index i0")

    p = sub.add_parser("resolve", help="resolution cycles of all cusps")
    common(p)
    p.add_argument("-n", type=int, default=1, help="level (n)")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("invariants", help="zeta value, classification, level choice")
    common(p)
    p.add_argument("-n", type=int, default=1, help="override the selected level")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("bound", help="vanishing threshold")
    common(p, weight=True)
    p.add_argument("--weight2", type=int, help="second weight k2 for non-parallel weight")
    p.add_argument("--index", type=int, default=1, help="index of the level subgroup")
    p.add_argument("--appendix-b", action="store_true", help="use the stored rational-surface table")
    p.add_argument("-p", "--prime", type=int, help="Sturm variant modulo p")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sturm-set", help="Fourier indices that must be checked")
    common(p, weight=True)
    p.set_defaults(func=cmd_sturm_set)

    p = sub.add_parser("check", help="certify vanishing or a congruence on the certifying set")
    p.add_argument("coefficients", help="coefficient CSV file")
    p.add_argument("-p", "--prime", type=int, help="work modulo p")
    p.add_argument("--against", help="second coefficient file for a congruence check")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("atlas", help="cycles and bounds for a range of discriminants")
    p.add_argument("--min", type=int, default=5)
    p.add_argument("--max", type=int, default=50)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--svg", help="directory for cycle diagrams")
    p.add_argument("--convention", choices=CONVENTIONS, default="wide")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_atlas)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check" and args.against and not args.prime:
        print("error: --against needs --prime", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, IndexError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
