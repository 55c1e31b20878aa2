"""Command line interface: ``quadstokes <command> ...``.

Exit codes: 0 ok, 1 usage or input error, 2 internal invariant violation,
3 conjecture counterexample found.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import algebra, harness, species
from .compat import enumerate_compatible
from .complexes import f_triangle, f_vector
from .quad import (
    HEXAGON,
    TRIPOD,
    InvalidQuadrangulation,
    Quadrangulation,
    canonical_cross_tree,
    canonical_up_to_rotation,
    catalan_family,
    enumerate_all,
    has_cross,
    is_connected,
    parse_text,
    square,
    straight_ribbon,
)
from .rings import render
from .serpents import H_triangle, duality_report, enumerate_nests, h_vector, lucas_family, lucas_h, lucas_k, lucas_z
from .stokes import build_flip_digraph

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class InputError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


NAMED = {"square": square, "hexagon": lambda: HEXAGON, "tripod": lambda: TRIPOD}
FAMILIES = {"catalan": catalan_family, "ribbon": straight_ribbon, "lucas": lucas_family}


def load_quad(source: str) -> Quadrangulation:
    """A JSON file, ``N:a-b,c-d``, a name (square, hexagon, tripod) or ``family:n``."""
    if os.path.exists(source):
        try:
            with open(source) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError("malformed-json", f"{source}: {exc}") from exc
        try:
            return Quadrangulation.from_json(data)
        except InvalidQuadrangulation as exc:
            raise InputError("invalid-quadrangulation", f"{source}: {exc}") from exc
        except (ValueError, TypeError) as exc:
            raise InputError("malformed-json", f"{source}: {exc}") from exc
    if source in NAMED:
        return NAMED[source]()
    m = re.fullmatch(r"(\w+):(\d+)", source)
    if m and m.group(1) in FAMILIES:
        return FAMILIES[m.group(1)](int(m.group(2)))
    m = re.fullmatch(r"(\d+):([\d,\-]*)", source)
    if m:
        try:
            return parse_text(int(m.group(1)), m.group(2))
        except InvalidQuadrangulation as exc:
            raise InputError("invalid-quadrangulation", str(exc)) from exc
    raise InputError("missing-input", f"no such file or known shape: {source!r}")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_enumerate(args) -> int:
    if args.squares < 1 or args.squares > 9:
        raise InputError("size-bound", "--squares must be between 1 and 9")
    seen = set()
    out = []
    for q in enumerate_all(args.squares):
        if args.connected and not is_connected(q):
            continue
        if args.no_cross and has_cross(q):
            continue
        if args.up_to == "rotation":
            q = canonical_up_to_rotation(q)
        elif args.up_to == "twist":
            q = canonical_cross_tree(q)
        if q in seen:
            continue
        seen.add(q)
        out.append(q)
    out.sort()
    if args.json:
        _emit([q.to_json() for q in out])
    else:
        for q in out:
            print(f"{q.polygon}:{q.text()}")
    return EXIT_OK


def cmd_compat(args) -> int:
    q = load_quad(args.quad)
    qs = enumerate_compatible(q)
    if args.list:
        for p in qs:
            print(f"{p.polygon}:{p.text()}")
    else:
        print(len(qs))
    return EXIT_OK


def cmd_poset(args) -> int:
    q = load_quad(args.quad)
    g = build_flip_digraph(q)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(g.to_dot(undirected=args.undirected))
    if args.analyze or not args.dot:
        _emit(g.analysis())
    return EXIT_OK


def cmd_triangles(args) -> int:
    q = load_quad(args.quad)
    out = {
        "F": render(f_triangle(q)),
        "H": render(H_triangle(q)),
        "h": render(h_vector(q)),
        "f_vector": f_vector(q),
    }
    if args.json:
        _emit(out)
    else:
        for k in ("F", "H", "h"):
            print(f"{k} = {out[k]}")
        print("f-vector = " + " ".join(map(str, out["f_vector"])))
    return EXIT_OK


def cmd_serpents(args) -> int:
    q = load_quad(args.quad)
    nests = enumerate_nests(q)
    out = {
        "h": render(h_vector(q)),
        "H": render(H_triangle(q)),
        "count": len(nests),
        "fixed_points": duality_report(q)["fixed_points"],
    }
    if args.list:
        out["nests"] = [{"rank": s.rank, "squares": s.table()} for s in nests]
    _emit(out)
    return EXIT_OK


def cmd_species(args) -> int:
    if args.order < 2 or args.order > 60:
        raise InputError("size-bound", "--order must be between 2 and 60")
    system = species.solve_system(args.variant, args.order)
    print(species.table(system), end="")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(species.to_csv(system))
    return EXIT_OK


def cmd_lucas(args) -> int:
    if args.n < 1 or args.n > 40:
        raise InputError("size-bound", "--n must be between 1 and 40")
    rows = []
    for k in range(1, args.n + 1):
        z = lucas_z(k)
        rows.append({
            "n": k,
            "l": render(lucas_h(k)),
            "l(1)": lucas_h(k)(x=1),
            "k": render(lucas_k(k)),
            "Z": render(z),
            "Z(1)": z(x=1),
            "Z_positive": all(c > 0 for _, c in z.items()),
        })
    if args.check_nests:
        for r in rows:
            if r["n"] <= args.check_nests:
                r["nests_match"] = h_vector(lucas_family(r["n"])) == lucas_h(r["n"])
    _emit(rows)
    return EXIT_OK


def cmd_algebra(args) -> int:
    q = load_quad(args.demo)
    a = algebra.AlgebraElement.of(q)
    d = algebra.derivation(a)
    out = {
        "element": algebra.render(a),
        "derivation": algebra.render(d),
        "delta": algebra.render(algebra.delta(a)),
        "F": render(algebra.f_morphism(a)),
        "checks": algebra.check_f_morphism(a),
    }
    _emit(out)
    if not all(out["checks"].values()):
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_check(args) -> int:
    cids = [c.strip() for c in args.conjectures.split(",") if c.strip()]
    unknown = [c for c in cids if c not in harness.CONJECTURES]
    if unknown:
        raise InputError("usage", f"unknown conjectures {unknown}; known: {sorted(harness.CONJECTURES)}")
    if args.max_squares < 1 or args.max_squares > 6:
        raise InputError("size-bound", "--max-squares must be between 1 and 6")
    report = harness.run_sweep(cids, args.max_squares, args.workers)
    text = json.dumps(report, indent=1, sort_keys=True)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    for c in report["conjectures"]:
        t = c["totals"]
        verdict = "holds" if not t["counterexamples"] else "COUNTEREXAMPLE"
        print(f"{c['id']:<13} n<={c['scope']['max_squares']}  inputs={c['scope']['inputs']:<5} "
              f"holds={t['holds']:<5} counterexamples={t['counterexamples']:<4} {verdict}")
    if any(c["totals"]["counterexamples"] for c in report["conjectures"]):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadstokes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    quad_help = "JSON file, N:a-b,... text, square/hexagon/tripod, or catalan:n / ribbon:n / lucas:n"

    s = sub.add_parser("enumerate", help="list quadrangulations")
    s.add_argument("--squares", type=int, required=True)
    s.add_argument("--connected", action="store_true")
    s.add_argument("--up-to", choices=["rotation", "twist"])
    s.add_argument("--no-cross", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("compat", help="compatible quadrangulations of a backdrop")
    s.add_argument("--quad", required=True, help=quad_help)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true")
    g.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_compat)

    s = sub.add_parser("poset", help="oriented flip graph, DOT export and analysis")
    s.add_argument("--quad", required=True, help=quad_help)
    s.add_argument("--dot")
    s.add_argument("--analyze", action="store_true")
    s.add_argument("--undirected", action="store_true")
    s.set_defaults(func=cmd_poset)

    s = sub.add_parser("triangles", help="F-triangle, H-triangle, h-vector and f-vector")
    s.add_argument("--quad", required=True, help=quad_help)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_triangles)

    s = sub.add_parser("serpents", help="serpent nest statistics")
    s.add_argument("--quad", required=True, help=quad_help)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_serpents)

    s = sub.add_parser("species", help="type generating series")
    s.add_argument("--variant", choices=species.VARIANTS, default="quadrangulation")
    s.add_argument("--order", type=int, default=species.DEFAULT_ORDER)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_species)

    s = sub.add_parser("lucas", help="Lucas family h-vectors and Z factors")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--check-nests", type=int, default=0, metavar="K", help="brute-force nests for n <= K")
    s.set_defaults(func=cmd_lucas)

    s = sub.add_parser("algebra", help="derivation and exponential of a quadrangulation")
    s.add_argument("--demo", required=True, help=quad_help)
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("check", help="conjecture sweep")
    s.add_argument("--max-squares", type=int, required=True)
    s.add_argument("--conjectures", default=",".join(harness.CONJECTURES))
    s.add_argument("--report")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": exc.kind, "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, ArithmeticError) as exc:
        print(json.dumps({"error": "invariant-violation", "message": str(exc)}), file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
