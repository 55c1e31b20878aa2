"""Sweeps that test the open conjectures on every small quadrangulation.

Each conjecture maps one backdrop to a verdict; counterexamples carry the
backdrop JSON and the offending objects so they can be replayed.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .compat import enumerate_compatible
from .complexes import complexes_isomorphic, f_triangle
from .quad import Quadrangulation, enumerate_all, twist
from .rings import f_to_h_transform, render
from .serpents import H_symmetry, H_triangle, duality_report, enumerate_nests, h_vector
from .stokes import build_flip_digraph, reachable_no_twice, undirected_isomorphic

SCHEMA_VERSION = 1

# size bound per conjecture beyond which the sweep is refused
LIMITS = {"no-twice": 4}


def _count_match(q):
    a, b = len(enumerate_nests(q)), len(enumerate_compatible(q))
    return a == b, {"nests": a, "poset": b}


def _f_to_h(q):
    H = H_triangle(q)
    G = f_to_h_transform(f_triangle(q), q.n_inner)
    return H == G, {"H": render(H), "transform_of_F": render(G)}


def _h_symmetry(q):
    return H_symmetry(q), {"H": render(H_triangle(q))}


def _twist_partners(q):
    out = []
    for e in q.sorted_edges:
        for side in (0, 1):
            p = twist(q, e, side)
            if p != q:
                out.append((e, side, p))
    return out


def _twist_graph(q):
    bad = []
    for e, side, p in _twist_partners(q):
        if not undirected_isomorphic(build_flip_digraph(q), build_flip_digraph(p)):
            bad.append({"edge": list(e), "side": side, "partner": p.to_json(), "object": "flip graph"})
        elif not complexes_isomorphic(q, p):
            bad.append({"edge": list(e), "side": side, "partner": p.to_json(), "object": "complex"})
    return not bad, {"failures": bad} if bad else {}


def _twist_f(q):
    bad = []
    for e, side, p in _twist_partners(q):
        for name, fn in (("F", f_triangle), ("h", h_vector), ("H", H_triangle)):
            if fn(q) != fn(p):
                bad.append({"edge": list(e), "side": side, "partner": p.to_json(), "object": name,
                            "values": [render(fn(q)), render(fn(p))]})
    return not bad, {"failures": bad} if bad else {}


def _fixed_points(q):
    d = duality_report(q)
    ok = d["fixed_points"] == abs(d["h_at_minus_one"]) and d["involutive"] and d["realisable"] and d["rank_law"]
    return ok, d


def _no_twice(q):
    got = reachable_no_twice(q, max_squares=LIMITS["no-twice"])
    want = set(enumerate_compatible(q))
    literal = reachable_no_twice(q, max_squares=LIMITS["no-twice"], mode="global")
    detail = {"reachable": len(got), "poset": len(want), "global_reading_holds": literal == want}
    if got != want:
        detail["extra"] = [p.text() for p in sorted(got - want)]
        detail["missing"] = [p.text() for p in sorted(want - got)]
    return got == want, detail


def _lattice(q):
    g = build_flip_digraph(q)
    return g.is_lattice, {"vertices": len(g)}


CONJECTURES: dict[str, Callable[[Quadrangulation], tuple[bool, dict]]] = {
    "count-match": _count_match,
    "f-to-h": _f_to_h,
    "h-symmetry": _h_symmetry,
    "twist-graph": _twist_graph,
    "twist-F": _twist_f,
    "no-twice": _no_twice,
    "fixed-points": _fixed_points,
    "lattice": _lattice,
}


def _verdict(args):
    cid, q = args
    holds, detail = CONJECTURES[cid](q)
    v = {"input": q.to_json(), "holds": holds, "detail": detail}
    if not holds:
        v["counterexample"] = {"quadrangulation": q.to_json(), **detail}
    return v


def run_conjecture(cid: str, max_squares: int, workers: int = 1) -> dict:
    if cid not in CONJECTURES:
        raise KeyError(f"unknown conjecture {cid!r}; known: {sorted(CONJECTURES)}")
    limit = min(max_squares, LIMITS.get(cid, max_squares))
    inputs = [q for n in range(1, limit + 1) for q in enumerate_all(n)]
    jobs = [(cid, q) for q in inputs]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            verdicts = list(pool.map(_verdict, jobs, chunksize=16))
    else:
        verdicts = [_verdict(j) for j in jobs]
    verdicts.sort(key=lambda v: (v["input"]["polygon"], v["input"]["inner_edges"]))
    n_bad = sum(not v["holds"] for v in verdicts)
    out = {
        "id": cid,
        "scope": {"max_squares": limit, "requested_max_squares": max_squares, "inputs": len(verdicts)},
        "totals": {"holds": len(verdicts) - n_bad, "counterexamples": n_bad},
        "verdicts": verdicts,
    }
    if cid == "no-twice":
        out["totals"]["global_reading_holds"] = sum(v["detail"]["global_reading_holds"] for v in verdicts)
    return out


def run_sweep(cids, max_squares: int, workers: int = 1) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "conjectures": [run_conjecture(c, max_squares, workers) for c in cids],
    }
