"""Flips of compatible quadrangulations and the oriented flip digraph.

The digraph over all ``Q``-compatible quadrangulations, with arcs oriented
by the long-edge rule, is the Hasse diagram of the Stokes poset of ``Q``.
The source is ``Q`` itself and the sink is ``tau(Q)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from . import iso
from .compat import BLUE, RED, compatible_edges, enumerate_compatible, oriented, position, tau
from .quad import (
    Edge,
    Quadrangulation,
    bridge_indices,
    bridge_split,
    enumerate_all,
    is_boundary,
    norm_edge,
    rotate,
)

OUT, IN = "out", "in"


class FlipError(AssertionError):
    """A flip-level invariant failed (would contradict the theory)."""


@dataclass(frozen=True)
class Flip:
    source: Quadrangulation
    target: Quadrangulation
    hexagon: tuple[int, ...]
    removed: Edge
    inserted: Edge
    direction: str  # relative to source


def hexagon_of(qc: Quadrangulation, e: Edge) -> tuple[int, ...]:
    """Vertices (clockwise) of the union of the two squares on the inner edge ``e``."""
    (s, _), (t, _) = qc.sides[e]
    return tuple(sorted(set(qc.squares[s]) | set(qc.squares[t])))


def hexagon_diagonals(h: Sequence[int]) -> list[Edge]:
    return [norm_edge(h[i], h[i + 3]) for i in range(3)]


def _arc_inside(chord_positions, x) -> bool:
    lo, hi = sorted(chord_positions)
    return lo < x < hi


def long_edges(q: Quadrangulation, h: Sequence[int]) -> list[tuple[Edge, int]]:
    """Inner edges of the backdrop crossing two opposite sides of the red hexagon ``h``.

    Returns pairs ``(edge, entry side index)``; the entry side is the one
    crossed first when walking from the edge's white endpoint.
    """
    sides = [(h[i], h[(i + 1) % 6]) for i in range(6)]
    spos = [tuple(position(v, RED) for v in s) for s in sides]
    out = []
    for e in q.sorted_edges:
        bpos = [position(v, BLUE) for v in e]
        crossed = [i for i in range(6) if _arc_inside(spos[i], bpos[0]) != _arc_inside(spos[i], bpos[1])]
        if len(crossed) == 2 and crossed[1] - crossed[0] == 3:
            white = position(oriented(e)[0], BLUE)
            i, j = crossed
            if _arc_inside(spos[i], white) != _arc_inside(spos[i], spos[j][0]):
                out.append((e, i))
            else:
                out.append((e, j))
    return out


def orient(q: Quadrangulation, h: Sequence[int], removed: Edge, inserted: Edge) -> str:
    """Direction of the flip ``removed -> inserted`` for the quadrangulation holding ``removed``.

    The diagonal starting at the white vertex of the side through which the
    long edges enter the hexagon is the source of the oriented flip.
    """
    longs = long_edges(q, h)
    if not longs:
        raise FlipError(f"no long inner edge of {q} through hexagon {h}")
    entries = {i for _, i in longs}
    if len(entries) != 1:
        raise FlipError(f"long edges of {q} disagree in hexagon {h}: {longs}")
    (i,) = entries
    a, b = h[i], h[(i + 1) % 6]
    start = a if a % 2 == 0 else b
    if oriented(removed)[0] == start:
        return OUT
    if oriented(inserted)[0] == start:
        return IN
    raise FlipError(f"neither diagonal of {h} starts at entry vertex {start}")


def flip(q: Quadrangulation, qc: Quadrangulation, e: Edge) -> Flip:
    """Replace the inner edge ``e`` of ``qc`` by the unique other compatible diagonal."""
    e = norm_edge(*e)
    if e not in qc.edges:
        raise ValueError(f"{e} is not an inner edge of {qc}")
    allowed = set(compatible_edges(q).all)
    h = hexagon_of(qc, e)
    cands = [d for d in hexagon_diagonals(h) if d != e and d in allowed]
    if len(cands) != 1:
        raise FlipError(f"{len(cands)} compatible replacements for {e} in {qc} (backdrop {q})")
    new = cands[0]
    target = Quadrangulation(qc.polygon, (qc.edges - {e}) | {new})
    return Flip(qc, target, h, e, new, orient(q, h, e, new))


# ---------------------------------------------------------------------------
# digraphs


@dataclass(eq=False)
class Digraph:
    """A finite digraph with labelled vertices; also used for the Tamari reference."""

    vertices: tuple
    succ: list[list[int]]
    backdrop: Quadrangulation | None = None
    labels: list[str] | None = None
    index: dict = field(init=False)

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.vertices)}

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def pred(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for v, s in enumerate(self.succ):
            for w in s:
                out[w].append(v)
        return out

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return [(v, w) for v, s in enumerate(self.succ) for w in s]

    def n_arcs(self) -> int:
        return sum(map(len, self.succ))

    @cached_property
    def topological_order(self) -> list[int] | None:
        indeg = [len(p) for p in self.pred]
        todo = deque(v for v, d in enumerate(indeg) if d == 0)
        order = []
        while todo:
            v = todo.popleft()
            order.append(v)
            for w in self.succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    todo.append(w)
        return order if len(order) == len(self.vertices) else None

    @property
    def acyclic(self) -> bool:
        return self.topological_order is not None

    @cached_property
    def below(self) -> list[int]:
        """Bitsets of vertices reachable from each vertex (itself included)."""
        order = self.topological_order
        if order is None:
            raise ValueError("digraph has a cycle")
        out = [0] * len(self.vertices)
        for v in reversed(order):
            m = 1 << v
            for w in self.succ[v]:
                m |= out[w]
            out[v] = m
        return out

    @cached_property
    def above(self) -> list[int]:
        out = [0] * len(self.vertices)
        for v in self.topological_order or []:
            m = 1 << v
            for w in self.pred[v]:
                m |= out[w]
            out[v] = m
        return out

    def reachable(self, v: int, w: int) -> bool:
        return bool(self.below[v] >> w & 1)

    @property
    def transitively_reduced(self) -> bool:
        below = self.below
        for v, s in enumerate(self.succ):
            for w in s:
                if any(u != w and below[u] >> w & 1 for u in s):
                    return False
        return True

    @property
    def sources(self) -> list[int]:
        return [v for v, p in enumerate(self.pred) if not p]

    @property
    def sinks(self) -> list[int]:
        return [v for v, s in enumerate(self.succ) if not s]

    @property
    def connected(self) -> bool:
        if not self.vertices:
            return True
        adj = iso.undirected(self.succ)
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def degrees(self) -> list[int]:
        return [len(self.succ[v]) + len(self.pred[v]) for v in range(len(self.vertices))]

    @property
    def is_lattice(self) -> bool:
        """Every pair has a meet and a join (order decreasing along arcs)."""
        below, above = self.below, self.above
        down = set(below)
        up = set(above)
        n = len(self.vertices)
        for a in range(n):
            for b in range(a + 1, n):
                if (below[a] & below[b]) not in down or (above[a] & above[b]) not in up:
                    return False
        return True

    @property
    def graded(self) -> bool:
        """All paths from a source to any vertex have the same length."""
        order = self.topological_order
        if order is None:
            return False
        lo = [None] * len(order)
        hi = [None] * len(order)
        for v in order:
            if not self.pred[v]:
                lo[v] = hi[v] = 0
            else:
                lo[v] = min(lo[u] for u in self.pred[v]) + 1
                hi[v] = max(hi[u] for u in self.pred[v]) + 1
        if any(lo[v] != hi[v] for v in order):
            return False
        return len({lo[v] for v in self.sinks}) <= 1

    def analysis(self) -> dict:
        acyclic = self.acyclic
        return {
            "vertices": len(self.vertices),
            "arcs": self.n_arcs(),
            "acyclic": acyclic,
            "transitively_reduced": acyclic and self.transitively_reduced,
            "connected": self.connected,
            "degrees": sorted(set(self.degrees())),
            "sources": [self.label(v) for v in self.sources],
            "sinks": [self.label(v) for v in self.sinks],
            "lattice": acyclic and self.is_lattice,
            "graded": acyclic and self.graded,
        }

    def label(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        x = self.vertices[v]
        return x.text() if isinstance(x, Quadrangulation) else str(x)

    def to_dot(self, undirected: bool = False, name: str = "G") -> str:
        kind, arrow = ("graph", "--") if undirected else ("digraph", "->")
        lines = [f"{kind} {name} {{"]
        for v in range(len(self.vertices)):
            lines.append(f'  n{v} [label="{self.label(v)}"];')
        for v, w in sorted(self.arcs):
            lines.append(f"  n{v} {arrow} n{w};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# the Stokes poset's digraph is just a Digraph whose backdrop is set
FlipDigraph = Digraph


@lru_cache(maxsize=None)
def all_flips(q: Quadrangulation) -> tuple[Flip, ...]:
    return tuple(flip(q, qc, e) for qc in enumerate_compatible(q) for e in qc.sorted_edges)


@lru_cache(maxsize=None)
def build_flip_digraph(q: Quadrangulation) -> Digraph:
    """Oriented flip graph over the ``q``-compatible quadrangulations."""
    verts = tuple(sorted(enumerate_compatible(q)))
    index = {v: i for i, v in enumerate(verts)}
    succ: list[list[int]] = [[] for _ in verts]
    seen: dict[tuple[int, int], str] = {}
    for f in all_flips(q):
        i, j = index[f.source], index[f.target]
        seen[(i, j)] = f.direction
        if f.direction == OUT:
            succ[i].append(j)
    for (i, j), d in seen.items():
        back = seen.get((j, i))
        if back is None or back == d:
            raise FlipError(f"inconsistent orientation between {verts[i]} and {verts[j]}")
    return Digraph(verts, [sorted(s) for s in succ], backdrop=q)


def in_out_counts(q: Quadrangulation, qc: Quadrangulation) -> tuple[int, int]:
    flips = [flip(q, qc, e) for e in qc.sorted_edges]
    n_out = sum(f.direction == OUT for f in flips)
    return len(flips) - n_out, n_out


def product(a: Digraph, b: Digraph) -> Digraph:
    """Cartesian product: arcs move exactly one coordinate."""
    nb = len(b)
    verts = tuple((x, y) for x in a.vertices for y in b.vertices)
    succ = []
    for i in range(len(a)):
        for j in range(nb):
            out = [w * nb + j for w in a.succ[i]] + [i * nb + w for w in b.succ[j]]
            succ.append(sorted(out))
    return Digraph(verts, succ)


def digraph_isomorphic(a: Digraph, b: Digraph) -> bool:
    return iso.isomorphic(a.succ, b.succ)


def undirected_isomorphic(a: Digraph, b: Digraph) -> bool:
    return iso.isomorphic(iso.undirected(a.succ), iso.undirected(b.succ))


def bridge_factors(q: Quadrangulation) -> tuple[Quadrangulation, Quadrangulation]:
    """The two factors at the first bridge of ``q``."""
    bs = bridge_indices(q)
    if not bs:
        raise ValueError(f"{q} has no bridge")
    return bridge_split(q, bs[0])


def check_bridge_product(q: Quadrangulation) -> bool:
    q1, q2 = bridge_factors(q)
    return digraph_isomorphic(build_flip_digraph(q), product(build_flip_digraph(q1), build_flip_digraph(q2)))


# ---------------------------------------------------------------------------
# Tamari reference


def binary_trees(n: int) -> list:
    if n == 0:
        return [None]
    out = []
    for k in range(n):
        for left in binary_trees(k):
            for right in binary_trees(n - 1 - k):
                out.append((left, right))
    return out


def right_rotations(t) -> list:
    """Trees obtained by one rotation ``((A, B), C) -> (A, (B, C))`` anywhere in ``t``."""
    if t is None:
        return []
    left, right = t
    out = []
    if left is not None:
        a, b = left
        out.append((a, (b, right)))
    out += [(x, right) for x in right_rotations(left)]
    out += [(left, x) for x in right_rotations(right)]
    return out


def tree_text(t) -> str:
    if t is None:
        return "."
    return f"({tree_text(t[0])}{tree_text(t[1])})"


def tamari_reference(n: int) -> Digraph:
    """Tamari lattice on binary trees with ``n`` nodes, arcs along right rotations."""
    trees = binary_trees(n)
    index = {t: i for i, t in enumerate(trees)}
    succ = [sorted(index[s] for s in right_rotations(t)) for t in trees]
    return Digraph(tuple(trees), succ, labels=[tree_text(t) for t in trees])


# ---------------------------------------------------------------------------
# collapsing a leaf square


def leaf_frame(q: Quadrangulation, leaf: int) -> int:
    """Rotation bringing the middle boundary edge of a leaf square to ``(N-2, N-1)``."""
    s = q.squares[leaf]
    inner = [k for k in range(4) if not is_boundary(q.side_edge(leaf, k), q.polygon)]
    if len(inner) != 1:
        raise ValueError(f"square {s} is not a leaf")
    k0 = inner[0]
    j = s[(k0 + 2) % 4]
    return (q.polygon - 2 - j) % q.polygon


@dataclass(frozen=True)
class Collapse:
    """Data of the map collapsing a leaf square, in the rotated frame."""

    shift: int
    backdrop: Quadrangulation  # q rotated by shift
    smaller: Quadrangulation  # q without the leaf, on N-2 vertices
    pivot: int  # the red vertex the boundary section collapses onto


def collapse_setup(q: Quadrangulation, leaf: int) -> Collapse:
    if q.n < 2:
        raise ValueError("need at least two squares")
    r = leaf_frame(q, leaf)
    qr = rotate(q, r)
    N = q.polygon
    smaller = Quadrangulation(N - 2, qr.edges - {(0, N - 3)})
    return Collapse(r, qr, smaller, N - 3)


def theta_collapse(q: Quadrangulation, leaf: int, qc: Quadrangulation) -> Quadrangulation:
    """Image of a ``q``-compatible quadrangulation in the backdrop without the leaf.

    The red section between the white vertices flanking the leaf's middle
    boundary edge is collapsed to one vertex; coinciding edges are identified.
    The result lives in the frame of ``collapse_setup(q, leaf).smaller``.
    """
    c = collapse_setup(q, leaf)
    N = q.polygon
    qcr = rotate(qc, c.shift)
    edges = set()
    for a, b in qcr.edges:
        if N - 2 in (a, b):
            raise FlipError(f"{qc} has an edge at the collapsed black vertex")
        a, b = min(a, N - 3), min(b, N - 3)
        if a != b and not is_boundary(norm_edge(a, b), N - 2):
            edges.add(norm_edge(a, b))
    out = Quadrangulation(N - 2, frozenset(edges))
    if len(edges) != out.n - 1 or any(len(sq) != 4 for sq in out.squares):
        raise FlipError(f"collapse of {qc} is not a quadrangulation: {sorted(edges)}")
    return out


def theta_fibres(q: Quadrangulation, leaf: int) -> dict[Quadrangulation, list[Quadrangulation]]:
    fibres: dict[Quadrangulation, list[Quadrangulation]] = {}
    for qc in enumerate_compatible(q):
        fibres.setdefault(theta_collapse(q, leaf, qc), []).append(qc)
    return fibres


def check_theta(q: Quadrangulation, leaf: int) -> dict:
    """Verify the fibre law, the fibre total order and the morphism property."""
    c = collapse_setup(q, leaf)
    small = build_flip_digraph(c.smaller)
    big = build_flip_digraph(q)
    fibres = theta_fibres(q, leaf)
    image = {qc: img for img, members in fibres.items() for qc in members}
    report = {"fibre_sizes": True, "images_compatible": True, "fibre_chains": True, "morphism": True}
    if set(fibres) - set(small.vertices):
        report["images_compatible"] = False
    for img, members in fibres.items():
        k = sum(c.pivot in e for e in img.edges)
        if len(members) != k + 2:
            report["fibre_sizes"] = False
        idx = {big.index[m] for m in members}
        inner = [(v, w) for v in idx for w in big.succ[v] if w in idx]
        # a chain: |members|-1 internal arcs, one source and one sink inside
        heads = {w for _, w in inner}
        tails = {v for v, _ in inner}
        if len(inner) != len(members) - 1 or len(idx - heads) != 1 or len(idx - tails) != 1:
            report["fibre_chains"] = False
    for v, w in big.arcs:
        a, b = image[big.vertices[v]], image[big.vertices[w]]
        if a != b and small.index[b] not in small.succ[small.index[a]]:
            report["morphism"] = False
    return report


# ---------------------------------------------------------------------------
# "do not rotate twice in the same hexagon"


def rotation_moves(p: Quadrangulation) -> dict[Edge, tuple[Quadrangulation, Edge]]:
    """Counter-clockwise rotation of each inner edge inside its hexagon."""
    out = {}
    for e in p.sorted_edges:
        h = hexagon_of(p, e)
        a = next(i for i in range(3) if norm_edge(h[i], h[i + 3]) == e)
        new = norm_edge(h[(a - 1) % 6], h[(a + 2) % 6])
        out[e] = (Quadrangulation(p.polygon, (p.edges - {e}) | {new}), new)
    return out


class SearchTooLarge(ValueError):
    pass


def _rotation_system(n: int):
    verts = enumerate_all(n)
    index = {p: i for i, p in enumerate(verts)}
    moves = [{e: (index[t], new) for e, (t, new) in rotation_moves(p).items()} for p in verts]
    return verts, index, moves


def _has_double_path(moves, start: int, target: int, allowed: int) -> bool:
    """Is there a repetition-free path ``start -> target`` inside ``allowed``
    with two consecutive rotations in the same hexagon?"""

    def dfs(v, visited, last, double):
        if v == target:
            return double
        for e, (w, new) in moves[v].items():
            if allowed >> w & 1 and not visited >> w & 1:
                if dfs(w, visited | 1 << w, new, double or e == last):
                    return True
        return False

    return dfs(start, 1 << start, None, False)


def reachable_no_twice(
    q: Quadrangulation, max_squares: int = 4, mode: str = "grow", order=None
) -> set[Quadrangulation]:
    """Quadrangulations reachable from ``q`` without rotating twice in one hexagon.

    ``mode="grow"`` builds the set one element at a time: a rotation target
    joins when no repetition-free path from ``q`` to it, running through the
    set found so far, makes two consecutive rotations in the same hexagon.
    ``order`` optionally permutes the scan order (used to test independence).

    ``mode="global"`` quantifies over every repetition-free path of the whole
    rotation digraph.

    Exhaustive, so only for small sizes.
    """
    if q.n > max_squares:
        raise SearchTooLarge(f"{q.n} squares exceeds the bound {max_squares} for the exhaustive search")
    verts, index, moves = _rotation_system(q.n)
    start = index[q]
    if mode == "global":
        bad = _global_bad(moves, start, len(verts))
        return {p for p, i in index.items() if not bad >> i & 1}
    if mode != "grow":
        raise ValueError(f"unknown mode {mode!r}")
    scan = list(order) if order is not None else list(range(len(verts)))
    found = 1 << start
    changed = True
    while changed:
        changed = False
        for v in scan:
            if not found >> v & 1:
                continue
            for w, _ in moves[v].values():
                if found >> w & 1:
                    continue
                if not _has_double_path(moves, start, w, found | 1 << w):
                    found |= 1 << w
                    changed = True
    return {p for p, i in index.items() if found >> i & 1}


def _global_bad(moves, start: int, size: int) -> int:
    succ = [[j for j, _ in m.values()] for m in moves]
    full = (1 << size) - 1

    def reach(v: int, blocked: int) -> int:
        seen = 1 << v
        stack = [v]
        while stack:
            u = stack.pop()
            for w in succ[u]:
                bit = 1 << w
                if not (seen | blocked) & bit:
                    seen |= bit
                    stack.append(w)
        return seen

    bad = 0

    def dfs(v: int, visited: int, last: Edge | None):
        nonlocal bad
        if not reach(v, visited & ~(1 << v)) & ~visited & ~bad & full:
            return
        for e, (w, new) in moves[v].items():
            if visited >> w & 1:
                continue
            if e == last:
                # everything reachable after the double, avoiding the path so far
                bad |= reach(w, visited)
            else:
                dfs(w, visited | 1 << w, new)

    dfs(start, 1 << start, None)
    return bad
