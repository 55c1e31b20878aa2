"""Quadrangulations of an even polygon.

Vertices of the polygon are ``0 .. N-1`` numbered clockwise.  Even vertices
are white, odd ones black.  A quadrangulation is stored as its set of inner
edges, each a sorted pair ``(a, b)`` with ``a < b``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Iterator

Edge = tuple[int, int]
Square = tuple[int, int, int, int]


class InvalidQuadrangulation(ValueError):
    """Raised by :func:`validate`; ``reason`` is one of the class constants."""

    POLYGON = "polygon"
    VERTEX = "vertex"
    BOUNDARY = "boundary-edge"
    PARITY = "parity"
    CROSSING = "crossing"
    COUNT = "edge-count"
    REGION = "region"

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


def norm_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def crosses(e: Edge, f: Edge) -> bool:
    """Strict interleaving of the endpoints of two chords of a convex polygon."""
    a, b = e
    c, d = f
    if a in f or b in f:
        return False
    return (a < c < b) != (a < d < b)


def is_boundary(e: Edge, N: int) -> bool:
    a, b = e
    return (b - a) % N in (1, N - 1)


def _faces(N: int, edges: Iterable[Edge]) -> list[tuple[int, ...]]:
    """Regions of a noncrossing dissection, each listed clockwise from its least vertex."""
    nbrs: dict[int, set[int]] = {v: {(v - 1) % N, (v + 1) % N} for v in range(N)}
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    seen = set()
    faces = []
    darts = [(v, (v + 1) % N) for v in range(N)]
    for a, b in edges:
        darts += [(a, b), (b, a)]
    for start, first in darts:
        if (start, first) in seen:
            continue
        face = [start]
        prev, cur = start, first
        while cur != start:
            face.append(cur)
            seen.add((prev, cur))
            span = (start - cur) % N or N
            cands = [w for w in nbrs[cur] if w != prev and 0 < (w - cur) % N <= span]
            nxt = max(cands, key=lambda w: (w - cur) % N)
            prev, cur = cur, nxt
            if len(face) > N:
                raise RuntimeError("face traversal did not close")
        seen.add((prev, cur))
        k = face.index(min(face))
        faces.append(tuple(face[k:] + face[:k]))
    return sorted(set(faces))


@dataclass(frozen=True)
class Quadrangulation:
    """A quadrangulation of the ``polygon``-gon given by its inner edges.

    Build instances through :func:`validate` (or :meth:`from_json`); the bare
    constructor trusts its input.
    """

    polygon: int
    edges: frozenset = field(default_factory=frozenset)

    # -- derived structure -----------------------------------------------------

    @property
    def n(self) -> int:
        """Number of squares."""
        return self.polygon // 2 - 1

    @property
    def n_inner(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def squares(self) -> tuple[Square, ...]:
        return tuple(_faces(self.polygon, self.edges))  # type: ignore[arg-type]

    @cached_property
    def square_index(self) -> dict[Square, int]:
        return {s: i for i, s in enumerate(self.squares)}

    @cached_property
    def sides(self) -> dict[Edge, list[tuple[int, int]]]:
        """Map every edge (inner or boundary) to the ``(square, local side)`` pairs on it."""
        out: dict[Edge, list[tuple[int, int]]] = {}
        for i, s in enumerate(self.squares):
            for k in range(4):
                out.setdefault(norm_edge(s[k], s[(k + 1) % 4]), []).append((i, k))
        return out

    @cached_property
    def dual(self) -> tuple[dict[int, tuple[int, int, Edge]], ...]:
        """Per square: local side -> (neighbour square, neighbour's local side, edge)."""
        out: list[dict[int, tuple[int, int, Edge]]] = [{} for _ in self.squares]
        for e in self.edges:
            (s, k), (t, m) = self.sides[e]
            out[s][k] = (t, m, e)
            out[t][m] = (s, k, e)
        return tuple(out)

    def side_edge(self, square: int, side: int) -> Edge:
        s = self.squares[square]
        return norm_edge(s[side], s[(side + 1) % 4])

    def neighbours(self, square: int) -> list[int]:
        return [t for t, _, _ in self.dual[square].values()]

    def leaves(self) -> list[int]:
        return [i for i in range(len(self.squares)) if len(self.dual[i]) == 1]

    def text(self) -> str:
        """Canonical text form ``a-b,c-d,...``."""
        return ",".join(f"{a}-{b}" for a, b in self.sorted_edges)

    def __str__(self):
        return f"Q{self.polygon}[{self.text()}]"

    def __lt__(self, other: "Quadrangulation"):
        return (self.polygon, self.sorted_edges) < (other.polygon, other.sorted_edges)

    # -- serialisation ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"polygon": self.polygon, "inner_edges": [list(e) for e in self.sorted_edges]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Quadrangulation":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "polygon" not in data or "inner_edges" not in data:
            raise ValueError('expected an object {"polygon": N, "inner_edges": [[a, b], ...]}')
        return validate(data["polygon"], [tuple(e) for e in data["inner_edges"]])


def validate(polygon: int, inner_edges: Iterable) -> Quadrangulation:
    """Check that the chords quadrangulate the polygon; return the object."""
    N = polygon
    if not isinstance(N, int) or N < 4 or N % 2:
        raise InvalidQuadrangulation(InvalidQuadrangulation.POLYGON, f"polygon size {N!r} must be even and >= 4")
    edges = set()
    for pair in inner_edges:
        pair = tuple(pair)
        if len(pair) != 2 or not all(isinstance(v, int) and 0 <= v < N for v in pair) or pair[0] == pair[1]:
            raise InvalidQuadrangulation(InvalidQuadrangulation.VERTEX, f"bad edge {pair!r}")
        e = norm_edge(*pair)
        if is_boundary(e, N):
            raise InvalidQuadrangulation(InvalidQuadrangulation.BOUNDARY, f"{e} joins consecutive vertices")
        if (e[0] - e[1]) % 2 == 0:
            raise InvalidQuadrangulation(InvalidQuadrangulation.PARITY, f"{e} joins vertices of the same colour")
        edges.add(e)
    ordered = sorted(edges)
    for i, e in enumerate(ordered):
        for f in ordered[i + 1:]:
            if crosses(e, f):
                raise InvalidQuadrangulation(InvalidQuadrangulation.CROSSING, f"{e} crosses {f}")
    if len(edges) != N // 2 - 2:
        raise InvalidQuadrangulation(
            InvalidQuadrangulation.COUNT, f"{len(edges)} inner edges, expected {N // 2 - 2}"
        )
    for face in _faces(N, edges):
        if len(face) != 4:
            raise InvalidQuadrangulation(InvalidQuadrangulation.REGION, f"region {face} has {len(face)} sides")
    return Quadrangulation(N, frozenset(edges))


def parse_text(polygon: int, text: str) -> Quadrangulation:
    """Inverse of :meth:`Quadrangulation.text`."""
    edges = []
    for part in filter(None, text.split(",")):
        a, b = part.split("-")
        edges.append((int(a), int(b)))
    return validate(polygon, edges)


def square() -> Quadrangulation:
    return Quadrangulation(4, frozenset())


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _dissections(m: int) -> tuple[frozenset, ...]:
    """All quadrangulations of the polygon ``0..m-1`` (m even, or m == 2 for an edge)."""
    if m == 2:
        return (frozenset(),)
    out = []
    # square containing the boundary edge (0, 1) is (0, 1, a, b)
    for a in range(2, m, 2):
        for b in range(a + 1, m, 2):
            left = _dissections(a)  # vertices 1..a
            mid = _dissections(b - a + 1)  # vertices a..b
            right = _dissections(m - b + 1)  # vertices b..m-1, 0
            own = set()
            if a != 2:
                own.add((1, a))
            if b != a + 1:
                own.add((a, b))
            if b != m - 1:
                own.add((0, b))
            for L in left:
                Ls = [norm_edge(u + 1, v + 1) for u, v in L]
                for M in mid:
                    Ms = [norm_edge(u + a, v + a) for u, v in M]
                    for R in right:
                        Rs = []
                        for u, v in R:
                            u = 0 if u == m - b else u + b
                            v = 0 if v == m - b else v + b
                            Rs.append(norm_edge(u, v))
                        out.append(frozenset(own.union(Ls, Ms, Rs)))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_all(n: int) -> tuple[Quadrangulation, ...]:
    """All quadrangulations with ``n`` squares, sorted by edge set."""
    if n < 1:
        raise ValueError("need at least one square")
    N = 2 * n + 2
    return tuple(sorted(Quadrangulation(N, e) for e in _dissections(N)))


def count_formula(n: int) -> int:
    """Number of quadrangulations with n squares (ternary trees with 2n+1 leaves)."""
    return comb(3 * n, n) // (2 * n + 1)


# ---------------------------------------------------------------------------
# symmetries


def relabel(q: Quadrangulation, f) -> Quadrangulation:
    return Quadrangulation(q.polygon, frozenset(norm_edge(f(a), f(b)) for a, b in q.edges))


def rotate(q: Quadrangulation, k: int) -> Quadrangulation:
    """Shift every vertex index by ``k``."""
    N = q.polygon
    return relabel(q, lambda v: (v + k) % N)


def mirror(q: Quadrangulation) -> Quadrangulation:
    N = q.polygon
    return relabel(q, lambda v: (-v) % N)


@lru_cache(maxsize=None)
def canonical_up_to_rotation(q: Quadrangulation) -> Quadrangulation:
    """Representative with the lexicographically least sorted edge set among all rotations."""
    return min(rotate(q, k) for k in range(q.polygon))


# ---------------------------------------------------------------------------
# bridges, cutting and twisting


def bridge_indices(q: Quadrangulation) -> list[int]:
    out = []
    for i, d in enumerate(q.dual):
        if len(d) == 2:
            k, m = sorted(d)
            if m - k == 2:
                out.append(i)
    return out


def bridges(q: Quadrangulation) -> list[Square]:
    """Squares with exactly two neighbours, attached on opposite sides."""
    return [q.squares[i] for i in bridge_indices(q)]


def is_connected(q: Quadrangulation) -> bool:
    return not bridge_indices(q)


def has_cross(q: Quadrangulation) -> bool:
    """True if some square has four neighbours."""
    return any(len(d) == 4 for d in q.dual)


@dataclass(frozen=True)
class Cut:
    """The two halves of a quadrangulation cut along an inner edge.

    ``first`` lives on the vertices ``a..b`` of the cut edge ``(a, b)``,
    ``second`` on ``b..N-1, 0..a``.  ``*_vertices`` list the original
    vertices in the order of the new labels; ``*_squares`` list, for each
    square of the half, the index of the original square.  In both halves the
    cut edge is the boundary edge between the last vertex and vertex ``0``.
    """

    edge: Edge
    first: Quadrangulation
    second: Quadrangulation
    first_vertices: tuple[int, ...]
    second_vertices: tuple[int, ...]
    first_squares: tuple[int, ...]
    second_squares: tuple[int, ...]

    def halves(self):
        return (self.first, self.second)


def _sub_quad(q: Quadrangulation, verts: list[int]) -> tuple[Quadrangulation, tuple[int, ...]]:
    pos = {v: i for i, v in enumerate(verts)}
    edges = frozenset(
        norm_edge(pos[a], pos[b])
        for a, b in q.edges
        if a in pos and b in pos and not is_boundary(norm_edge(pos[a], pos[b]), len(verts))
    )
    sub = Quadrangulation(len(verts), edges)
    square_map = []
    for s in sub.squares:
        orig = tuple(sorted(verts[v] for v in s))
        square_map.append(q.square_index[orig])
    return sub, tuple(square_map)


def cut_along_edge(q: Quadrangulation, e: Edge) -> Cut:
    e = norm_edge(*e)
    if e not in q.edges:
        raise ValueError(f"{e} is not an inner edge of {q}")
    a, b = e
    N = q.polygon
    first_v = list(range(a, b + 1))
    second_v = [v % N for v in range(b, a + N + 1)]
    first, fs = _sub_quad(q, first_v)
    second, ss = _sub_quad(q, second_v)
    return Cut(e, first, second, tuple(first_v), tuple(second_v), fs, ss)


def twist(q: Quadrangulation, e: Edge, side: int) -> Quadrangulation:
    """Mirror one half of ``q`` across the inner edge ``e`` and glue it back.

    ``side`` 0 mirrors the half on vertices ``a..b``, side 1 the other half.
    """
    e = norm_edge(*e)
    if e not in q.edges:
        raise ValueError(f"{e} is not an inner edge of {q}")
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    a, b = e
    N = q.polygon

    def in_half(v):
        return a <= v <= b if side == 0 else (v >= b or v <= a)

    def f(v):
        return (a + b - v) % N if in_half(v) else v

    out = set()
    for x, y in q.edges:
        if in_half(x) and in_half(y):
            out.add(norm_edge(f(x), f(y)))
        else:
            out.add((x, y))
    return Quadrangulation(N, frozenset(out))


def bridge_split(q: Quadrangulation, square: int) -> tuple[Quadrangulation, Quadrangulation]:
    """The two factors ``Q1, Q2`` at a bridge: each keeps the bridge square."""
    d = q.dual[square]
    if len(d) != 2 or abs(sorted(d)[0] - sorted(d)[1]) != 2:
        raise ValueError(f"square {q.squares[square]} is not a bridge")
    parts = []
    for side in sorted(d):
        cut = cut_along_edge(q, d[side][2])
        if square in cut.first_squares:
            parts.append(cut.first)
        else:
            parts.append(cut.second)
    return parts[0], parts[1]


def attach_square(q: Quadrangulation, u: int) -> Quadrangulation:
    """Glue a new square on the boundary edge ``(u, u+1)``; the new square is ``(u, u+1, u+2, u+3)``."""
    N = q.polygon
    if not 0 <= u < N:
        raise ValueError("bad boundary vertex")

    def f(v):
        return v if v <= u else v + 2

    edges = {norm_edge(f(a), f(b)) for a, b in q.edges}
    if u == N - 1:
        edges.add((0, N - 1))
    else:
        edges.add((u, u + 3))
    return Quadrangulation(N + 2, frozenset(edges))


def catalan_family(n: int) -> Quadrangulation:
    """The fan ``C_n`` with inner edges ``(0,3), (0,5), ..., (0,2n-1)``."""
    if n < 1:
        raise ValueError("n >= 1")
    return validate(2 * n + 2, [(0, k) for k in range(3, 2 * n, 2)])


def straight_ribbon(n: int) -> Quadrangulation:
    """``n`` squares in a straight line (every middle square is a bridge)."""
    N = 2 * n + 2
    return validate(N, [(i, N - 1 - i) for i in range(1, n)])


TRIPOD = Quadrangulation(10, frozenset({(1, 4), (4, 7), (0, 7)}))
HEXAGON = Quadrangulation(6, frozenset({(0, 3)}))


# ---------------------------------------------------------------------------
# cross-trees


@dataclass(frozen=True)
class CrossTreeClass:
    representatives: frozenset
    canonical_member: Quadrangulation

    def __len__(self):
        return len(self.representatives)

    def __contains__(self, q):
        return canonical_up_to_rotation(q) in self.representatives


@lru_cache(maxsize=None)
def _twist_closure(start: Quadrangulation) -> frozenset:
    seen = {start}
    todo = deque([start])
    while todo:
        p = todo.popleft()
        for e in p.sorted_edges:
            for side in (0, 1):
                r = canonical_up_to_rotation(twist(p, e, side))
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
    return frozenset(seen)


def cross_tree_class(q: Quadrangulation) -> CrossTreeClass:
    """Rotation classes reachable from ``q`` by twisting."""
    reps = _twist_closure(canonical_up_to_rotation(q))
    return CrossTreeClass(reps, min(reps))


def canonical_cross_tree(q: Quadrangulation) -> Quadrangulation:
    return cross_tree_class(q).canonical_member


# ---------------------------------------------------------------------------
# noncrossing trees


def to_noncrossing_tree(q: Quadrangulation) -> frozenset:
    """Black-black diagonals of all squares, on the black vertices relabelled ``0..n``."""
    tree = set()
    for s in q.squares:
        blacks = sorted(v for v in s if v % 2)
        tree.add(((blacks[0] - 1) // 2, (blacks[1] - 1) // 2))
    return frozenset(tree)


def is_noncrossing_tree(tree: Iterable[Edge], m: int) -> bool:
    edges = [norm_edge(*e) for e in tree]
    if len(edges) != m - 1 or len(set(edges)) != len(edges):
        return False
    if any(not (0 <= a < m and 0 <= b < m) or a == b for a, b in edges):
        return False
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            if crosses(e, f):
                return False
    parent = list(range(m))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def from_noncrossing_tree(tree: Iterable[Edge], m: int) -> Quadrangulation:
    """Inverse of :func:`to_noncrossing_tree` for a tree on ``m`` vertices."""
    tree = [norm_edge(*e) for e in tree]
    if not is_noncrossing_tree(tree, m):
        raise ValueError("not a noncrossing spanning tree")
    N = 2 * m
    diagonals = [norm_edge(2 * a + 1, 2 * b + 1) for a, b in tree]
    edges = []
    for w in range(0, N, 2):
        for b in range(1, N, 2):
            e = norm_edge(w, b)
            if is_boundary(e, N):
                continue
            if not any(crosses(e, d) for d in diagonals):
                edges.append(e)
    return validate(N, edges)


def tree_flip(tree: Iterable[Edge], i: int, j: int, k: int, m: int) -> frozenset:
    """Replace ``i-j`` by ``i-k`` where ``i-j, k-j`` are consecutive at ``j`` and ``i<j<k`` clockwise."""
    tree = {norm_edge(*e) for e in tree}
    if norm_edge(i, j) not in tree or norm_edge(k, j) not in tree:
        raise ValueError("i-j and k-j must be tree edges")
    if not 0 < (j - i) % m < (k - i) % m:
        raise ValueError("need i < j < k in clockwise cyclic order")
    gap = (i - k) % m
    for a, b in tree:
        if j in (a, b):
            x = b if a == j else a
            if 0 < (x - k) % m < gap:
                raise ValueError("another edge at j lies between i-j and k-j")
    tree.discard(norm_edge(i, j))
    tree.add(norm_edge(i, k))
    return frozenset(tree)


def tree_flips(tree: Iterable[Edge], m: int) -> Iterator[tuple[int, int, int]]:
    """All triples ``(i, j, k)`` at which :func:`tree_flip` applies."""
    tree = {norm_edge(*e) for e in tree}
    for j in range(m):
        nb = sorted((x for a, b in tree if j in (a, b) for x in (a, b) if x != j), key=lambda x: (x - j) % m)
        # consecutive neighbours around j, ordered clockwise starting after j
        for k, i in zip(nb, nb[1:]):
            yield (i, j, k)
