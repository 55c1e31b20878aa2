"""Serpents, serpent nests and their generating polynomials.

A nest is stored by its signature: for every square, four stop flags (an
extremity leaving through that side) and four turn counters (segments
crossing the square through sides ``k`` and ``k+1``).  Signatures are packed
into one integer with 8-bit fields so that adding a serpent is an integer
addition.  Equal signatures are the same nest.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from .quad import (
    Quadrangulation,
    attach_square,
    bridge_indices,
    cut_along_edge,
    is_boundary,
    norm_edge,
    straight_ribbon,
)
from .rings import ONE, X, Y, BiPolynomial, glue

WIDTH = 8
MASK = (1 << WIDTH) - 1
FIELDS = 8  # stop_0..stop_3, turn_0..turn_3


def _bit(square: int, field: int) -> int:
    return WIDTH * (FIELDS * square + field)


def _field(packed: int, square: int, field: int) -> int:
    return packed >> _bit(square, field) & MASK


def turn_index(a: int, b: int) -> int:
    """Turn counter for a segment through the adjacent sides ``a`` and ``b``."""
    if (a - b) % 4 == 1:
        a, b = b, a
    if (b - a) % 4 != 1:
        raise ValueError(f"sides {a} and {b} are not adjacent")
    return a


class NestsTooLarge(ValueError):
    pass


# ---------------------------------------------------------------------------
# serpents


@dataclass(frozen=True)
class Serpent:
    path: tuple[int, ...]  # squares, first to last
    sides: tuple[tuple[int | None, int | None], ...]  # (entering, leaving) side per square
    open: bool = False  # ends on the open boundary edge instead of a square

    @property
    def ends(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]

    def vector(self, n_squares: int) -> int:
        """Packed contribution to a signature."""
        v = 0
        for s, (enter, leave) in zip(self.path, self.sides):
            if enter is None:
                v += 1 << _bit(s, leave)
            elif leave is None:
                v += 1 << _bit(s, enter)
            else:
                v += 1 << _bit(s, 4 + turn_index(enter, leave))
        if self.open:
            v += 1 << _bit(n_squares, 0)
        return v

    def slots(self) -> list[tuple[int, int]]:
        """The (square, side) extremity slots this serpent occupies."""
        out = [(self.path[0], self.sides[0][1])]
        if not self.open:
            out.append((self.path[-1], self.sides[-1][0]))
        return out


def _tree_path(q: Quadrangulation, a: int, b: int) -> list[tuple[int, int | None, int | None]]:
    """Dual-tree path from square ``a`` to ``b`` as (square, entering side, leaving side)."""
    prev = {a: None}
    todo = deque([a])
    while todo:
        s = todo.popleft()
        for side, (t, tside, _) in q.dual[s].items():
            if t not in prev:
                prev[t] = (s, side, tside)
                todo.append(t)
    steps = []
    cur = b
    while prev[cur] is not None:
        s, side, tside = prev[cur]
        steps.append((s, side, cur, tside))
        cur = s
    steps.reverse()
    out = []
    enter = None
    for s, side, t, tside in steps:
        out.append((s, enter, side))
        enter = tside
    out.append((b, enter, None))
    return out


def _turns_everywhere(path) -> bool:
    return all(enter is None or leave is None or (enter - leave) % 4 != 2 for _, enter, leave in path)


@lru_cache(maxsize=None)
def all_serpents(q: Quadrangulation) -> tuple[Serpent, ...]:
    """Pairs of squares joined by a dual-tree path turning at every intermediate square."""
    out = []
    m = len(q.squares)
    for a in range(m):
        for b in range(a + 1, m):
            path = _tree_path(q, a, b)
            if _turns_everywhere(path):
                out.append(Serpent(tuple(s for s, _, _ in path), tuple((e, l) for _, e, l in path)))
    return tuple(out)


def open_side(q: Quadrangulation, open_edge) -> tuple[int, int]:
    e = norm_edge(*open_edge)
    if not is_boundary(e, q.polygon):
        raise ValueError(f"{e} is not a boundary edge")
    return q.sides[e][0]


@lru_cache(maxsize=None)
def open_serpents(q: Quadrangulation, open_edge) -> tuple[Serpent, ...]:
    """Serpents from a square to the open boundary edge, turning at every square in between."""
    b, k = open_side(q, open_edge)
    out = []
    for a in range(len(q.squares)):
        path = _tree_path(q, a, b)
        s, enter, _ = path[-1]
        path[-1] = (s, enter, k)
        if _turns_everywhere(path):
            out.append(Serpent(tuple(s for s, _, _ in path), tuple((e, l) for _, e, l in path), open=True))
    return tuple(out)


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class NestSignature:
    packed: int
    n_squares: int

    def stop(self, square: int, side: int) -> int:
        return _field(self.packed, square, side)

    def turn(self, square: int, k: int) -> int:
        return _field(self.packed, square, 4 + k)

    @property
    def stops(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.stop(s, k) for k in range(4)) for s in range(self.n_squares))

    @property
    def turns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.turn(s, k) for k in range(4)) for s in range(self.n_squares))

    @property
    def open_crossings(self) -> int:
        return _field(self.packed, self.n_squares, 0)

    @property
    def n_stops(self) -> int:
        return sum(map(sum, self.stops))

    @property
    def rank(self) -> int:
        """Closed serpents."""
        return (self.n_stops - self.open_crossings) // 2

    def crossing(self, square: int, side: int) -> int:
        """Number of path segments crossing the given side."""
        return self.stop(square, side) + self.turn(square, side) + self.turn(square, (side - 1) % 4)

    def table(self) -> list[dict]:
        return [{"stops": list(st), "turns": list(tu)} for st, tu in zip(self.stops, self.turns)]

    def __lt__(self, other):
        return self.packed < other.packed


def _inner_sides(q: Quadrangulation):
    for e in q.sorted_edges:
        (s, i), (t, j) = q.sides[e]
        yield e, (s, i), (t, j)


def edge_balanced(sig: NestSignature, q: Quadrangulation) -> bool:
    return all(sig.crossing(s, i) == sig.crossing(t, j) for _, (s, i), (t, j) in _inner_sides(q))


def simple_count(sig: NestSignature, q: Quadrangulation) -> int:
    """Inner edges crossed exactly once, by a serpent stopping on both sides."""
    return sum(
        1
        for _, (s, i), (t, j) in _inner_sides(q)
        if sig.stop(s, i) and sig.stop(t, j) and sig.crossing(s, i) == 1
    )


def dual_nest(sig: NestSignature, q: Quadrangulation) -> NestSignature:
    """Toggle the pair of stops at every inner edge whose two sides agree."""
    p = sig.packed
    for _, (s, i), (t, j) in _inner_sides(q):
        a, b = sig.stop(s, i), sig.stop(t, j)
        if a and b:
            p -= (1 << _bit(s, i)) + (1 << _bit(t, j))
        elif not a and not b:
            p += (1 << _bit(s, i)) + (1 << _bit(t, j))
    return NestSignature(p, sig.n_squares)


def is_self_dual(sig: NestSignature, q: Quadrangulation) -> bool:
    return all(sig.stop(s, i) + sig.stop(t, j) == 1 for _, (s, i), (t, j) in _inner_sides(q))


def _close_under_subsets(serpents: Iterable[Serpent], n_squares: int) -> set[int]:
    """All signatures of serpent sets with at most one extremity per (square, side)."""
    items = [(s.vector(n_squares), sum(1 << _bit(a, k) for a, k in s.slots())) for s in serpents]
    states = {0}
    for vec, slots in items:
        states |= {v + vec for v in states if not v & slots}
    return states


DEFAULT_MAX_SQUARES = 12


@lru_cache(maxsize=None)
def enumerate_nests(q: Quadrangulation, max_squares: int = DEFAULT_MAX_SQUARES) -> tuple[NestSignature, ...]:
    """The set of serpent nests, as sorted signatures."""
    if q.n > max_squares:
        raise NestsTooLarge(f"{q.n} squares exceeds the nest enumeration bound {max_squares}")
    m = len(q.squares)
    return tuple(NestSignature(p, m) for p in sorted(_close_under_subsets(all_serpents(q), m)))


@lru_cache(maxsize=None)
def enumerate_open_nests(q: Quadrangulation, open_edge, max_squares: int = DEFAULT_MAX_SQUARES) -> tuple[NestSignature, ...]:
    if q.n > max_squares:
        raise NestsTooLarge(f"{q.n} squares exceeds the nest enumeration bound {max_squares}")
    m = len(q.squares)
    pool = all_serpents(q) + open_serpents(q, norm_edge(*open_edge))
    return tuple(NestSignature(p, m) for p in sorted(_close_under_subsets(pool, m)))


def nest_set(q: Quadrangulation) -> frozenset:
    return frozenset(s.packed for s in enumerate_nests(q))


@lru_cache(maxsize=None)
def h_vector(q: Quadrangulation) -> BiPolynomial:
    counts: dict[int, int] = {}
    for sig in enumerate_nests(q):
        counts[sig.rank] = counts.get(sig.rank, 0) + 1
    return BiPolynomial({(r, 0, 0): c for r, c in counts.items()})


@lru_cache(maxsize=None)
def H_triangle(q: Quadrangulation) -> BiPolynomial:
    counts: dict[tuple[int, int, int], int] = {}
    for sig in enumerate_nests(q):
        key = (sig.rank, simple_count(sig, q), 0)
        counts[key] = counts.get(key, 0) + 1
    return BiPolynomial(counts)


def open_h_vector(q: Quadrangulation, open_edge) -> BiPolynomial:
    counts: dict[tuple[int, int, int], int] = {}
    for sig in enumerate_open_nests(q, norm_edge(*open_edge)):
        key = (sig.rank, 0, sig.open_crossings)
        counts[key] = counts.get(key, 0) + 1
    return BiPolynomial(counts)


def cut_open_edge(q: Quadrangulation):
    """The open edge of a half produced by cutting: between its last vertex and 0."""
    return (0, q.polygon - 1)


# ---------------------------------------------------------------------------
# identities


def is_palindromic(q: Quadrangulation) -> bool:
    h = h_vector(q)
    return h == h.reverse("x", q.n - 1)


def duality_report(q: Quadrangulation) -> dict:
    nests = enumerate_nests(q)
    present = {s.packed for s in nests}
    m = q.n_inner
    involutive = realisable = rank_law = True
    fixed = 0
    for sig in nests:
        d = dual_nest(sig, q)
        involutive &= dual_nest(d, q) == sig
        realisable &= d.packed in present
        rank_law &= d.rank == m - sig.rank
        fixed += d == sig
    return {
        "involutive": involutive,
        "realisable": realisable,
        "rank_law": rank_law,
        "fixed_points": fixed,
        "h_at_minus_one": h_vector(q)(x=-1),
    }


def parabolic_h_sides(q: Quadrangulation) -> tuple[BiPolynomial, BiPolynomial]:
    H = H_triangle(q)
    rhs = BiPolynomial()
    for e in q.sorted_edges:
        cut = cut_along_edge(q, e)
        rhs = rhs + H_triangle(cut.first) * H_triangle(cut.second)
    return Y * H.diff("y"), X * Y * rhs


def check_parabolic_h(q: Quadrangulation) -> bool:
    lhs, rhs = parabolic_h_sides(q)
    return lhs == rhs


def check_open_gluing(q: Quadrangulation, e) -> bool:
    cut = cut_along_edge(q, e)
    a = open_h_vector(cut.first, cut_open_edge(cut.first))
    b = open_h_vector(cut.second, cut_open_edge(cut.second))
    return glue(a, b) == h_vector(q)


def H_symmetry(q: Quadrangulation) -> bool:
    """``H(x, y) = x^m H(1/x, 1 - x + x y)`` with ``m`` inner edges, cleared of denominators."""
    H = H_triangle(q)
    m = q.n_inner
    total = BiPolynomial()
    for (a, b, _), c in H.items():
        # x^m * x^-a * (1 - x + x y)^b
        total = total + BiPolynomial({(m - a, 0, 0): c}) * (1 - X + X * Y) ** b
    return total == H


# ---------------------------------------------------------------------------
# bridges


def _half_maps(q: Quadrangulation, half: Quadrangulation, verts, square_map):
    """Per half square: (original square, side offset)."""
    out = []
    for h, sq in enumerate(half.squares):
        o = square_map[h]
        orig = q.squares[o]
        mapped = [verts[v] for v in sq]
        out.append((o, orig.index(mapped[0])))
    return out


def restrict(sig: NestSignature, half: Quadrangulation, maps) -> NestSignature:
    """The part of a nest living in a factor; stops facing away from the factor are dropped."""
    p = 0
    for h, (o, r) in enumerate(maps):
        for k in range(4):
            if k in half.dual[h]:
                p += sig.stop(o, (k + r) % 4) << _bit(h, k)
            p += sig.turn(o, (k + r) % 4) << _bit(h, 4 + k)
    return NestSignature(p, len(maps))


def bridge_halves(q: Quadrangulation, square: int):
    """The two factors at a bridge square, each with its square/side map into ``q``."""
    d = q.dual[square]
    out = []
    for side in sorted(d):
        cut = cut_along_edge(q, d[side][2])
        if square in cut.first_squares:
            half, verts, sq = cut.first, cut.first_vertices, cut.first_squares
        else:
            half, verts, sq = cut.second, cut.second_vertices, cut.second_squares
        out.append((half, _half_maps(q, half, verts, sq)))
    return out


def check_bridge_nests(q: Quadrangulation) -> bool:
    """Restriction to the two factors is a rank-additive bijection onto the product."""
    bs = bridge_indices(q)
    if not bs:
        raise ValueError(f"{q} has no bridge")
    (q1, m1), (q2, m2) = bridge_halves(q, bs[0])
    s1, s2 = nest_set(q1), nest_set(q2)
    seen = set()
    for sig in enumerate_nests(q):
        a, b = restrict(sig, q1, m1), restrict(sig, q2, m2)
        if a.packed not in s1 or b.packed not in s2 or a.rank + b.rank != sig.rank:
            return False
        seen.add((a.packed, b.packed))
    return len(seen) == len(enumerate_nests(q)) == len(s1) * len(s2)


# ---------------------------------------------------------------------------
# the fan C_n and nonnesting partitions


def _path_order(q: Quadrangulation) -> list[int]:
    ends = [s for s in range(len(q.squares)) if len(q.dual[s]) <= 1]
    start = min(ends, key=lambda s: q.squares[s])
    order = [start]
    while len(order) < len(q.squares):
        nxt = [t for t in q.neighbours(order[-1]) if t not in order]
        if len(nxt) != 1:
            raise ValueError("dual tree is not a path")
        order.append(nxt[0])
    return order


def nest_to_nonnesting(sig: NestSignature, q: Quadrangulation) -> frozenset:
    """Segments ``[i, j]`` of crossed inner edges (numbered 1..n-1 along the path).

    An extremity pointing toward later squares opens at its square, one
    pointing toward earlier squares closes; the k-th opening pairs with the
    k-th closing.
    """
    order = _path_order(q)
    pos = {s: i for i, s in enumerate(order)}
    opens, closes = [], []
    for s in order:
        for side, (t, _, _) in q.dual[s].items():
            if sig.stop(s, side):
                (opens if pos[t] > pos[s] else closes).append(pos[s])
    opens.sort()
    closes.sort()
    if len(opens) != len(closes) or any(o >= c for o, c in zip(opens, closes)):
        raise ValueError("not a nest of a path-shaped quadrangulation")
    return frozenset((o + 1, c) for o, c in zip(opens, closes))


def is_nonnesting(segments) -> bool:
    segs = list(segments)
    return not any(
        a != b and a[0] <= b[0] and b[1] <= a[1] for a in segs for b in segs
    )


def nonnesting_partitions(m: int) -> list[frozenset]:
    """Antichains of intervals in ``1..m`` (brute force, small ``m`` only)."""
    intervals = [(i, j) for i in range(1, m + 1) for j in range(i, m + 1)]
    out = []

    def grow(k, chosen):
        if k == len(intervals):
            out.append(frozenset(chosen))
            return
        grow(k + 1, chosen)
        iv = intervals[k]
        if is_nonnesting(chosen + [iv]):
            grow(k + 1, chosen + [iv])

    grow(0, [])
    return out


# ---------------------------------------------------------------------------
# Lucas family


def lucas_family(n: int) -> Quadrangulation:
    """``L_n``: a straight string of ``n+1`` squares with a square hung on each middle one."""
    if n < 1:
        raise ValueError("n >= 1")
    q = straight_ribbon(n + 1)
    for u in range(n - 1, 0, -1):
        q = attach_square(q, u)
    return q


def lucas_k_family(n: int) -> Quadrangulation:
    """``K_n``: ``L_n`` without the last square of the string."""
    if n < 1:
        raise ValueError("n >= 1")
    if n == 1:
        return Quadrangulation(4, frozenset())
    q = straight_ribbon(n)
    for u in range(n - 1, 0, -1):
        q = attach_square(q, u)
    return q


LUCAS_A = 1 + 4 * X + X**2
LUCAS_B = X * (1 + X + X**2)


@lru_cache(maxsize=None)
def lucas_h(n: int) -> BiPolynomial:
    """``l_n`` from the second-order recurrence, ``l_0 = 0``, ``l_1 = 1 + x``."""
    if n == 0:
        return BiPolynomial()
    if n == 1:
        return 1 + X
    return LUCAS_A * lucas_h(n - 1) + LUCAS_B * lucas_h(n - 2)


@lru_cache(maxsize=None)
def lucas_k(n: int) -> BiPolynomial:
    """``k_n`` from the coupled recursion (``k_1 = 1``)."""
    if n == 1:
        return ONE
    prev2 = lucas_coupled_l(n - 2) if n >= 2 else BiPolynomial()
    return (1 + X) * lucas_coupled_l(n - 1) + X * lucas_k(n - 1) + X * (1 + X) * prev2


@lru_cache(maxsize=None)
def lucas_coupled_l(n: int) -> BiPolynomial:
    if n <= 0:
        return BiPolynomial()
    return (1 + X) * lucas_k(n) + X * lucas_coupled_l(n - 1)


@lru_cache(maxsize=None)
def lucas_z(n: int) -> BiPolynomial:
    """``Z_n = l_n / prod Z_d`` over proper divisors, by exact division."""
    p = lucas_h(n)
    for d in range(1, n):
        if n % d == 0:
            p = p.divexact(lucas_z(d))
    return p

