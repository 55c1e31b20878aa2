"""The flag complex of noncrossing compatible chords and its F-triangle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

from . import iso
from .compat import CompatibleEdgeSet, compatible_edges, enumerate_compatible
from .quad import Edge, Quadrangulation, bridge_indices, bridge_split, crosses, cut_along_edge
from .rings import X, Y, BiPolynomial


@dataclass(frozen=True)
class FlagComplex:
    backdrop: Quadrangulation
    ground: CompatibleEdgeSet

    @cached_property
    def chords(self) -> tuple[Edge, ...]:
        return self.ground.all

    @cached_property
    def _later_ok(self) -> list[int]:
        """Bitmask, per chord, of the later chords it does not cross."""
        cs = self.chords
        return [
            sum(1 << j for j in range(i + 1, len(cs)) if not crosses(cs[i], cs[j]))
            for i in range(len(cs))
        ]

    def simplex_masks(self) -> Iterator[int]:
        ok = self._later_ok

        def grow(mask: int, allowed: int) -> Iterator[int]:
            yield mask
            while allowed:
                low = allowed & -allowed
                i = low.bit_length() - 1
                allowed ^= low
                yield from grow(mask | low, allowed & ok[i])

        yield from grow(0, (1 << len(self.chords)) - 1)

    def simplices(self) -> Iterator[tuple[Edge, ...]]:
        for m in self.simplex_masks():
            yield self.decode(m)

    def decode(self, mask: int) -> tuple[Edge, ...]:
        return tuple(c for i, c in enumerate(self.chords) if mask >> i & 1)

    @cached_property
    def _compatible_with(self) -> list[int]:
        cs = self.chords
        return [sum(1 << j for j in range(len(cs)) if j != i and not crosses(cs[i], cs[j])) for i in range(len(cs))]

    def is_maximal(self, mask: int) -> bool:
        free = (1 << len(self.chords)) - 1
        for i in range(len(self.chords)):
            if mask >> i & 1:
                free &= self._compatible_with[i]
        return not free & ~mask

    @cached_property
    def facets(self) -> tuple[tuple[Edge, ...], ...]:
        return tuple(self.decode(m) for m in self.simplex_masks() if self.is_maximal(m))

    @property
    def pure(self) -> bool:
        return all(len(f) == self.backdrop.n_inner for f in self.facets)

    def facets_match_compatible(self) -> bool:
        return {frozenset(f) for f in self.facets} == {p.edges for p in enumerate_compatible(self.backdrop)}


@lru_cache(maxsize=None)
def flag_complex(q: Quadrangulation) -> FlagComplex:
    return FlagComplex(q, compatible_edges(q))


@lru_cache(maxsize=None)
def f_triangle(q: Quadrangulation) -> BiPolynomial:
    """Simplices counted by ``x^(#positive chords) y^(#initial chords)``."""
    cx = flag_complex(q)
    initial = set(cx.ground.initial)
    kind = [c in initial for c in cx.chords]
    counts: dict[tuple[int, int, int], int] = {}
    for m in cx.simplex_masks():
        a = b = 0
        for i, init in enumerate(kind):
            if m >> i & 1:
                if init:
                    b += 1
                else:
                    a += 1
        counts[(a, b, 0)] = counts.get((a, b, 0), 0) + 1
    return BiPolynomial(counts)


def f_vector(q: Quadrangulation) -> list[int]:
    """Number of simplices by size (empty simplex first)."""
    return f_triangle(q).subs("y", X).coeff_list("x")


def check_f_symmetry(q: Quadrangulation) -> bool:
    """``F(-1-x, -1-y) = (-1)^m F(x, y)`` with ``m`` the number of inner edges."""
    F = f_triangle(q)
    lhs = F.subs("x", -1 - X).subs("y", -1 - Y)
    return lhs == F * (-1) ** q.n_inner


def parabolic_f_sides(q: Quadrangulation) -> tuple[BiPolynomial, BiPolynomial]:
    F = f_triangle(q)
    rhs = BiPolynomial()
    for e in q.sorted_edges:
        cut = cut_along_edge(q, e)
        rhs = rhs + f_triangle(cut.first) * f_triangle(cut.second)
    return Y * F.diff("y"), Y * rhs


def check_parabolic_f(q: Quadrangulation) -> bool:
    lhs, rhs = parabolic_f_sides(q)
    return lhs == rhs


def f_bridge_product(q: Quadrangulation) -> bool:
    bs = bridge_indices(q)
    if not bs:
        raise ValueError(f"{q} has no bridge")
    q1, q2 = bridge_split(q, bs[0])
    return f_triangle(q) == f_triangle(q1) * f_triangle(q2)


def complexes_isomorphic(q1: Quadrangulation, q2: Quadrangulation) -> bool:
    """Isomorphism of the two complexes, via their facet hypergraphs (flag and pure, so facets decide)."""
    a, b = flag_complex(q1), flag_complex(q2)
    if len(a.chords) != len(b.chords) or len(a.facets) != len(b.facets):
        return False

    def incidence(cx):
        idx = {c: i for i, c in enumerate(cx.chords)}
        return iso.hypergraph_incidence(len(cx.chords), [[idx[c] for c in f] for f in cx.facets])

    s1, c1 = incidence(a)
    s2, c2 = incidence(b)
    return iso.isomorphic(s1, s2, c1, c2)

