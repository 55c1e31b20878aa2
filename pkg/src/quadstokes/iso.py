"""Isomorphism of small vertex-coloured digraphs.

Colour refinement on the disjoint union of the two graphs, then
backtracking over individualisations.  Good enough for graphs with a few
hundred vertices, which is all this package ever meets.
"""

from __future__ import annotations

from typing import Hashable, Sequence


def _refine(succ: list[list[int]], pred: list[list[int]], colors: list[int]) -> list[int]:
    k = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in succ[v])), tuple(sorted(colors[w] for w in pred[v])))
            for v in range(len(colors))
        ]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [table[s] for s in sigs]
        if len(table) == k:
            return colors
        k = len(table)


def find_isomorphism(
    succ1: Sequence[Sequence[int]],
    succ2: Sequence[Sequence[int]],
    colors1: Sequence[Hashable] | None = None,
    colors2: Sequence[Hashable] | None = None,
) -> dict[int, int] | None:
    """A colour-preserving arc bijection from graph 1 to graph 2, or None."""
    n = len(succ1)
    if n != len(succ2):
        return None
    if sum(map(len, succ1)) != sum(map(len, succ2)):
        return None
    colors1 = list(colors1) if colors1 is not None else [0] * n
    colors2 = list(colors2) if colors2 is not None else [0] * n
    palette = {c: i for i, c in enumerate(sorted(set(colors1) | set(colors2), key=repr))}
    succ = [list(s) for s in succ1] + [[w + n for w in s] for s in succ2]
    pred: list[list[int]] = [[] for _ in range(2 * n)]
    for v, out in enumerate(succ):
        for w in out:
            pred[w].append(v)
    arcs2 = {(v, w) for v in range(n) for w in succ2[v]}
    start = [palette[c] for c in colors1] + [palette[c] for c in colors2]

    def search(colors):
        colors = _refine(succ, pred, colors)
        left: dict[int, list[int]] = {}
        right: dict[int, list[int]] = {}
        for v in range(n):
            left.setdefault(colors[v], []).append(v)
            right.setdefault(colors[v + n], []).append(v)
        if any(len(left[c]) != len(right.get(c, ())) for c in left):
            return None
        if all(len(vs) == 1 for vs in left.values()):
            mapping = {vs[0]: right[c][0] for c, vs in left.items()}
            if all((mapping[v], mapping[w]) in arcs2 for v in range(n) for w in succ1[v]):
                return mapping
            return None
        c = min((c for c in left if len(left[c]) > 1), key=lambda c: (len(left[c]), c))
        v = left[c][0]
        fresh = max(colors) + 1
        for w in right[c]:
            trial = list(colors)
            trial[v] = fresh
            trial[w + n] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    return search(start)


def isomorphic(succ1, succ2, colors1=None, colors2=None) -> bool:
    return find_isomorphism(succ1, succ2, colors1, colors2) is not None


def undirected(succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """Symmetric closure of an adjacency list."""
    out = [set(s) for s in succ]
    for v, s in enumerate(succ):
        for w in s:
            out[w].add(v)
    return [sorted(s) for s in out]


def hypergraph_incidence(n_points: int, blocks: Sequence[Sequence[int]]):
    """Bipartite point/block incidence digraph with colours, for complex isomorphism."""
    succ: list[list[int]] = [[] for _ in range(n_points + len(blocks))]
    for i, b in enumerate(blocks):
        for p in b:
            succ[p].append(n_points + i)
            succ[n_points + i].append(p)
    colors = [0] * n_points + [1] * len(blocks)
    return succ, colors
