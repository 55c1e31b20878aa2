import itertools
from collections import deque

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import nx_digraph, nx_isomorphic, nx_undirected_isomorphic

from quadstokes.compat import enumerate_compatible, tau
from quadstokes.quad import HEXAGON, TRIPOD, bridge_indices, catalan_family, enumerate_all, straight_ribbon
from quadstokes.stokes import (
    FlipError,
    SearchTooLarge,
    all_flips,
    bridge_factors,
    build_flip_digraph,
    check_theta,
    digraph_isomorphic,
    flip,
    in_out_counts,
    product,
    reachable_no_twice,
    tamari_reference,
    undirected_isomorphic,
)


def all_quads(max_n, min_n=1):
    return [q for n in range(min_n, max_n + 1) for q in enumerate_all(n)]


def test_hexagon_flip():
    f = flip(HEXAGON, HEXAGON, (0, 3))
    assert f.target.edges == {(2, 5)} and f.direction == "out"
    back = flip(HEXAGON, f.target, (2, 5))
    assert back.target == HEXAGON and back.direction == "in"
    with pytest.raises(ValueError):
        flip(HEXAGON, HEXAGON, (1, 4))


def test_flip_twice_is_identity():
    for q in all_quads(4):
        for f in all_flips(q):
            assert flip(q, f.target, f.inserted).target == f.source


def test_in_out_counts():
    for q in all_quads(5):
        assert in_out_counts(q, q) == (0, q.n - 1)
        assert in_out_counts(q, tau(q)) == (q.n - 1, 0)
    for q in all_quads(4):
        for qc in enumerate_compatible(q):
            assert sum(in_out_counts(q, qc)) == q.n - 1


def test_flip_closure_is_the_compatible_set():
    for q in all_quads(4):
        seen = {q}
        todo = deque([q])
        while todo:
            p = todo.popleft()
            for e in p.sorted_edges:
                t = flip(q, p, e).target
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        assert seen == set(enumerate_compatible(q))


def test_examples():
    g = build_flip_digraph(catalan_family(3))
    assert len(g) == 5 and g.n_arcs() == 5
    assert digraph_isomorphic(g, tamari_reference(3))
    t = build_flip_digraph(TRIPOD)
    assert len(t) == 12 and set(t.degrees()) == {3} and t.n_arcs() == 18


def test_structure_against_networkx():
    for q in all_quads(4):
        g = build_flip_digraph(q)
        G = nx_digraph(g.succ)
        assert nx.is_directed_acyclic_graph(G) and g.acyclic
        assert set(nx.transitive_reduction(G).edges) == set(G.edges)
        assert g.transitively_reduced
        assert nx.is_weakly_connected(G) and g.connected


def _nx_is_lattice(G) -> bool:
    below = {v: nx.ancestors(G, v) | {v} for v in G}  # arcs go downwards
    above = {v: nx.descendants(G, v) | {v} for v in G}

    def has_extremum(common, order):
        return any(common <= order[m] for m in common)

    for a, b in itertools.combinations(G, 2):
        if not has_extremum(below[a] & below[b], above) or not has_extremum(above[a] & above[b], below):
            return False
    return True


def _nx_graded(G) -> bool:
    src = [v for v in G if G.in_degree(v) == 0][0]
    lengths = {src: {0}}
    for v in nx.topological_sort(G):
        for w in G.successors(v):
            lengths.setdefault(w, set()).update(k + 1 for k in lengths[v])
    return all(len(s) == 1 for s in lengths.values())


def test_lattice_and_grading_against_networkx():
    non_graded = 0
    for q in all_quads(4):
        g = build_flip_digraph(q)
        G = nx_digraph(g.succ)
        assert g.is_lattice == _nx_is_lattice(G)
        assert g.graded == _nx_graded(G)
        non_graded += not g.graded
    assert not build_flip_digraph(catalan_family(3)).graded
    assert non_graded > 0


def test_tamari_reference_against_networkx():
    for n in range(2, 6):
        t = tamari_reference(n)
        G = nx_digraph(t.succ)
        assert _nx_is_lattice(G)
        assert nx_isomorphic(t.succ, build_flip_digraph(catalan_family(n)).succ)


def test_products():
    t2 = tamari_reference(2)
    assert digraph_isomorphic(build_flip_digraph(straight_ribbon(3)), product(t2, t2))
    for q in all_quads(4):
        if bridge_indices(q):
            q1, q2 = bridge_factors(q)
            p = product(build_flip_digraph(q1), build_flip_digraph(q2))
            assert nx_isomorphic(build_flip_digraph(q).succ, p.succ)


digraphs = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=14))
)


def _succ(n, arcs):
    succ = [[] for _ in range(n)]
    for a, b in arcs:
        if a != b:
            succ[a].append(b)
    return [sorted(set(s)) for s in succ]


@given(digraphs, digraphs, st.randoms())
@settings(max_examples=150, deadline=None)
def test_isomorphism_against_networkx(d1, d2, rnd):
    from quadstokes import iso

    s1, s2 = _succ(*d1), _succ(*d2)
    assert iso.isomorphic(s1, s2) == nx_isomorphic(s1, s2)
    assert iso.isomorphic(iso.undirected(s1), iso.undirected(s2)) == nx_undirected_isomorphic(s1, s2)
    perm = list(range(len(s1)))
    rnd.shuffle(perm)
    shuffled = [[] for _ in s1]
    for v, out in enumerate(s1):
        shuffled[perm[v]] = sorted(perm[w] for w in out)
    assert iso.isomorphic(s1, shuffled)


def test_undirected_twist_pairs():
    from quadstokes.quad import twist

    for q in all_quads(4):
        for e in q.sorted_edges:
            p = twist(q, e, 0)
            assert undirected_isomorphic(build_flip_digraph(q), build_flip_digraph(p))


def test_theta_collapse():
    for q in all_quads(4, 2):
        for leaf in q.leaves():
            report = check_theta(q, leaf)
            assert all(report.values()), (q, leaf, report)


def test_no_twice_examples():
    for q in enumerate_all(2):
        assert reachable_no_twice(q) == {q, tau(q)} == set(enumerate_compatible(q))
    c3 = catalan_family(3)
    assert reachable_no_twice(c3) == set(enumerate_compatible(c3))
    for q in enumerate_all(3):
        assert reachable_no_twice(q) == set(enumerate_compatible(q))


def test_no_twice_global_reading():
    for q in all_quads(2):
        assert reachable_no_twice(q, mode="global") == set(enumerate_compatible(q))
    # quantifying over all paths of the whole rotation digraph already
    # blocks every rotation target at three squares
    for q in enumerate_all(3):
        assert reachable_no_twice(q, mode="global") == {q}


def test_no_twice_refusal():
    with pytest.raises(SearchTooLarge):
        reachable_no_twice(enumerate_all(5)[0])
    with pytest.raises(ValueError):
        reachable_no_twice(HEXAGON, mode="sideways")


def test_analysis_and_dot():
    g = build_flip_digraph(TRIPOD)
    a = g.analysis()
    assert a["vertices"] == 12 and a["acyclic"] and a["lattice"]
    dot = g.to_dot()
    assert dot.count("->") == g.n_arcs()
    assert build_flip_digraph(HEXAGON).to_dot(undirected=True).count("--") == 1


def test_flip_error_is_an_invariant_failure():
    assert issubclass(FlipError, AssertionError)
