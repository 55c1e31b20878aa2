import random
from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import _segments, brute_nests, brute_serpents

from quadstokes.quad import (
    HEXAGON,
    TRIPOD,
    bridge_indices,
    catalan_family,
    cut_along_edge,
    enumerate_all,
    square,
    straight_ribbon,
)
from quadstokes.rings import T, X, Y, glue
from quadstokes.serpents import (
    H_triangle,
    NestSignature,
    NestsTooLarge,
    all_serpents,
    check_bridge_nests,
    check_open_gluing,
    check_parabolic_h,
    cut_open_edge,
    dual_nest,
    duality_report,
    edge_balanced,
    enumerate_nests,
    enumerate_open_nests,
    h_vector,
    is_nonnesting,
    is_palindromic,
    lucas_coupled_l,
    lucas_family,
    lucas_h,
    lucas_k,
    lucas_k_family,
    lucas_z,
    nest_to_nonnesting,
    nonnesting_partitions,
    open_h_vector,
    parabolic_h_sides,
)


def all_quads(max_n):
    return [q for n in range(1, max_n + 1) for q in enumerate_all(n)]


def narayana(n: int):
    return sum((comb(n, k) * comb(n, k + 1) // n) * X**k for k in range(n))


def test_serpent_examples():
    assert len(all_serpents(HEXAGON)) == 1
    paths = {s.path for s in all_serpents(TRIPOD)}
    assert len(paths) == 5
    centre = 0
    assert sum(len(p) == 2 and centre in p for p in paths) == 3
    assert sum(len(p) == 3 for p in paths) == 2
    for n in range(2, 7):
        assert len(all_serpents(catalan_family(n))) == comb(n, 2)


def test_serpents_against_networkx_paths():
    for q in all_quads(5):
        paths, _ = brute_serpents(q)
        assert {tuple(p) for p in paths} == {s.path for s in all_serpents(q)}


def test_nest_examples():
    assert len(enumerate_nests(HEXAGON)) == 2 and h_vector(HEXAGON) == 1 + X
    assert H_triangle(HEXAGON) == 1 + X * Y
    assert len(enumerate_nests(TRIPOD)) == 12
    assert h_vector(TRIPOD) == 1 + 5 * X + 5 * X**2 + X**3 == (1 + 4 * X + X**2) * (1 + X)
    assert len(enumerate_nests(catalan_family(3))) == 5
    assert h_vector(square()) == 1


def test_nests_against_brute_force():
    for q in all_quads(4):
        ranks = brute_nests(q)
        assert h_vector(q).coeff_list("x") == [ranks[r] for r in range(max(ranks) + 1)]
    ranks = brute_nests(lucas_family(2))
    assert sum(ranks.values()) == lucas_h(2)(x=1) == 12


def test_catalan_family_h_is_narayana():
    for n in range(1, 7):
        h = h_vector(catalan_family(n))
        assert h == narayana(n)
        assert h(x=1) == comb(2 * n, n) // (n + 1)


def test_size_bound_refusal():
    with pytest.raises(NestsTooLarge):
        enumerate_nests(TRIPOD, max_squares=3)


def _swap(p1, p2, edge):
    """Cut two serpents crossing the same dual edge and exchange their tails."""
    x, y = edge

    def split(p):
        for i in range(len(p) - 1):
            if (p[i], p[i + 1]) == (x, y):
                return p, i
            if (p[i], p[i + 1]) == (y, x):
                return p[::-1], len(p) - 2 - i
        return None

    a, i = split(p1)
    b, j = split(p2)
    return a[: i + 1] + b[j + 1:], b[: j + 1] + a[i + 1:]


@given(st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_swap_moves_preserve_the_nest(seed):
    rng = random.Random(seed)
    q = rng.choice(enumerate_all(rng.randint(3, 6)))
    paths, side = brute_serpents(q)
    valid = {tuple(p) for p in paths} | {tuple(p[::-1]) for p in paths}
    # random concrete set with at most one extremity per (square, side)
    chosen, slots = [], set()
    for p in rng.sample(paths, len(paths)):
        ends = {(p[0], side[(p[0], p[1])]), (p[-1], side[(p[-1], p[-2])])}
        if not ends & slots:
            chosen.append(list(p))
            slots |= ends
    before = sum((_segments(p, side) for p in chosen), Counter())
    for i in range(len(chosen)):
        for j in range(i + 1, len(chosen)):
            shared = {frozenset(e) for e in zip(chosen[i], chosen[i][1:])} & {
                frozenset(e) for e in zip(chosen[j], chosen[j][1:])
            }
            for e in shared:
                a, b = _swap(chosen[i], chosen[j], tuple(e))
                assert tuple(a) in valid and tuple(b) in valid
                assert a[0] != a[-1] and b[0] != b[-1]
                after = before - _segments(chosen[i], side) - _segments(chosen[j], side)
                after += _segments(a, side) + _segments(b, side)
                assert after == before


def test_duality():
    empty = next(s for s in enumerate_nests(TRIPOD) if s.rank == 0)
    d = dual_nest(empty, TRIPOD)
    assert d.rank == 3
    short = [s for s in all_serpents(TRIPOD) if len(s.path) == 2]
    assert d.packed == sum(s.vector(TRIPOD.n) for s in short)
    for q in all_quads(4):
        r = duality_report(q)
        assert r["involutive"] and r["realisable"] and r["rank_law"]
        assert r["fixed_points"] == abs(r["h_at_minus_one"])


def test_signature_invariants():
    for q in all_quads(5):
        nests = enumerate_nests(q)
        assert all(edge_balanced(s, q) for s in nests)
        assert max(s.rank for s in nests) == q.n - 1
        assert len({s.packed for s in nests}) == len(nests)


def test_palindromic_small():
    assert all(is_palindromic(q) for q in all_quads(5))


def test_parabolic_h():
    lhs, rhs = parabolic_h_sides(HEXAGON)
    assert lhs == rhs == X * Y
    lhs, rhs = parabolic_h_sides(square())
    assert not lhs and not rhs
    assert all(check_parabolic_h(q) for q in all_quads(5))


def test_open_nests():
    s = square()
    assert open_h_vector(s, cut_open_edge(s)) == 1 + T
    for q in all_quads(4):
        for v in range(q.polygon):
            e = (v, (v + 1) % q.polygon)
            assert open_h_vector(q, e).subs("t", 0) == h_vector(q)
    with pytest.raises(ValueError):
        enumerate_open_nests(HEXAGON, (0, 3))


def test_open_gluing():
    assert glue(1 + T, 1 + T) == 1 + X
    cut = cut_along_edge(HEXAGON, (0, 3))
    a = open_h_vector(cut.first, cut_open_edge(cut.first))
    b = open_h_vector(cut.second, cut_open_edge(cut.second))
    assert glue(a, b) == h_vector(HEXAGON)
    for q in all_quads(4):
        for e in q.sorted_edges:
            assert check_open_gluing(q, e)


def test_bridge_nests():
    assert check_bridge_nests(straight_ribbon(3))
    for q in all_quads(4):
        if bridge_indices(q):
            assert check_bridge_nests(q)
            assert len(enumerate_nests(q)) > 0
    with pytest.raises(ValueError):
        check_bridge_nests(TRIPOD)


def test_catalan_nonnesting_bijection():
    c2 = catalan_family(2)
    assert {nest_to_nonnesting(s, c2) for s in enumerate_nests(c2)} == {frozenset(), frozenset({(1, 1)})}
    for n in range(1, 7):
        q = catalan_family(n)
        images = Counter()
        for s in enumerate_nests(q):
            segs = nest_to_nonnesting(s, q)
            assert is_nonnesting(segs) and len(segs) == s.rank
            images[segs] += 1
        assert max(images.values()) == 1
        assert set(images) == set(nonnesting_partitions(n - 1))


def test_nest_to_nonnesting_rejects_other_shapes():
    with pytest.raises(ValueError):
        nest_to_nonnesting(NestSignature(0, 4), TRIPOD)


def test_lucas():
    assert [lucas_h(n)(x=1) for n in range(1, 6)] == [2, 12, 78, 504, 3258]
    assert lucas_h(6)(x=1) == 21060
    assert [lucas_z(n)(x=1) for n in range(1, 6)] == [2, 6, 39, 42, 1629]
    for n in range(1, 4):
        assert h_vector(lucas_family(n)) == lucas_h(n)
        assert h_vector(lucas_k_family(n)) == lucas_k(n)
    for n in range(1, 10):
        assert lucas_coupled_l(n) == lucas_h(n)
    for n in range(1, 13):
        assert all(c > 0 for _, c in lucas_z(n).items())
    assert lucas_family(3).n == 6
