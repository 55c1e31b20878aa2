import pytest
from oracles import geometric_compatible, geometric_compatible_quads, geometric_compatible_set

from quadstokes.compat import (
    CHIRALITY,
    TAU_SHIFT,
    compatible_edges,
    direction,
    edge_compatible,
    enumerate_compatible,
    inner_chords,
    tau,
    RED,
    BLUE,
)
from quadstokes.quad import HEXAGON, TRIPOD, catalan_family, enumerate_all, norm_edge, rotate, square


def all_quads(max_n):
    return [q for n in range(1, max_n + 1) for q in enumerate_all(n)]


def test_calibration_constants():
    assert CHIRALITY == 1
    assert TAU_SHIFT == -1


def test_hexagon_examples():
    assert edge_compatible((0, 3), (0, 3), 6)
    assert not edge_compatible((1, 4), (0, 3), 6)
    ces = compatible_edges(HEXAGON)
    assert set(ces.all) == {(0, 3), (2, 5)}
    assert ces.initial == ((0, 3),) and ces.positive == ((2, 5),)
    assert compatible_edges(square()).all == ()


def test_predicate_against_floating_point_geometry():
    for N in range(4, 14, 2):
        chords = inner_chords(N) + [norm_edge(v, (v + 1) % N) for v in range(N)]
        for red in chords:
            for blue in inner_chords(N):
                assert edge_compatible(red, blue, N) == geometric_compatible(red, blue, N), (red, blue, N)


def test_compatible_sets_against_geometry():
    for q in all_quads(5):
        assert set(compatible_edges(q).all) == geometric_compatible_set(q)


def test_red_boundary_chords_always_compatible():
    for N in range(6, 14, 2):
        for blue in inner_chords(N):
            for v in range(N):
                assert edge_compatible(norm_edge(v, (v + 1) % N), blue, N)


def test_no_parallel_pairs():
    for N in range(4, 14, 2):
        for red in inner_chords(N):
            for blue in inner_chords(N):
                d = (direction(blue, BLUE, N) - direction(red, RED, N)) % (4 * N)
                # always 2 mod 4 units apart, so never parallel
                assert d % 4 == 2 and d % (2 * N) != 0


def test_colour_swap_invariance():
    # a one-step rotation exchanges the colours of all vertices
    for q in all_quads(4):
        N = q.polygon
        p = rotate(q, 1)
        moved = {norm_edge((a + 1) % N, (b + 1) % N) for a, b in compatible_edges(q).all}
        assert set(compatible_edges(p).all) == moved


def test_colour_swap_in_geometry():
    # reversing both orientations (black to white) leaves the sign unchanged
    N = 10
    for red in inner_chords(N):
        for blue in inner_chords(N):
            a = geometric_compatible(red, blue, N)
            b = geometric_compatible(red[::-1], blue[::-1], N)
            assert a == b


def test_ground_set_invariants():
    for q in all_quads(5):
        ces = compatible_edges(q)
        assert set(ces.initial) <= set(ces.all) and len(ces.initial) == q.n - 1
        assert set(ces.positive) == set(ces.all) - set(ces.initial)


def test_enumerate_compatible_examples():
    assert [len(enumerate_compatible(catalan_family(n))) for n in range(2, 7)] == [2, 5, 14, 42, 132]
    assert len(enumerate_compatible(TRIPOD)) == 12
    assert len(enumerate_compatible(HEXAGON)) == 2


def test_enumerate_compatible_against_geometry():
    for q in all_quads(4):
        assert {p.edges for p in enumerate_compatible(q)} == geometric_compatible_quads(q)
    assert len(geometric_compatible_quads(TRIPOD)) == 12


def test_tau():
    assert tau(HEXAGON).edges == {(2, 5)}
    for q in all_quads(5):
        t = tau(q)
        assert t in enumerate_compatible(q)
        if q.n > 1:
            assert t != q


@pytest.mark.parametrize("q", [HEXAGON, TRIPOD, catalan_family(4)])
def test_backdrop_compatible_with_itself(q):
    assert q in enumerate_compatible(q)
