"""Compatibility of chords of the rotated (red) polygon with a backdrop quadrangulation.

All angles are integers in units of ``pi / (2N)``.  Blue (backdrop) vertex
``k`` sits at angle ``-4k``, red vertex ``k`` at ``-4k - 2``: the red polygon
is the blue one turned clockwise by half a step.  Chords are oriented from
their white (even) endpoint to their black (odd) one.

A red chord and a blue chord that do not cross are always compatible; a
crossing pair is compatible when (red, blue) is a positively oriented frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .quad import Edge, Quadrangulation, enumerate_all, is_boundary, norm_edge, rotate

BLUE, RED = 0, 1


def angle(vertex: int, layer: int) -> int:
    return -4 * vertex - 2 * layer


def oriented(e: Edge) -> tuple[int, int]:
    """``(white, black)`` endpoints of a chord."""
    a, b = e
    return (a, b) if a % 2 == 0 else (b, a)


def direction(e: Edge, layer: int, N: int) -> int:
    """Direction of the white-to-black vector of a chord, modulo ``4N``.

    Uses ``e^{iq} - e^{ip} = 2i sin((q-p)/2) e^{i(p+q)/2}``.
    """
    w, b = oriented(e)
    up, uq = angle(w, layer), angle(b, layer)
    full = 4 * N
    d = (uq - up) // 2 % full
    if d in (0, 2 * N):
        raise ValueError(f"degenerate chord {e}")
    out = (up + uq) // 2 + N
    if d > 2 * N:
        out += 2 * N
    return out % full


def position(vertex: int, layer: int) -> int:
    """Clockwise position on the circle of ``2N`` interlaced vertices."""
    return 2 * vertex + layer


def chords_cross(red: Edge, blue: Edge) -> bool:
    """Do a red and a blue chord cross?  (They never share an endpoint.)"""
    lo, hi = sorted(position(v, RED) for v in red)
    a, b = (position(v, BLUE) for v in blue)
    return (lo < a < hi) != (lo < b < hi)


def _positive(red: Edge, blue: Edge, N: int, sign: int) -> bool:
    diff = sign * (direction(blue, BLUE, N) - direction(red, RED, N)) % (4 * N)
    if diff % (2 * N) == 0:
        raise AssertionError(f"red {red} parallel to blue {blue} (N={N})")
    return diff < 2 * N


def _calibrate() -> int:
    """Pick the global chirality on the hexagon.

    The backdrop must be compatible with itself, and every red boundary chord
    crossing the blue inner edge must be compatible with it.
    """
    N = 6
    blue = (0, 3)
    good = []
    for sign in (1, -1):
        ok = _positive((0, 3), blue, N, sign)
        for v in range(N):
            red = norm_edge(v, (v + 1) % N)
            if chords_cross(red, blue):
                ok = ok and _positive(red, blue, N, sign)
        if ok:
            good.append(sign)
    if len(good) != 1:
        raise RuntimeError(f"chirality calibration failed: {good}")
    return good[0]


CHIRALITY = _calibrate()


@lru_cache(maxsize=None)
def edge_compatible(red: Edge, blue: Edge, N: int) -> bool:
    """Is the red chord ``red`` compatible with the blue chord ``blue``?"""
    red, blue = norm_edge(*red), norm_edge(*blue)
    return not chords_cross(red, blue) or _positive(red, blue, N, CHIRALITY)


def inner_chords(N: int) -> list[Edge]:
    return [
        (a, b)
        for a in range(N)
        for b in range(a + 1, N)
        if (b - a) % 2 and not is_boundary((a, b), N)
    ]


@dataclass(frozen=True)
class CompatibleEdgeSet:
    all: tuple[Edge, ...]
    initial: tuple[Edge, ...]
    positive: tuple[Edge, ...]


@lru_cache(maxsize=None)
def compatible_edges(q: Quadrangulation) -> CompatibleEdgeSet:
    """Red inner chords compatible with every inner edge of ``q``."""
    N = q.polygon
    good = tuple(c for c in inner_chords(N) if all(edge_compatible(c, e, N) for e in q.edges))
    initial = q.sorted_edges
    missing = set(initial) - set(good)
    if missing:
        raise AssertionError(f"{q} is not compatible with itself: {sorted(missing)}")
    positive = tuple(c for c in good if c not in q.edges)
    return CompatibleEdgeSet(good, initial, positive)


@lru_cache(maxsize=None)
def enumerate_compatible(q: Quadrangulation) -> tuple[Quadrangulation, ...]:
    """All quadrangulations of the red polygon whose inner edges are ``q``-compatible."""
    allowed = set(compatible_edges(q).all)
    return tuple(p for p in enumerate_all(q.n) if p.edges <= allowed)


def _calibrate_tau() -> int:
    hexagon = Quadrangulation(6, frozenset({(0, 3)}))
    good = [k for k in (1, -1) if rotate(hexagon, k).edges <= set(compatible_edges(hexagon).all)]
    if len(good) != 1:
        raise RuntimeError(f"tau calibration failed: {good}")
    return good[0]


TAU_SHIFT = _calibrate_tau()


def tau(q: Quadrangulation) -> Quadrangulation:
    """The backdrop turned one red step in the positive direction."""
    out = rotate(q, TAU_SHIFT)
    if not out.edges <= set(compatible_edges(q).all):
        raise AssertionError(f"tau({q}) is not {q}-compatible")
    return out
