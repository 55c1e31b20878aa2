import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadstokes.algebra import (
    AlgebraElement,
    check_f_morphism,
    delta,
    derivation,
    f_morphism,
    monomial,
    normalize,
    normalize_by_twist,
    render,
)
from quadstokes.complexes import f_triangle
from quadstokes.quad import (
    HEXAGON,
    TRIPOD,
    bridge_indices,
    canonical_up_to_rotation,
    catalan_family,
    enumerate_all,
    is_connected,
    square,
    straight_ribbon,
)
from quadstokes.rings import ONE, Y

HEX = canonical_up_to_rotation(HEXAGON)
C3 = canonical_up_to_rotation(catalan_family(3))
TRI = canonical_up_to_rotation(TRIPOD)

GENERATORS = sorted(
    {canonical_up_to_rotation(q) for n in range(2, 5) for q in enumerate_all(n) if is_connected(q)}
)


def el(*qs, c=1):
    return AlgebraElement({monomial(qs): c})


elements = st.lists(
    st.tuples(st.lists(st.sampled_from(GENERATORS), max_size=2), st.integers(-3, 3)), min_size=1, max_size=3
).map(lambda terms: sum((el(*qs, c=c) for qs, c in terms), AlgebraElement()))


def test_normalize_examples():
    assert normalize(straight_ribbon(3)) == (HEX, HEX)
    assert normalize(TRIPOD) == (TRI,)
    assert normalize(straight_ribbon(4)) == (HEX, HEX, HEX)
    assert normalize(square()) == ()


def test_normalize_confluence():
    rng = random.Random(11)
    for n in range(3, 7):
        for q in enumerate_all(n):
            if len(bridge_indices(q)) < 2 and n < 6:
                continue
            want = normalize(q)
            for seed in range(3):
                assert normalize(q, random.Random(rng.random())) == want
            assert all(is_connected(f) and f == canonical_up_to_rotation(f) for f in want)


def test_derivation_examples():
    # the single square is the unit of the algebra
    assert derivation(AlgebraElement.of(HEXAGON)) == AlgebraElement.one()
    assert derivation(AlgebraElement.of(square())) == AlgebraElement()
    assert derivation(AlgebraElement.of(TRIPOD)) == el(HEX, HEX) + el(C3, c=2)


def test_delta_examples():
    assert delta(AlgebraElement.of(square())) == AlgebraElement.one()
    assert delta(AlgebraElement.of(HEXAGON)) == el(HEX) + AlgebraElement.one()
    want = AlgebraElement.one() + el(HEX, c=3) + el(HEX, HEX) + el(C3, c=2) + el(TRI)
    assert delta(AlgebraElement.of(TRIPOD)) == want


def test_f_morphism_examples():
    h = AlgebraElement.of(HEXAGON)
    assert f_morphism(derivation(h)) == ONE == f_triangle(HEXAGON).diff("y")
    assert f_morphism(delta(h)) == f_triangle(HEXAGON).subs("y", Y + 1)
    for q in GENERATORS:
        assert all(check_f_morphism(AlgebraElement.of(q)).values())


@given(elements, elements)
@settings(max_examples=40, deadline=None)
def test_leibniz(a, b):
    assert derivation(a * b) == derivation(a) * b + a * derivation(b)


@given(elements, elements)
@settings(max_examples=25, deadline=None)
def test_delta_is_multiplicative(a, b):
    assert delta(a * b) == delta(a) * delta(b)


@given(elements, elements)
@settings(max_examples=40, deadline=None)
def test_f_is_a_ring_morphism(a, b):
    assert f_morphism(a * b) == f_morphism(a) * f_morphism(b)
    assert f_morphism(a + b) == f_morphism(a) + f_morphism(b)
    assert all(check_f_morphism(a).values())


@given(elements)
@settings(max_examples=40, deadline=None)
def test_derivation_is_homogeneous(a):
    for m in a.terms:
        d = derivation(AlgebraElement({m: 1}))
        deg = sum(q.n_inner for q in m)
        assert d.degrees() <= {deg - 1}


def test_twist_projection_keeps_f():
    for q in GENERATORS:
        a = AlgebraElement.of(q)
        assert f_morphism(normalize_by_twist(a)) == f_morphism(a)


def test_arithmetic_and_rendering():
    h = AlgebraElement.of(HEXAGON)
    assert h - h == AlgebraElement() and not (h - h)
    assert 2 * h == h + h == h.scale(2)
    assert render(h * h + 3 * AlgebraElement.one()) == f"3 + [{HEX.polygon}:{HEX.text()}]^2"
    assert render(-h) == f"-[{HEX.polygon}:{HEX.text()}]"
    assert render(AlgebraElement()) == "0"
    with pytest.raises(ArithmeticError):
        h.scale(3).exact_div(2)
