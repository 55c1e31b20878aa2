"""The commutative algebra of quadrangulations modulo bridge splitting.

Elements are integer combinations of monomials; a monomial is a sorted tuple
of connected quadrangulations with at least one inner edge, each canonical
up to rotation.  The single square is the unit: it is the only degree-0
quadrangulation, and the derivation only passes to the quotient by the
bridge relations once the square is identified with 1.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Mapping

from .complexes import f_triangle
from .quad import (
    Quadrangulation,
    bridge_indices,
    bridge_split,
    canonical_cross_tree,
    canonical_up_to_rotation,
    cut_along_edge,
)
from .rings import ONE, Y, BiPolynomial

Monomial = tuple  # of Quadrangulation


def _key(q: Quadrangulation):
    return (q.n, q.text())


def monomial(factors: Iterable[Quadrangulation]) -> Monomial:
    return tuple(sorted((q for q in factors if q.n_inner), key=_key))


def normalize(q: Quadrangulation, rng: random.Random | None = None) -> Monomial:
    """Split at bridges until every factor is connected.

    ``rng`` picks the bridge to split at random (for confluence tests).
    """
    todo = [q]
    done = []
    while todo:
        p = todo.pop()
        bs = bridge_indices(p)
        if not bs:
            done.append(canonical_up_to_rotation(p))
            continue
        b = rng.choice(bs) if rng is not None else bs[0]
        todo.extend(bridge_split(p, b))
    return monomial(done)


class AlgebraElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            m = monomial(m)
            clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def of(cls, q: Quadrangulation) -> "AlgebraElement":
        return cls({normalize(q): 1})

    @classmethod
    def one(cls) -> "AlgebraElement":
        return cls({(): 1})

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return AlgebraElement(out)

    def __neg__(self):
        return AlgebraElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "AlgebraElement":
        return AlgebraElement({m: k * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial(m1 + m2)
                out[m] = out.get(m, 0) + c1 * c2
        return AlgebraElement(out)

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "AlgebraElement":
        out = {}
        for m, c in self.terms.items():
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"coefficient {c} of {render_monomial(m)} not divisible by {k}")
            out[m] = q
        return AlgebraElement(out)

    def degrees(self) -> set[int]:
        return {sum(q.n_inner for q in m) for m in self.terms}

    def __repr__(self):
        return render(self)


def render_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        g = f"[{m[i].polygon}:{m[i].text()}]"
        parts.append(g if j - i == 1 else f"{g}^{j - i}")
        i = j
    return "*".join(parts)


def render(a: AlgebraElement) -> str:
    if not a.terms:
        return "0"
    out = []
    for m in sorted(a.terms, key=lambda m: (sum(q.n_inner for q in m), [_key(q) for q in m])):
        c = a.terms[m]
        body = render_monomial(m)
        if body == "1":
            term = str(abs(c))
        else:
            term = body if abs(c) == 1 else f"{abs(c)}*{body}"
        out.append(("- " if c < 0 else "+ ") + term)
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


@lru_cache(maxsize=None)
def derivation_generator(q: Quadrangulation) -> AlgebraElement:
    """Sum over inner edges of the product of the two cut pieces."""
    out: dict[Monomial, int] = {}
    for e in q.sorted_edges:
        cut = cut_along_edge(q, e)
        m = monomial(normalize(cut.first) + normalize(cut.second))
        out[m] = out.get(m, 0) + 1
    return AlgebraElement(out)


def derivation(a: AlgebraElement) -> AlgebraElement:
    """Extension of the generator rule by the Leibniz rule."""
    out = AlgebraElement()
    for m, c in a.terms.items():
        for i, q in enumerate(m):
            rest = AlgebraElement({m[:i] + m[i + 1:]: c})
            out = out + derivation_generator(q) * rest
    return out


def delta(a: AlgebraElement) -> AlgebraElement:
    """``exp`` of the derivation; the series stops because the degree drops."""
    total = a
    cur = a
    k = 1
    while cur:
        cur = derivation(cur).exact_div(k)
        total = total + cur
        k += 1
    return total


def f_morphism(a: AlgebraElement) -> BiPolynomial:
    out = BiPolynomial()
    for m, c in a.terms.items():
        p = ONE
        for q in m:
            p = p * f_triangle(q)
        out = out + p * c
    return out


def normalize_by_twist(a: AlgebraElement) -> AlgebraElement:
    """Project every generator to the canonical member of its twist class."""
    return AlgebraElement(
        {monomial(canonical_up_to_rotation(canonical_cross_tree(q)) for q in m): c for m, c in a.terms.items()}
    )


def check_f_morphism(a: AlgebraElement) -> dict[str, bool]:
    F = f_morphism(a)
    return {
        "derivation": f_morphism(derivation(a)) == F.diff("y"),
        "delta": f_morphism(delta(a)) == F.subs("y", Y + 1),
    }
