"""A walk around the smallest quadrangulation that is not a ribbon or a fan.

The tripod has a centre square with three neighbours. We list its compatible
quadrangulations, orient the flips between them, and compare the F- and
H-triangles with the serpent nest count.
"""

from quadstokes.algebra import AlgebraElement, delta, derivation, render as render_element
from quadstokes.compat import compatible_edges, enumerate_compatible, tau
from quadstokes.complexes import f_triangle, f_vector
from quadstokes.quad import TRIPOD
from quadstokes.rings import render
from quadstokes.serpents import H_triangle, all_serpents, enumerate_nests, h_vector
from quadstokes.stokes import build_flip_digraph


def main():
    q = TRIPOD
    print(f"tripod: {q.polygon}-gon, inner edges {q.text()}")

    ces = compatible_edges(q)
    print(f"compatible chords: {len(ces.all)} ({len(ces.initial)} initial, {len(ces.positive)} positive)")

    qs = enumerate_compatible(q)
    print(f"compatible quadrangulations: {len(qs)}")
    print(f"tau(Q) = {tau(q).text()}")

    g = build_flip_digraph(q)
    a = g.analysis()
    print(f"flip digraph: {a['vertices']} vertices, {g.n_arcs()} arcs, lattice={a['lattice']}, graded={a['graded']}")

    print(f"F = {render(f_triangle(q))}")
    print(f"f-vector = {f_vector(q)}")

    print(f"serpents: {len(all_serpents(q))}, nests: {len(enumerate_nests(q))}")
    print(f"h = {render(h_vector(q))}")
    print(f"H = {render(H_triangle(q))}")

    e = AlgebraElement.of(q)
    print(f"d(tripod) = {render_element(derivation(e))}")
    print(f"exp(d)(tripod) = {render_element(delta(e))}")


if __name__ == "__main__":
    main()
