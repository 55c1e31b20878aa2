"""Fans recover the Catalan world.

For the fan C_n the compatible quadrangulations are counted by Catalan numbers,
the oriented flip graph is the Tamari lattice, and the h-vector is Narayana.
"""

from math import comb

from quadstokes.compat import enumerate_compatible
from quadstokes.quad import catalan_family
from quadstokes.rings import render
from quadstokes.serpents import h_vector
from quadstokes.stokes import build_flip_digraph, digraph_isomorphic, tamari_reference


def main():
    print(f"{'n':>2} {'count':>6} {'catalan':>8} {'tamari':>7}  h-vector")
    for n in range(1, 7):
        q = catalan_family(n)
        count = len(enumerate_compatible(q))
        tamari = digraph_isomorphic(build_flip_digraph(q), tamari_reference(n)) if n > 1 else True
        print(f"{n:>2} {count:>6} {comb(2 * n, n) // (n + 1):>8} {str(tamari):>7}  {render(h_vector(q))}")


if __name__ == "__main__":
    main()
