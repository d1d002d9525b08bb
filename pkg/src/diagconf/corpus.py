"""Small named complexes used as inputs throughout the package.

Vertex order matters for the staircase product, so each builder fixes it
explicitly; it is the order in which the labels are listed below.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable

from .complex import SimplicialComplex, boundary_of_simplex, simplex


def interval() -> SimplicialComplex:
    """I, vertices 0 < 1."""
    return simplex(["0", "1"], "I")


def circle3() -> SimplicialComplex:
    """Boundary of a triangle, vertices a < b < c."""
    return boundary_of_simplex(["a", "b", "c"], "circle3")


def wedge(k: int) -> SimplicialComplex:
    """k triangular circles o-x_i-y_i glued at o; order o, x1, y1, x2, y2, ..."""
    if not 1 <= k <= 4:
        raise ValueError("wedge supports 1 <= k <= 4")
    labels = ["o"] + [v for i in range(1, k + 1) for v in (f"x{i}", f"y{i}")]
    facets = []
    for i in range(1, k + 1):
        x, y = f"x{i}", f"y{i}"
        facets += [("o", x), (x, y), ("o", y)]
    return SimplicialComplex.from_labelled_facets(labels, facets, f"wedge{k}")


def square() -> SimplicialComplex:
    """A square cut along its diagonal bc: triangles abc and bcd."""
    return SimplicialComplex.from_labelled_facets("abcd", ["abc", "bcd"], "square")


def tetrahedron() -> SimplicialComplex:
    """Solid 3-simplex on 0 < 1 < 2 < 3."""
    return simplex(["0", "1", "2", "3"], "tetrahedron")


def sphere() -> SimplicialComplex:
    """Boundary of the tetrahedron, a 2-sphere."""
    return boundary_of_simplex(["0", "1", "2", "3"], "sphere")


def three_triangles() -> SimplicialComplex:
    """Three triangles abx, aby, abz sharing the edge ab."""
    return SimplicialComplex.from_labelled_facets("abxyz", ["abx", "aby", "abz"], "three_triangles")


def fan() -> SimplicialComplex:
    """A square disk coned from its center c over the 4-cycle p1 p2 p3 p4."""
    labels = ["c", "p1", "p2", "p3", "p4"]
    facets = [("c", f"p{i}", f"p{i % 4 + 1}") for i in range(1, 5)]
    return SimplicialComplex.from_labelled_facets(labels, facets, "fan")


RP2_FACETS = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5)]


def rp2() -> SimplicialComplex:
    """The 6-vertex real projective plane."""
    return SimplicialComplex.from_facets([str(i) for i in range(6)], RP2_FACETS, "rp2")


BUILTINS: dict[str, Callable[[], SimplicialComplex]] = {
    "I": interval,
    "circle3": circle3,
    "wedge1": lambda: wedge(1),
    "wedge2": lambda: wedge(2),
    "wedge3": lambda: wedge(3),
    "wedge4": lambda: wedge(4),
    "square": square,
    "tetrahedron": tetrahedron,
    "sphere": sphere,
    "three_triangles": three_triangles,
    "fan": fan,
    "rp2": rp2,
}


def builtin(name: str) -> SimplicialComplex:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin complex {name!r}; known: {', '.join(BUILTINS)}") from None


def all_builtins() -> list[SimplicialComplex]:
    return [f() for f in BUILTINS.values()]


def load_complex(spec: str) -> SimplicialComplex:
    """A builtin name, ``builtin:NAME``, or a path to a JSON complex."""
    if spec.startswith("builtin:"):
        return builtin(spec.split(":", 1)[1])
    if spec in BUILTINS and not Path(spec).exists():
        return builtin(spec)
    return SimplicialComplex.load(spec)


def relabel(K: SimplicialComplex, perm) -> SimplicialComplex:
    """The same complex with vertex i renamed to position perm[i] of the order."""
    labels = [None] * len(K.vertices)
    for i, p in enumerate(perm):
        labels[p] = K.vertices[i]
    facets = [[perm[v] for v in f] for f in K.facets()]
    return SimplicialComplex.from_facets(labels, facets, K.name)

