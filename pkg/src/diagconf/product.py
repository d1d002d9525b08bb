"""Staircase triangulation of X^n, fat diagonals and the coordinate action.

For an ordered complex X, rows w_0 < ... < w_q of n-tuples of vertices span
a simplex of X^n iff every column is weakly increasing and spans a simplex
of X.  Vertices of X^n are ordered lexicographically.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

from .complex import Simplex, SimplicialComplex, Subcomplex


class ProductSimplex(NamedTuple):
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def q(self) -> int:
        return len(self.rows) - 1

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.rows))

    def is_staircase(self, X: SimplicialComplex) -> bool:
        if len(set(self.rows)) != len(self.rows):
            return False
        for col in self.columns:
            if any(a > b for a, b in zip(col, col[1:])):
                return False
            if tuple(sorted(set(col))) not in X:
                return False
        return True

    def column_multiplicity(self) -> int:
        """Size of the largest group of identical columns."""
        return max(Counter(self.columns).values())


def _multiset_permutations(counts: list[int]) -> Iterator[tuple[int, ...]]:
    total = sum(counts)
    out: list[int] = []

    def rec():
        if len(out) == total:
            yield tuple(out)
            return
        for k, c in enumerate(counts):
            if c:
                counts[k] -= 1
                out.append(k)
                yield from rec()
                out.pop()
                counts[k] += 1

    yield from rec()


@dataclass(frozen=True)
class ProductComplex:
    """X^n with its staircase triangulation.

    ``complex`` has one vertex per n-tuple (label ``"a|b|..."``); vertex
    index = the tuple read in base |V(X)|, which is the lexicographic order.
    """

    X: SimplicialComplex
    n: int
    complex: SimplicialComplex

    @cached_property
    def tuples(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(len(self.X.vertices)), repeat=self.n))

    def index(self, row: Sequence[int]) -> int:
        m = len(self.X.vertices)
        i = 0
        for v in row:
            i = i * m + v
        return i

    def rows(self, simplex: Simplex) -> tuple[tuple[int, ...], ...]:
        t = self.tuples
        return tuple(t[i] for i in simplex)

    def product_simplex(self, simplex: Simplex) -> ProductSimplex:
        return ProductSimplex(self.rows(simplex))

    def simplex_of(self, rows: Sequence[Sequence[int]]) -> Simplex:
        return tuple(sorted(self.index(r) for r in rows))


def maximal_staircases(X: SimplicialComplex, n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Maximal chains for each n-tuple of facets: the shuffles of their steps."""
    facets = X.facets()
    for ft in itertools.product(facets, repeat=n):
        counts = [len(f) - 1 for f in ft]
        for steps in _multiset_permutations(counts):
            pos = [0] * n
            rows = [tuple(f[0] for f in ft)]
            for k in steps:
                pos[k] += 1
                rows.append(tuple(ft[c][pos[c]] for c in range(n)))
            yield tuple(rows)


def product_complex(X: SimplicialComplex, n: int) -> ProductComplex:
    if n < 1:
        raise ValueError("n must be >= 1")
    m = len(X.vertices)
    tuples = list(itertools.product(range(m), repeat=n))
    labels = tuple("|".join(str(X.vertices[v]) for v in t) for t in tuples)
    weights = [m ** (n - 1 - k) for k in range(n)]
    tops: set[Simplex] = set()
    for rows in maximal_staircases(X, n):
        tops.add(tuple(sum(w * v for w, v in zip(weights, r)) for r in rows))
    faces: set[Simplex] = set()
    for t in tops:
        for r in range(1, len(t) + 1):
            faces.update(itertools.combinations(t, r))
    simplices = tuple(sorted(faces, key=lambda s: (len(s), s)))
    name = f"{X.name}^{n}" if X.name else ""
    return ProductComplex(X, n, SimplicialComplex(labels, simplices, name))


def in_fat_diagonal(P: ProductComplex, simplex: Simplex, d: int) -> bool:
    """Whether a staircase simplex lies in the fat diagonal Delta_{d+1}.

    A point of the open simplex has all barycentric weights positive.  Its
    k-th coordinate puts weight sum_{j: v_jk = u} t_j on each vertex u, and
    by column monotonicity the rows carrying a given u form an interval.
    Two coordinates agree iff these interval weights agree, which for
    positive weights forces the two columns to be identical.  So the open
    simplex meets Delta_{d+1} iff it lies inside it iff d+1 columns coincide.
    """
    cols = Counter(zip(*P.rows(simplex)))
    return max(cols.values()) >= d + 1


def fat_diagonal(P: ProductComplex, d: int) -> Subcomplex:
    if d < 1:
        raise ValueError("d must be >= 1")
    return Subcomplex(P.complex, frozenset(s for s in P.complex.simplices if in_fat_diagonal(P, s, d)))


def fullness_witness(A: Subcomplex) -> Simplex | None:
    """A simplex of the parent spanned by vertices of A but missing from A."""
    verts = A.vertex_set()
    for s in A.parent.simplices:
        if s not in A.simplices and verts.issuperset(s):
            return s
    return None


def is_full(A: Subcomplex) -> bool:
    return fullness_witness(A) is None


class VertexPermutationAction:
    """A group of simplicial automorphisms, given by generating vertex bijections.

    ``generators`` are tuples ``g`` with ``g[v]`` the image of vertex ``v``.
    """

    def __init__(self, generators: Sequence[Sequence[int]], nvertices: int, column_perms=None):
        self.generators = tuple(tuple(g) for g in generators)
        self.nvertices = nvertices
        self.column_perms = column_perms
        for g in self.generators:
            if sorted(g) != list(range(nvertices)):
                raise ValueError("generator is not a bijection of the vertex set")

    @staticmethod
    def apply(g: Sequence[int], simplex: Simplex) -> Simplex:
        return tuple(sorted(g[v] for v in simplex))

    def elements(self) -> list[tuple[int, ...]]:
        """All group elements, by closure under the generators."""
        ident = tuple(range(self.nvertices))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    gh = tuple(g[h[v]] for v in range(self.nvertices))
                    if gh not in seen:
                        seen.add(gh)
                        nxt.append(gh)
            frontier = nxt
        return sorted(seen)

    @cached_property
    def orbit_rep(self) -> list[int]:
        """Smallest vertex of each vertex's orbit."""
        parent = list(range(self.nvertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for v, w in enumerate(g):
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.nvertices)]

    def orbit(self, v: int) -> list[int]:
        r = self.orbit_rep[v]
        return [w for w in range(self.nvertices) if self.orbit_rep[w] == r]

    def simplex_orbit(self, simplex: Simplex) -> set[Simplex]:
        seen = {simplex}
        frontier = [simplex]
        while frontier:
            nxt = []
            for s in frontier:
                for g in self.generators:
                    t = self.apply(g, s)
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        return seen

    def is_simplicial(self, K: SimplicialComplex) -> bool:
        index = set(K.simplices)
        return all(self.apply(g, s) in index for g in self.generators for s in K.simplices)

    def induced(self, simplices: Sequence[Simplex]) -> "VertexPermutationAction":
        """The action on a complex whose vertices are the given simplices."""
        pos = {s: i for i, s in enumerate(simplices)}
        gens = [[pos[self.apply(g, s)] for s in simplices] for g in self.generators]
        return VertexPermutationAction(gens, len(simplices), self.column_perms)


def permute_row(perm: Sequence[int], row: Sequence[int]) -> tuple[int, ...]:
    """Coordinate k of the result is coordinate perm^-1(k) of ``row``."""
    out = [0] * len(row)
    for k, v in enumerate(row):
        out[perm[k]] = v
    return tuple(out)


def symmetric_action(P: ProductComplex) -> VertexPermutationAction:
    """S_n acting on X^n by permuting coordinates, generated by adjacent swaps."""
    perms = []
    for i in range(P.n - 1):
        p = list(range(P.n))
        p[i], p[i + 1] = p[i + 1], p[i]
        perms.append(tuple(p))
    gens = [[P.index(permute_row(p, t)) for t in P.tuples] for p in perms]
    action = VertexPermutationAction(gens, len(P.tuples), tuple(perms))
    if not action.is_simplicial(P.complex):
        raise AssertionError("coordinate permutation is not simplicial")
    return action
