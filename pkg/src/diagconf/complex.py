"""Finite abstract simplicial complexes.

A complex is an ordered vertex list plus a family of simplices, each simplex
a sorted tuple of vertex indices.  The vertex order is part of the data: the
staircase triangulation of products depends on it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

Simplex = tuple[int, ...]


def _canonical(simplices: Iterable[Simplex]) -> tuple[Simplex, ...]:
    return tuple(sorted(set(simplices), key=lambda s: (len(s), s)))


def closure(facets: Iterable[Sequence[int]]) -> tuple[Simplex, ...]:
    """All nonempty faces of the given simplices, canonically ordered."""
    out: set[Simplex] = set()
    for f in facets:
        f = tuple(sorted(set(f)))
        if f in out:
            continue
        for r in range(1, len(f) + 1):
            out.update(itertools.combinations(f, r))
    return _canonical(out)


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite abstract simplicial complex on an ordered vertex list.

    ``simplices`` is stored exactly as given so that :func:`validate` can
    report problems; every constructor in this package produces canonical
    storage (sorted tuples, ordered by dimension then lexicographically).
    """

    vertices: tuple
    simplices: tuple[Simplex, ...]
    name: str = ""
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "simplices", tuple(tuple(s) for s in self.simplices))
        object.__setattr__(self, "_index", frozenset(self.simplices))

    @classmethod
    def from_facets(cls, vertices: Sequence, facets: Iterable[Sequence[int]], name: str = ""):
        return cls(tuple(vertices), closure(facets), name)

    @classmethod
    def from_labelled_facets(cls, vertices: Sequence, facets: Iterable[Sequence], name: str = ""):
        """Build from facets given by vertex labels rather than indices."""
        pos = {v: i for i, v in enumerate(vertices)}
        return cls.from_facets(vertices, [[pos[v] for v in f] for f in facets], name)

    @property
    def dimension(self) -> int:
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self._index

    def __len__(self) -> int:
        return len(self.simplices)

    def of_dim(self, k: int) -> list[Simplex]:
        return [s for s in self.simplices if len(s) == k + 1]

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def facets(self) -> list[Simplex]:
        """Maximal simplices (chambers)."""
        # for a downward closed family: maximal iff no codimension-one coface
        covered = {f for s in self.simplices if len(s) > 1 for f in itertools.combinations(s, len(s) - 1)}
        return sorted((s for s in set(self.simplices) if s not in covered), key=lambda s: (len(s), s))

    def labels(self, simplex: Simplex) -> tuple:
        return tuple(self.vertices[i] for i in simplex)

    def used_vertices(self) -> list[int]:
        return sorted({v for s in self.simplices for v in s})

    def induced(self, vertex_subset: Iterable[int]) -> "SimplicialComplex":
        """Full subcomplex on a vertex subset, reindexed in ambient order."""
        keep = sorted(set(vertex_subset))
        return self.restrict(s for s in self.simplices if set(s) <= set(keep))

    def restrict(self, simplices: Iterable[Simplex], name: str = "") -> "SimplicialComplex":
        """Complex on the given simplices, dropping unused vertices."""
        simplices = list(simplices)
        used = sorted({v for s in simplices for v in s})
        new = {v: i for i, v in enumerate(used)}
        return SimplicialComplex(
            tuple(self.vertices[v] for v in used),
            _canonical(tuple(new[v] for v in s) for s in simplices),
            name,
        )

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": [str(v) for v in self.vertices],
            "facets": [list(f) for f in self.facets()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SimplicialComplex":
        """Read ``facets`` (closed downward) or ``simplices`` (taken as is)."""
        vertices = doc["vertices"]
        if "simplices" in doc:
            return cls(tuple(vertices), tuple(tuple(s) for s in doc["simplices"]), doc.get("name", ""))
        for f in doc["facets"]:
            for i in f:
                if not (isinstance(i, int) and 0 <= i < len(vertices)):
                    raise ValueError(f"facet {f} references unknown vertex index {i}")
        return cls.from_facets(vertices, doc["facets"], doc.get("name", ""))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1))

    @classmethod
    def load(cls, path) -> "SimplicialComplex":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class Subcomplex:
    """A downward closed family of simplices of ``parent``."""

    parent: SimplicialComplex
    simplices: frozenset

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def vertex_set(self) -> set[int]:
        return {s[0] for s in self.simplices if len(s) == 1}

    def as_complex(self, name: str = "") -> SimplicialComplex:
        return self.parent.restrict(self.simplices, name)

    def is_downward_closed(self) -> bool:
        return all(
            f in self.simplices
            for s in self.simplices
            for f in itertools.combinations(s, len(s) - 1)
            if f
        )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = "ok"
    simplex: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(K: SimplicialComplex) -> ValidationReport:
    """Check canonical storage and downward closure.

    Reports the first offending simplex: unknown vertex, unsorted or
    repeated vertex, duplicate simplex, or a missing face.
    """
    seen: set[Simplex] = set()
    nv = len(K.vertices)
    if len(set(K.vertices)) != nv:
        return ValidationReport(False, "duplicate vertex labels")
    for s in K.simplices:
        if not s:
            return ValidationReport(False, "empty simplex", s)
        if any(not (0 <= v < nv) for v in s):
            return ValidationReport(False, f"unknown vertex in {set(s)}", s)
        if list(s) != sorted(set(s)):
            return ValidationReport(False, f"simplex {s} not stored in vertex order", s)
        if s in seen:
            return ValidationReport(False, f"duplicate simplex {set(s)}", s)
        seen.add(s)
    # codimension-one faces suffice by induction on dimension
    for s in sorted(K.simplices, key=len):
        if len(s) > 1:
            for f in itertools.combinations(s, len(s) - 1):
                if f not in seen:
                    face = "{" + ",".join(str(K.vertices[v]) for v in f) + "}"
                    return ValidationReport(False, f"missing face {face}", s)
    return ValidationReport(True)


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    if k < 0:
        raise ValueError("skeleton dimension must be >= 0")
    return SimplicialComplex(K.vertices, tuple(s for s in K.simplices if len(s) <= k + 1), K.name)


def bracket(labels) -> str:
    return "{" + ",".join(str(v) for v in labels) + "}"


def flag_order(K: SimplicialComplex) -> list[Simplex]:
    """Simplices of K in the vertex order of its barycentric subdivision."""
    return sorted(K.simplices, key=lambda s: (len(s), s))


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision.

    Vertices are the simplices of ``K`` (labelled ``{a,b,...}``), ordered by
    dimension and then by the canonical simplex order; simplices are flags.
    """
    order = flag_order(K)
    pos = {s: i for i, s in enumerate(order)}
    flags: list[Simplex] = []
    for top in order:
        # chains ending at ``top``
        stack = [((pos[top],), top)]
        while stack:
            chain, low = stack.pop()
            flags.append(tuple(sorted(chain)))
            for r in range(1, len(low)):
                for f in itertools.combinations(low, r):
                    stack.append((chain + (pos[f],), f))
    labels = tuple(bracket(K.labels(s)) for s in order)
    return SimplicialComplex(labels, _canonical(flags), f"Sd({K.name})" if K.name else "")


def link(K: SimplicialComplex, sigma: Sequence[int]) -> SimplicialComplex:
    """Link of ``sigma``, on the ambient vertex list."""
    sigma = tuple(sorted(sigma))
    if sigma not in K:
        raise ValueError(f"{sigma} is not a simplex of the complex")
    ss = set(sigma)
    out = []
    for t in K.simplices:
        if ss.isdisjoint(t) and tuple(sorted(ss.union(t))) in K:
            out.append(t)
    return SimplicialComplex(K.vertices, _canonical(out))


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join of two complexes with disjoint labels; K1's vertices come first."""
    if set(K1.vertices) & set(K2.vertices):
        raise ValueError("join requires disjoint vertex labels")
    off = len(K1.vertices)
    left = [()] + list(K1.simplices)
    right = [()] + [tuple(v + off for v in t) for t in K2.simplices]
    simplices = [a + b for a in left for b in right if a or b]
    return SimplicialComplex(K1.vertices + K2.vertices, _canonical(simplices))


def connected_components(K: SimplicialComplex) -> list[Subcomplex]:
    """Components by 1-skeleton connectivity, ordered by smallest vertex."""
    parent = list(range(len(K.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in K.simplices:
        if len(s) == 2:
            a, b = find(s[0]), find(s[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[Simplex]] = {}
    for s in K.simplices:
        groups.setdefault(find(s[0]), []).append(s)
    return [Subcomplex(K, frozenset(groups[r])) for r in sorted(groups)]


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** (len(s) - 1) for s in K.simplices)


def simplex(labels: Sequence, name: str = "") -> SimplicialComplex:
    """The full simplex on the given labels."""
    return SimplicialComplex.from_facets(labels, [range(len(labels))], name)


def boundary_of_simplex(labels: Sequence, name: str = "") -> SimplicialComplex:
    n = len(labels)
    return SimplicialComplex.from_facets(labels, itertools.combinations(range(n), n - 1), name)
