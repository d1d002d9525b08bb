"""Compact retracts of diagonal complements.

If A is a full subcomplex of K, |K| - |A| deformation retracts onto the
subcomplex of simplices with no vertex in A.  The fat diagonal is not full
in X^n, so we pass to Sd(X^n), where the subdivided fat diagonal is full and
the retract W^d(X, n) is the order complex of the X^n-simplices lying
outside the fat diagonal.  W is enumerated skeleton by skeleton without ever
building Sd(X^n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .complex import (
    Simplex,
    SimplicialComplex,
    Subcomplex,
    barycentric_subdivision,
    bracket,
    flag_order,
    simplex,
)
from .product import ProductComplex, fat_diagonal, fullness_witness, in_fat_diagonal, product_complex


class NotFullError(ValueError):
    pass


@dataclass(frozen=True)
class RetractModel:
    """A complement model W, explicit through dimension ``max_dim``.

    ``base`` is the ambient complex before subdivision (X^n for the
    configuration models) and ``forbidden`` the subcomplex of it whose
    barycenters are removed; ``forbidden`` subdivided is full in Sd(base).
    """

    base: object
    forbidden: Subcomplex
    complex: SimplicialComplex
    max_dim: int
    complete: bool
    params: dict = field(default_factory=dict)
    cells: tuple = ()
    """Base simplices labelling the vertices of ``complex``, in order."""


def disjoint_complement(K: SimplicialComplex, A: Subcomplex) -> Subcomplex:
    """Simplices of K with no vertex in A (a deformation retract of |K| - |A|)."""
    witness = fullness_witness(A)
    if witness is not None:
        raise NotFullError(
            f"subcomplex is not full (witness {K.labels(witness)}); "
            "pass to the barycentric subdivision first"
        )
    verts = A.vertex_set()
    return Subcomplex(K, frozenset(s for s in K.simplices if verts.isdisjoint(s)))


def _allowed_faces(allowed: list[Simplex], index: dict[Simplex, int]) -> list[list[int]]:
    faces = []
    for s in allowed:
        fs = []
        for r in range(len(s) - 1, 0, -1):
            for f in itertools.combinations(s, r):
                i = index.get(f)
                if i is not None:
                    fs.append(i)
        faces.append(fs)
    return faces


def flag_ids(allowed: list[Simplex], k: int) -> Iterator[tuple[int, ...]]:
    """Flags of length <= k+1 in ``allowed`` as ascending index tuples.

    ``allowed`` must be in flag order (dimension, then lexicographic); each
    flag is produced once, from its top element, in a fixed order.
    """
    index = {s: i for i, s in enumerate(allowed)}
    faces = _allowed_faces(allowed, index)
    for top in range(len(allowed)):
        stack = [(top,)]
        while stack:
            chain = stack.pop()
            yield chain[::-1]
            if len(chain) <= k:
                low = chain[-1]
                for f in reversed(faces[low]):
                    stack.append(chain + (f,))


def flag_counts(allowed: list[Simplex], k: int) -> list[int]:
    """Number of flags of each length 1..k+1, counted without enumerating them."""
    index = {s: i for i, s in enumerate(allowed)}
    faces = _allowed_faces(allowed, index)
    cur = [1] * len(allowed)
    out = [len(allowed)]
    for _ in range(k):
        cur = [sum(cur[f] for f in fs) for fs in faces]
        out.append(sum(cur))
    return out


def delta_model_size(X: SimplicialComplex, n: int, d: int, max_dim: int) -> list[int]:
    """f-vector of W^d(X, n) through ``max_dim``, computed by counting."""
    P = product_complex(X, n)
    allowed = [s for s in flag_order(P.complex) if not in_fat_diagonal(P, s, d)]
    return flag_counts(allowed, max_dim)


def lazy_flag_skeleton(
    base: SimplicialComplex, vertex_filter: Callable[[Simplex], bool], k: int
) -> Iterator[tuple[Simplex, ...]]:
    """Flags tau_0 < ... < tau_p (p <= k) of base simplices all passing the filter.

    Equals the k-skeleton of Sd(base) restricted to barycenters that pass,
    without materializing Sd(base).
    """
    allowed = [s for s in flag_order(base) if vertex_filter(s)]
    for ids in flag_ids(allowed, k):
        yield tuple(allowed[i] for i in ids)


def flag_complex(
    base: SimplicialComplex, allowed: Sequence[Simplex], k: int, name: str = ""
) -> SimplicialComplex:
    """The k-skeleton of the order complex of ``allowed`` (in flag order)."""
    allowed = list(allowed)
    labels = tuple(bracket(base.labels(s)) for s in allowed)
    flags = sorted(flag_ids(allowed, k), key=lambda f: (len(f), f))
    return SimplicialComplex(labels, tuple(flags), name)


def subdivided_complement(
    K: SimplicialComplex, forbidden: Callable[[Simplex], bool], max_dim: int
) -> tuple[list[Simplex], SimplicialComplex]:
    allowed = [s for s in flag_order(K) if not forbidden(s)]
    return allowed, flag_complex(K, allowed, max_dim)


def delta_model(X: SimplicialComplex, n: int, d: int, max_dim: int | None = None) -> RetractModel:
    """W^d(X, n): the retract of the complement of Delta_{d+1}(X, n).

    A flag of X^n-simplices belongs to W iff none of its members lies in the
    fat diagonal.  ``max_dim=None`` builds W in full.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if max_dim is not None and max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    P = product_complex(X, n)
    top = P.complex.dimension
    k = top if max_dim is None else max_dim
    allowed, W = subdivided_complement(P.complex, lambda s: in_fat_diagonal(P, s, d), k)
    return RetractModel(
        base=P,
        forbidden=fat_diagonal(P, d),
        complex=W,
        max_dim=k,
        complete=k >= top,
        params={"X": X.name, "n": n, "d": d, "max_dim": k},
        cells=tuple(allowed),
    )


def stellar_subdivision(K: SimplicialComplex, centers: Sequence[Simplex]) -> tuple[SimplicialComplex, dict]:
    """Star K at each center, largest first.

    Returns the subdivided complex and the new vertex of each center.
    Centers of equal dimension are never nested, so their order is
    immaterial.
    """
    simplices = set(K.simplices)
    by_vertex: dict[int, set[Simplex]] = {}
    for t in simplices:
        for v in t:
            by_vertex.setdefault(v, set()).add(t)
    labels = list(K.vertices)
    new_vertex = {}
    for w in sorted(centers, key=lambda c: (-len(c), c)):
        b = len(labels)
        labels.append(bracket(K.labels(w)))
        new_vertex[w] = b
        ws = set(w)
        star = set.intersection(*(by_vertex[v] for v in w))
        added = set()
        for t in star:
            for r in range(0, len(t) + 1):
                for tau in itertools.combinations(t, r):
                    if not ws.issubset(tau):
                        added.add(tau + (b,))
        for t in star:
            simplices.discard(t)
            for v in t:
                by_vertex[v].discard(t)
        for t in added:
            simplices.add(t)
            for v in t:
                by_vertex.setdefault(v, set()).add(t)
    out = SimplicialComplex(tuple(labels), tuple(sorted(simplices, key=lambda t: (len(t), t))), K.name)
    return out, new_vertex


def minimal_delta_model(X: SimplicialComplex, n: int, d: int, max_dim: int | None = None) -> RetractModel:
    """A smaller retract of Delta^d(X, n) than W^d(X, n).

    Only the simplices of X^n that break fullness of the fat diagonal (all
    vertices on it, interior off it) are starred; then the fat diagonal is
    full and the retract is everything avoiding its vertices.  For the thin
    diagonal (d = n - 1) nothing is subdivided at all.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    P = product_complex(X, n)
    A = fat_diagonal(P, d)
    va = A.vertex_set()
    witnesses = [t for t in P.complex.simplices if t not in A.simplices and va.issuperset(t)]
    K, _ = stellar_subdivision(P.complex, witnesses)
    A_in_K = Subcomplex(K, A.simplices)
    C = disjoint_complement(K, A_in_K)
    top = K.dimension
    k = top if max_dim is None else max_dim
    kept = [t for t in C.simplices if len(t) <= k + 1]
    return RetractModel(
        base=P,
        forbidden=A,
        complex=K.restrict(kept, f"W'({X.name},{n},{d})"),
        max_dim=k,
        complete=k >= top,
        params={"X": X.name, "n": n, "d": d, "max_dim": k, "method": "minimal"},
    )


def cyclic_zero_run(zeros: set[int], n: int) -> int:
    """Longest run of cyclically consecutive indices in ``zeros`` (indices mod n)."""
    if len(zeros) >= n:
        return n
    best = 0
    for start in zeros:
        if (start - 1) % n in zeros:
            continue
        run = 0
        while (start + run) % n in zeros:
            run += 1
        best = max(best, run)
    return best


def simplex_interval_model(n: int, d: int) -> RetractModel:
    """Finite model of the partially compactified open simplex Delta_{n-1}(d).

    A face of Delta_{n-1} is removed when its zero coordinates contain d
    cyclically consecutive indices (d+1 coincident points on the circle).
    """
    if n < 2 or not 1 <= d <= n - 1:
        raise ValueError("need n >= 2 and 1 <= d <= n-1")
    base = simplex([f"s{i + 1}" for i in range(n)], f"Delta_{n - 1}")
    order = flag_order(base)
    K = barycentric_subdivision(base)

    def bad(face: Simplex) -> bool:
        return cyclic_zero_run(set(range(n)) - set(face), n) >= d

    forbidden_vertices = {i for i, s in enumerate(order) if bad(s)}
    A = Subcomplex(K, frozenset(s for s in K.simplices if forbidden_vertices.issuperset(s)))
    C = disjoint_complement(K, A)
    return RetractModel(
        base=base,
        forbidden=Subcomplex(base, frozenset(s for s in base.simplices if bad(s))),
        complex=C.as_complex(f"Delta_{n - 1}({d})"),
        max_dim=n - 1,
        complete=True,
        params={"n": n, "d": d},
        cells=tuple(s for s in order if not bad(s)),
    )


def _labelled_flags(model: RetractModel) -> set[tuple]:
    W = model.complex
    return {W.labels(s) for s in W.simplices}


def restriction_check(X: SimplicialComplex, A, n: int, d: int) -> bool:
    """W^d(A, n) computed on its own equals W^d(X, n) restricted to Sd(A^n)."""
    A_complex = A.as_complex() if isinstance(A, Subcomplex) else A
    if not A_complex.simplices:
        return True
    WA = delta_model(A_complex, n, d)
    WX = delta_model(X, n, d)
    # vertices of W^d(X,n) inside Sd(A^n) are exactly the non-diagonal simplices of A^n
    PA: ProductComplex = WA.base
    a_cells = {bracket(PA.complex.labels(s)) for s in PA.complex.simplices}
    restricted = {f for f in _labelled_flags(WX) if a_cells.issuperset(f)}
    return restricted == _labelled_flags(WA)
