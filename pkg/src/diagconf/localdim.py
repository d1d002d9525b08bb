"""Chambers, shared faces and local homotopical dimension.

For x interior to a simplex s, a small punctured neighborhood of x is
homotopy equivalent to the join of the boundary of s with link(s).  The
local homotopical dimension is the minimum over simplices of the
connectivity of that join.  Combinatorial cross-check: every chamber has
dimension >= r + 2 and every essential shared face dimension >= r + 1.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .complex import Simplex, SimplicialComplex, boundary_of_simplex, connected_components, euler_characteristic, join, link
from .homology import ACYCLIC, homological_connectivity


class Essentiality(str, Enum):
    CELL = "cell"
    NOT_CELL = "not-cell"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ChamberDecomposition:
    chambers: tuple[Simplex, ...]
    shared_faces: tuple[Simplex, ...]
    essential: dict

    def is_essential(self, face: Simplex) -> bool:
        # unknown counts as essential: it can only lower r
        return self.essential[face] is not Essentiality.CELL


def _star_union(X: SimplicialComplex, chambers: list[Simplex]) -> SimplicialComplex:
    return X.restrict(
        f for c in chambers for r in range(1, len(c) + 1) for f in itertools.combinations(c, r)
    )


def collapses_to_point(K: SimplicialComplex) -> bool:
    """Greedy elementary collapses; True if a single vertex remains."""
    alive = set(K.simplices)
    cofaces: dict[Simplex, set[Simplex]] = {s: set() for s in alive}
    for s in alive:
        if len(s) > 1:
            for f in itertools.combinations(s, len(s) - 1):
                cofaces[f].add(s)
    changed = True
    while changed:
        changed = False
        for f in sorted(alive, key=lambda s: (-len(s), s)):
            if f in alive and len(cofaces[f]) == 1:
                (c,) = cofaces[f]
                for g in itertools.combinations(c, len(c) - 1):
                    cofaces[g].discard(c)
                for g in itertools.combinations(f, len(f) - 1):
                    if g:
                        cofaces[g].discard(f)
                alive -= {f, c}
                changed = True
    return len(alive) == 1


def _is_pure(K: SimplicialComplex) -> bool:
    m = K.dimension
    covered = {f for t in K.of_dim(m) for r in range(1, m + 2) for f in itertools.combinations(t, r)}
    return len(covered) == len(K.simplices)


def _is_path_or_cycle(L: SimplicialComplex) -> str | None:
    """'path', 'cycle' or None for a 1-dimensional complex."""
    if L.dimension != 1 or len(connected_components(L)) != 1:
        return None
    deg = Counter(v for e in L.of_dim(1) for v in e)
    verts = L.used_vertices()
    if any(deg[v] == 0 or deg[v] > 2 for v in verts):
        return None
    ends = sum(1 for v in verts if deg[v] == 1)
    if ends == 0:
        return "cycle"
    return "path" if ends == 2 else None


def _surface_kind(S: SimplicialComplex) -> str | None:
    """'disk' or 'sphere' for a combinatorial 2-disk / 2-sphere, else None."""
    if S.dimension != 2 or len(connected_components(S)) != 1:
        return None
    if not _is_pure(S):
        return None
    faces_per_edge = Counter(e for t in S.of_dim(2) for e in itertools.combinations(t, 2))
    if any(c > 2 for c in faces_per_edge.values()):
        return None
    kinds = {_is_path_or_cycle(link(S, (v,))) for v in S.used_vertices()}
    if None in kinds:
        return None
    chi = euler_characteristic(S)
    boundary = any(c == 1 for c in faces_per_edge.values())
    if boundary and chi == 1:
        return "disk"
    if not boundary and chi == 2:
        return "sphere"
    return None


def classify_cell(U: SimplicialComplex) -> Essentiality:
    """Decide whether a chamber union is a ball, where we can.

    A collapsible combinatorial manifold (with boundary) is a ball; this is
    checked up to dimension 3.  A pure union with a codimension-one face in
    three or more chambers is certainly not a cell.
    """
    m = U.dimension
    tops = U.of_dim(m)
    if not _is_pure(U):
        return Essentiality.NOT_CELL
    per_ridge = Counter(f for t in tops for f in itertools.combinations(t, m))
    if m >= 1 and any(c > 2 for c in per_ridge.values()):
        return Essentiality.NOT_CELL
    if m > 3:
        return Essentiality.UNKNOWN
    if m == 0:
        return Essentiality.CELL if len(U.simplices) == 1 else Essentiality.NOT_CELL
    if m == 1:
        manifold = _is_path_or_cycle(U) is not None
    elif m == 2:
        manifold = all(_is_path_or_cycle(link(U, (v,))) for v in U.used_vertices())
    else:
        manifold = all(_surface_kind(link(U, (v,))) for v in U.used_vertices())
    if not manifold:
        return Essentiality.UNKNOWN
    return Essentiality.CELL if collapses_to_point(U) else Essentiality.NOT_CELL


def chambers(X: SimplicialComplex) -> ChamberDecomposition:
    tops = X.facets()
    # shared faces are the intersections of two or more chambers
    shared, essential = [], {}
    for s in X.simplices:
        around = [c for c in tops if set(s) <= set(c)]
        if len(around) < 2 or set.intersection(*map(set, around)) != set(s):
            continue
        shared.append(s)
        essential[s] = classify_cell(_star_union(X, around))
    return ChamberDecomposition(tuple(tops), tuple(shared), essential)


@dataclass(frozen=True)
class LocalDimension:
    r: int
    witness: Simplex
    combinatorial_r: int
    decidable: bool
    proxy: tuple[Simplex, ...]
    """Simplices whose value rests on homology without a pi_1 certificate."""

    def __int__(self) -> int:
        return self.r


def deleted_neighborhood(X: SimplicialComplex, sigma: Simplex) -> SimplicialComplex:
    """Boundary of sigma joined with its link (punctured neighborhood model)."""
    lk = link(X, sigma)
    lk = lk.restrict(lk.simplices)
    labels = X.labels(sigma)
    bd = boundary_of_simplex(labels) if len(sigma) > 1 else SimplicialComplex((), ())
    return join(bd, lk)


def local_homotopical_dimension(X: SimplicialComplex) -> LocalDimension:
    if not X.simplices or len(connected_components(X)) != 1:
        raise ValueError("local homotopical dimension needs a connected nonempty complex")
    best, witness, proxy = ACYCLIC, None, []
    for s in X.simplices:
        J = deleted_neighborhood(X, s)
        if not J.simplices:
            level, flagged = -2, False
        elif not link(X, s).simplices:
            # chamber: the punctured neighborhood is a sphere of dimension dim s - 1
            level, flagged = len(s) - 3, False
        else:
            level, flagged = homological_connectivity(J)
        if flagged:
            proxy.append(s)
        if level < best:
            best, witness = level, s
    dec = chambers(X)
    comb = min(len(c) - 3 for c in dec.chambers)
    ess = [len(f) - 2 for f in dec.shared_faces if dec.is_essential(f)]
    if ess:
        comb = min(comb, min(ess))
    decidable = all(v is not Essentiality.UNKNOWN for v in dec.essential.values())
    return LocalDimension(best, witness, comb, decidable, tuple(proxy))


def theorem_1_2_bound(X: SimplicialComplex, n: int, d: int, r: int | None = None) -> int:
    """Top degree rd + 2d - 2 through which Delta^d(X, n) and X^n agree."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if r is None:
        r = local_homotopical_dimension(X).r
    if r < 0:
        raise ValueError(f"local homotopical dimension {r} < 0: hypothesis r >= 0 fails")
    return r * d + 2 * d - 2
