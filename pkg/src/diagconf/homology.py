"""Integral homology, Smith normal form and edge-path presentations.

Homology is computed over the integers.  The chain complex of the (possibly
truncated) complex is first shrunk by eliminating unit entries of the
boundary (collapses, coreductions, then general unit pivots with small fill);
whatever is left is put in Smith normal form with arbitrary precision
integers.
"""

from __future__ import annotations

import heapq
import math
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .complex import SimplicialComplex, connected_components

ACYCLIC = sys.maxsize
"""Connectivity level reported for a complex with no reduced homology at all."""


class InsufficientSkeleton(ValueError):
    pass


def _unwrap(K):
    """Accept a plain complex or a model carrying ``complex`` and ``complete``."""
    if isinstance(K, SimplicialComplex):
        return K, True
    return K.complex, K.complete


# -- Smith normal form -------------------------------------------------------


class SNFResult(NamedTuple):
    diagonal: tuple[int, ...]
    rank: int
    invariant_factors: tuple[int, ...]


def _as_rows(M) -> dict[int, dict[int, int]]:
    if isinstance(M, dict):
        rows: dict[int, dict[int, int]] = {}
        for (i, j), v in M.items():
            if v:
                rows.setdefault(i, {})[j] = int(v)
        return rows
    return {i: {j: int(v) for j, v in enumerate(row) if v} for i, row in enumerate(M) if any(row)}


def _normalize_diagonal(diag: list[int]) -> list[int]:
    # diag(a, b) ~ diag(gcd, lcm) until the divisibility chain holds
    d = sorted(abs(x) for x in diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = math.gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def smith_normal_form(M) -> SNFResult:
    """Diagonal form of an integer matrix under unimodular row/column operations.

    ``M`` is a list of rows or a sparse ``{(i, j): value}`` mapping.  Returns
    the nonzero diagonal entries d1 | d2 | ..., the rank, and the invariant
    factors larger than one.  Pivots are entries of minimal absolute value.
    """
    rows = _as_rows(M)
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)

    def set_entry(i, j, v):
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            r = rows.get(i)
            if r is not None and j in r:
                del r[j]
                if not r:
                    del rows[i]
                cols[j].discard(i)
                if not cols[j]:
                    del cols[j]

    diag: list[int] = []
    while rows:
        # global minimal pivot, ties broken by sparsity then position
        pi, pj, pv = None, None, None
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                key = (abs(v), len(r) + len(cols[j]), i, j)
                if best is None or key < best:
                    best, pi, pj, pv = key, i, j, v
        while True:
            p = rows[pi][pj]
            for i in sorted(cols[pj] - {pi}):
                q = rows[i][pj] // p
                if q:
                    for j, v in list(rows[pi].items()):
                        set_entry(i, j, rows.get(i, {}).get(j, 0) - q * v)
            for j in sorted(set(rows[pi]) - {pj}):
                q = rows[pi][j] // p
                if q:
                    for i in list(cols[pj]):
                        set_entry(i, j, rows.get(i, {}).get(j, 0) - q * rows[i][pj])
            rest = [(abs(v), pi, j) for j, v in rows[pi].items() if j != pj]
            rest += [(abs(rows[i][pj]), i, pj) for i in cols[pj] if i != pi]
            if not rest:
                break
            _, pi, pj = min(rest)
        diag.append(abs(rows[pi][pj]))
        set_entry(pi, pj, 0)
    d = _normalize_diagonal(diag)
    return SNFResult(tuple(d), len(d), tuple(x for x in d if x > 1))


# -- chain complexes ---------------------------------------------------------


@dataclass
class IntegerChainComplex:
    """Simplicial chains of a complex up to ``top`` dimensions.

    ``bases[k]`` lists the k-simplices; ``boundaries[k]`` maps the index of a
    k-simplex to ``{index of (k-1)-face: sign}``.  The omitted-vertex position
    i contributes sign (-1)^i.
    """

    bases: list[list[tuple]]
    boundaries: list[list[dict[int, int]]]

    def matrix(self, k: int) -> dict[tuple[int, int], int]:
        return {(f, c): v for c, col in enumerate(self.boundaries[k]) for f, v in col.items()}

    def check(self) -> None:
        for k in range(2, len(self.boundaries)):
            lower = self.boundaries[k - 1]
            for c, col in enumerate(self.boundaries[k]):
                acc: dict[int, int] = {}
                for f, v in col.items():
                    for g, w in lower[f].items():
                        acc[g] = acc.get(g, 0) + v * w
                if any(acc.values()):
                    raise AssertionError(f"boundary of boundary nonzero at {self.bases[k][c]}")


def chain_complex(K: SimplicialComplex, top: int | None = None) -> IntegerChainComplex:
    top = K.dimension if top is None else min(top, K.dimension)
    bases: list[list[tuple]] = [[] for _ in range(top + 1)]
    for s in K.simplices:
        if len(s) <= top + 1:
            bases[len(s) - 1].append(s)
    index = [{s: i for i, s in enumerate(b)} for b in bases]
    boundaries: list[list[dict[int, int]]] = [[{} for _ in bases[0]]] if bases else []
    for k in range(1, top + 1):
        idx = index[k - 1]
        cols = []
        for s in bases[k]:
            col = {}
            for i in range(k + 1):
                col[idx[s[:i] + s[i + 1:]]] = -1 if i & 1 else 1
            cols.append(col)
        boundaries.append(cols)
    cc = IntegerChainComplex(bases, boundaries)
    cc.check()
    return cc


# -- reduction ---------------------------------------------------------------


def _reduce_complex(dims: list[int], bd: list[dict[int, int]]) -> list[int]:
    """Eliminate unit-coefficient pairs in place; return surviving cell ids.

    Each elimination of a pair (face f, cell c) with unit incidence a splits
    off the acyclic subcomplex spanned by c and its boundary: the other
    cofaces rho of f get boundary rho - <rho,f> a^-1 bd(c), the cofaces of c
    simply lose c.
    """
    n = len(dims)
    cob: list[set[int]] = [set() for _ in range(n)]
    for c, col in enumerate(bd):
        for f in col:
            cob[f].add(c)
    alive = [True] * n

    def eliminate(f: int, c: int) -> set[int]:
        a = bd[c][f]
        touched = set()
        for rho in list(cob[f]):
            if rho == c:
                continue
            brho = bd[rho]
            m = brho[f] * a
            for g, v in bd[c].items():
                w = brho.get(g, 0) - m * v
                if w:
                    if g not in brho:
                        cob[g].add(rho)
                    brho[g] = w
                else:
                    brho.pop(g, None)
                    cob[g].discard(rho)
            touched.add(rho)
        for nu in cob[c]:
            del bd[nu][c]
            touched.add(nu)
        for g in bd[c]:
            cob[g].discard(c)
            touched.add(g)
        for h in bd[f]:
            cob[h].discard(f)
            touched.add(h)
        bd[c] = {}
        bd[f] = {}
        cob[c] = set()
        cob[f] = set()
        alive[c] = alive[f] = False
        touched.discard(c)
        touched.discard(f)
        return touched

    def free_pair(x: int):
        col = bd[x]
        if len(col) == 1:
            (f, a), = col.items()
            if a == 1 or a == -1:
                return f, x
        co = cob[x]
        if len(co) == 1:
            c = next(iter(co))
            a = bd[c][x]
            if a == 1 or a == -1:
                return x, c
        return None

    work = deque(range(n))
    queued = [True] * n

    def drain():
        while work:
            x = work.popleft()
            queued[x] = False
            if not alive[x]:
                continue
            pair = free_pair(x)
            if pair is None:
                continue
            for y in eliminate(*pair):
                if alive[y] and not queued[y]:
                    queued[y] = True
                    work.append(y)

    drain()
    heap: list[tuple[int, int, int]] = []

    def push_candidates(c: int):
        lc = len(bd[c]) - 1
        for f, a in bd[c].items():
            if a == 1 or a == -1:
                heapq.heappush(heap, (lc * (len(cob[f]) - 1), c, f))

    for c in range(n):
        if alive[c]:
            push_candidates(c)
    while heap:
        cost, c, f = heapq.heappop(heap)
        if not (alive[c] and alive[f]):
            continue
        a = bd[c].get(f)
        if a not in (1, -1):
            continue
        now = (len(bd[c]) - 1) * (len(cob[f]) - 1)
        if now > cost:
            heapq.heappush(heap, (now, c, f))
            continue
        touched = eliminate(f, c)
        for y in touched:
            if alive[y] and not queued[y]:
                queued[y] = True
                work.append(y)
        drain()
        # fill can only create unit entries in modified columns
        for y in touched:
            if alive[y]:
                push_candidates(y)
    return [x for x in range(n) if alive[x]]


@dataclass(frozen=True)
class HomologyResult:
    """Betti numbers and torsion coefficients in dimensions 0..len-1."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    reduced: bool = False

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyResult):
            return NotImplemented
        return self.betti == other.betti and self.torsion == other.torsion

    def __hash__(self):
        return hash((self.betti, self.torsion))

    def __getitem__(self, k: int) -> tuple[int, tuple[int, ...]]:
        return self.betti[k], self.torsion[k]

    @property
    def up_to(self) -> int:
        return len(self.betti) - 1

    def is_zero(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def truncated(self, k: int) -> "HomologyResult":
        return HomologyResult(self.betti[: k + 1], self.torsion[: k + 1], self.reduced)

    def as_reduced(self) -> "HomologyResult":
        if self.reduced or not self.betti or self.betti[0] == 0:
            return HomologyResult(self.betti, self.torsion, True)
        return HomologyResult((self.betti[0] - 1,) + self.betti[1:], self.torsion, True)

    def table(self) -> str:
        lines = ["dim | betti | torsion"]
        for k, (b, t) in enumerate(zip(self.betti, self.torsion)):
            lines.append(f"{k:3d} | {b:5d} | {', '.join(f'Z/{x}' for x in t) or '-'}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion], "reduced": self.reduced}

    @classmethod
    def from_groups(cls, betti: Sequence[int], torsion: Sequence[Sequence[int]] | None = None, reduced=False):
        torsion = torsion or [()] * len(betti)
        return cls(tuple(betti), tuple(tuple(sorted(t)) for t in torsion), reduced)


def homology(K, up_to: int | None = None, reduced: bool = False) -> HomologyResult:
    """Integral homology in dimensions 0..up_to.

    ``K`` is a complex or a skeleton-bounded model; a bounded model must
    carry simplices through dimension ``up_to + 1``.
    """
    K, complete = _unwrap(K)
    dim = K.dimension
    if up_to is None:
        if not complete:
            raise InsufficientSkeleton("up_to is required for a skeleton-bounded model")
        up_to = max(dim, 0)
    if not complete and dim < up_to + 1:
        raise InsufficientSkeleton(
            f"H_{up_to} needs the {up_to + 1}-skeleton; model stops at dimension {dim}"
        )
    top = up_to + 1
    cc = chain_complex(K, top)
    # augmented complex: cell 0 is the empty simplex
    dims = [-1]
    bd: list[dict[int, int]] = [{}]
    offsets = []
    for k, basis in enumerate(cc.bases):
        offsets.append(len(dims))
        dims.extend([k] * len(basis))
        if k == 0:
            bd.extend({0: 1} for _ in basis)
        else:
            off = offsets[k - 1]
            bd.extend({off + f: v for f, v in col.items()} for col in cc.boundaries[k])
    survivors = _reduce_complex(dims, bd)
    by_dim: dict[int, list[int]] = {}
    for x in survivors:
        by_dim.setdefault(dims[x], []).append(x)
    ranks: dict[int, SNFResult] = {}
    for k in range(0, top + 1):
        cells = by_dim.get(k, [])
        entries = {(f, c): v for c in cells for f, v in bd[c].items()}
        ranks[k] = smith_normal_form(entries)
    betti, torsion = [], []
    for k in range(0, up_to + 1):
        nk = len(by_dim.get(k, []))
        b = nk - ranks[k].rank - ranks[k + 1].rank
        betti.append(b)
        torsion.append(ranks[k + 1].invariant_factors)
    res = HomologyResult(tuple(betti), tuple(torsion), True)
    if reduced or not K.simplices:
        return res
    return HomologyResult((betti[0] + 1,) + tuple(betti[1:]), tuple(torsion), False)


def euler_from_homology(h: HomologyResult) -> int:
    return sum((-1) ** k * b for k, b in enumerate(h.betti))


# -- connectivity ------------------------------------------------------------


class Connectivity(NamedTuple):
    level: int
    proxy: bool
    """True when the level is a homological bound only (pi_1 not certified trivial)."""


def homological_connectivity(K, up_to: int | None = None) -> Connectivity:
    """Largest c with K connected and reduced H_i = 0 for i <= c.

    -2 for the empty complex, -1 if disconnected, ``ACYCLIC`` if the
    complex was examined in full and has no reduced homology at all.
    """
    C, complete = _unwrap(K)
    if not C.simplices:
        return Connectivity(-2, False)
    if len(connected_components(C)) > 1:
        return Connectivity(-1, False)
    limit = C.dimension if complete else C.dimension - 1
    if up_to is not None:
        limit = min(limit, up_to)
    h = homology(K, max(limit, 0), reduced=True)
    level = None
    for i, (b, t) in enumerate(zip(h.betti, h.torsion)):
        if b or t:
            level = i - 1
            break
    if level is None:
        level = ACYCLIC if (complete and limit >= C.dimension) else limit
    proxy = False
    if level >= 1:
        proxy = not pi1_presentation(C).is_trivial_certified()
    return Connectivity(level, proxy)


# -- fundamental group -------------------------------------------------------


Word = tuple[tuple[int, int], ...]


def _free_reduce(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    # cyclic reduction
    while len(out) > 1 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
    return out


@dataclass(frozen=True)
class GroupPresentation:
    """Generators are non-tree edges; relators are words of (generator, +-1)."""

    generators: tuple
    relators: tuple[Word, ...]
    tree: tuple = field(default=(), compare=False)

    def is_trivial_certified(self) -> bool:
        """Sound but incomplete triviality test.

        Repeatedly deletes generators that occur alone in some relator after
        deleting the ones already known to be trivial.
        """
        dead: set[int] = set()
        changed = True
        while changed:
            changed = False
            for r in self.relators:
                w = _free_reduce([x for x in r if x[0] not in dead])
                if len(w) == 1:
                    dead.add(w[0][0])
                    changed = True
        return len(dead) == len(self.generators)


def pi1_presentation(K, basepoint: int | None = None) -> GroupPresentation:
    """Edge-path presentation relative to a BFS spanning tree of the 1-skeleton."""
    K, _ = _unwrap(K)
    if not K.simplices:
        raise ValueError("empty complex has no fundamental group")
    if len(connected_components(K)) > 1:
        raise ValueError("complex is disconnected")
    verts = K.used_vertices()
    start = verts[0] if basepoint is None else basepoint
    adj: dict[int, list[int]] = {v: [] for v in verts}
    edges = K.of_dim(1)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {start}
    tree = set()
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                tree.add((min(v, w), max(v, w)))
                queue.append(w)
    gens = [e for e in edges if e not in tree]
    gid = {e: i for i, e in enumerate(gens)}
    relators = []
    for a, b, c in K.of_dim(2):
        word = [((a, b), 1), ((b, c), 1), ((a, c), -1)]
        w = _free_reduce([(gid[e], s) for e, s in word if e in gid])
        if w:
            relators.append(tuple(w))
    return GroupPresentation(tuple(gens), tuple(relators), tuple(sorted(tree)))


def abelianization(P: GroupPresentation) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion coefficients) of the abelianized group."""
    entries: dict[tuple[int, int], int] = {}
    for i, r in enumerate(P.relators):
        for g, e in r:
            entries[(i, g)] = entries.get((i, g), 0) + e
    snf = smith_normal_form(entries)
    return len(P.generators) - snf.rank, snf.invariant_factors
