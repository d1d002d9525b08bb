"""Property checks and homological checks of the agreement statements.

Every check returns a :class:`CheckResult`; nothing here raises on a
failed comparison, only on unmet hypotheses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import corpus
from .complex import SimplicialComplex, Subcomplex, barycentric_subdivision, connected_components, euler_characteristic, flag_order
from .homology import (
    HomologyResult,
    abelianization,
    chain_complex,
    homology,
    pi1_presentation,
    smith_normal_form,
)
from .localdim import local_homotopical_dimension, theorem_1_2_bound
from .product import in_fat_diagonal, product_complex, symmetric_action
from .quotient import braid_model
from .retract import delta_model, disjoint_complement, minimal_delta_model, restriction_check


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


class HypothesisError(ValueError):
    pass


# -- agreement checks ---------------------------------------------------------


def kunneth_betti(betti: tuple[int, ...], n: int) -> list[int]:
    """Betti numbers of X^n from those of a torsion-free X."""
    out = [1]
    for _ in range(n):
        nxt = [0] * (len(out) + len(betti) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(betti):
                nxt[i + j] += a * b
        out = nxt
    return out


def theorem_1_1_check(X: SimplicialComplex, n: int, d: int, max_dim: int = 2) -> CheckResult:
    """H_1 of the braid model against H_1(X); higher degrees when X is simply connected.

    ``max_dim`` bounds the skeleton of the model, so degrees up to
    ``max_dim - 1`` are compared.
    """
    if d < 2 or n < 2:
        raise HypothesisError("need d >= 2 and n >= 2")
    if len(X.used_vertices()) < 2 or len(connected_components(X)) != 1:
        raise HypothesisError("X must be connected with at least two vertices")
    top = max(1, min(2 * d - 2, max_dim - 1))
    Q = braid_model(X, n, d, max_dim=top + 1)
    hq = homology(Q, top)
    hx = homology(X, top) if X.dimension >= top + 1 else homology(X).truncated(top)
    hx = _pad(hx, top)
    ok = hq[1] == hx[1]
    detail = f"H1(B)={_group(hq, 1)} H1(X)={_group(hx, 1)}"
    simply_connected = hx[1] == (0, ()) and pi1_presentation(X).is_trivial_certified()
    if ok and simply_connected and top >= 2:
        for i in range(2, top + 1):
            if hq[i] != hx[i]:
                ok = False
                detail += f"; H{i}(B)={_group(hq, i)} H{i}(X)={_group(hx, i)}"
    return CheckResult(f"theorem_1_1[{X.name},{n},{d}]", ok, detail, {"model": hq.to_json()})


def theorem_1_2_check(X: SimplicialComplex, n: int, d: int, budget_dim: int | None = None,
                      method: str = "lazy") -> CheckResult:
    """Homology of the diagonal complement against X^n through degree rd + 2d - 2.

    ``budget_dim`` caps the degree range; ``method`` picks the retract
    (``lazy`` for W, ``minimal`` for the stellar model).
    """
    r = local_homotopical_dimension(X).r
    if r < 0:
        raise HypothesisError(f"local homotopical dimension {r} < 0")
    top = theorem_1_2_bound(X, n, d, r)
    if budget_dim is not None:
        top = min(top, budget_dim)
    build = {"lazy": delta_model, "minimal": minimal_delta_model}[method]
    model = build(X, n, d, max_dim=top + 1)
    hm = homology(model, top, reduced=True)
    hx = homology(X, max(X.dimension, 0), reduced=True)
    if hx.is_zero():
        expected = HomologyResult((0,) * (top + 1), ((),) * (top + 1), True)
    else:
        if any(hx.torsion):
            raise HypothesisError("Kunneth comparison needs torsion-free homology")
        unreduced = homology(X).betti
        b = kunneth_betti(unreduced, n) + [0] * (top + 1)
        b[0] -= 1
        expected = HomologyResult(tuple(b[: top + 1]), ((),) * (top + 1), True)
    ok = hm == expected
    return CheckResult(
        f"theorem_1_2[{X.name},{n},{d}]",
        ok,
        f"r={r} range<= {top}: got {hm.betti}/{hm.torsion}, expected {expected.betti}",
        {"r": r, "top": top, "model": hm.to_json()},
    )


def _pad(h: HomologyResult, top: int) -> HomologyResult:
    k = top + 1 - len(h.betti)
    if k <= 0:
        return h.truncated(top)
    return HomologyResult(h.betti + (0,) * k, h.torsion + ((),) * k, h.reduced)


def _group(h: HomologyResult, i: int) -> str:
    b, t = h[i]
    parts = ([f"Z^{b}"] if b else []) + [f"Z/{x}" for x in t]
    return "+".join(parts) or "0"


# -- property checks ---------------------------------------------------------


MODEL_INSTANCES = [
    ("I", 3, 1), ("I", 3, 2), ("I", 4, 3), ("square", 2, 1), ("circle3", 2, 1),
    ("circle3", 3, 2), ("wedge2", 2, 1), ("three_triangles", 2, 1),
]


def check_boundary_squares() -> CheckResult:
    """Build every chain complex of the corpus and a few models; each asserts d^2 = 0."""
    built = 0
    for K in corpus.all_builtins():
        chain_complex(K).check()
        built += 1
    for name, n, d in MODEL_INSTANCES:
        chain_complex(delta_model(corpus.builtin(name), n, d).complex).check()
        built += 1
    return CheckResult("boundary_squares_zero", True, f"{built} chain complexes")


def check_euler_multiplicative() -> CheckResult:
    bad = []
    for X in corpus.all_builtins():
        for n in (1, 2, 3) if len(X.vertices) <= 5 else (1, 2):
            chi = euler_characteristic(product_complex(X, n).complex)
            if chi != euler_characteristic(X) ** n:
                bad.append((X.name, n, chi))
    return CheckResult("euler_multiplicative", not bad, f"failures {bad}" if bad else "corpus, n <= 3")


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank by fraction-free Gaussian elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    m, ncols = len(M), len(M[0])
    rank, prev = 0, 1
    for c in range(ncols):
        p = next((i for i in range(rank, m) if M[i][c]), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        for i in range(rank + 1, m):
            for j in range(c + 1, ncols):
                M[i][j] = (M[rank][c] * M[i][j] - M[i][c] * M[rank][j]) // prev
            M[i][c] = 0
        prev = M[rank][c]
        rank += 1
    return rank


def _dense(entries: dict, shape: tuple[int, int]) -> list[list[int]]:
    rows = [[0] * shape[1] for _ in range(shape[0])]
    for (i, j), v in entries.items():
        rows[i][j] = v
    return rows


def snf_instances(seed: int = 0, count: int = 60):
    """Seeded random integer matrices plus small boundary matrices."""
    rng = random.Random(seed)
    for _ in range(count):
        m, n = rng.randint(1, 9), rng.randint(1, 9)
        density = rng.choice([0.2, 0.5, 1.0])
        rows = [[rng.randint(-4, 4) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]
        yield rows
    for K in corpus.all_builtins():
        cc = chain_complex(K)
        for k in range(1, len(cc.bases)):
            shape = (len(cc.bases[k - 1]), len(cc.bases[k]))
            if shape[0] <= 200 and shape[1] <= 200:
                yield _dense(cc.matrix(k), shape)


def snf_is_consistent(rows: list[list[int]]) -> str | None:
    """None if the normal form passes both checks, else a description."""
    res = smith_normal_form(rows)
    diag = [d for d in res.diagonal if d]
    if any(d <= 0 for d in diag):
        return f"non-positive diagonal {diag}"
    if any(b % a for a, b in zip(diag, diag[1:])):
        return f"divisibility fails {diag}"
    rank = bareiss_rank(rows)
    if res.rank != rank or len(diag) != rank:
        return f"rank {res.rank} vs {rank}"
    if res.invariant_factors != tuple(d for d in diag if d > 1):
        return "invariant factors disagree with the diagonal"
    return None


def check_snf(seed: int = 0) -> CheckResult:
    n = 0
    for rows in snf_instances(seed):
        n += 1
        err = snf_is_consistent(rows)
        if err:
            return CheckResult("snf_crosscheck", False, f"{err} on {rows}")
    return CheckResult("snf_crosscheck", True, f"{n} matrices")


def materialized_complement(X: SimplicialComplex, n: int, d: int) -> set[tuple]:
    """W^d(X, n) via the explicit Sd(X^n), as a set of labelled flags."""
    P = product_complex(X, n)
    S = barycentric_subdivision(P.complex)
    order = flag_order(P.complex)
    bad = {i for i, s in enumerate(order) if in_fat_diagonal(P, s, d)}
    A = Subcomplex(S, frozenset(f for f in S.simplices if bad.issuperset(f)))
    C = disjoint_complement(S, A)
    return {S.labels(f) for f in C.simplices}


LAZY_INSTANCES = MODEL_INSTANCES + [("I", 4, 2), ("wedge3", 2, 1), ("wedge2", 3, 2), ("circle3", 2, 2),
                                    ("circle3", 3, 3), ("tetrahedron", 2, 1)]


def check_lazy_vs_materialized(instances=LAZY_INSTANCES, limit: int = 10_000) -> CheckResult:
    done, bad = [], []
    for name, n, d in instances:
        X = corpus.builtin(name)
        if len(product_complex(X, n).complex.simplices) > limit:
            continue
        W = delta_model(X, n, d).complex
        if {W.labels(f) for f in W.simplices} != materialized_complement(X, n, d):
            bad.append((name, n, d))
        done.append((name, n, d))
    return CheckResult("lazy_vs_materialized", not bad, f"mismatch {bad}" if bad else f"{len(done)} instances")


def check_h1_abelianization() -> CheckResult:
    bad = []
    for K in corpus.all_builtins():
        h = homology(K, 1) if K.dimension >= 2 else homology(K).truncated(1)
        h1 = h[1] if len(h.betti) > 1 else (0, ())
        if abelianization(pi1_presentation(K)) != h1:
            bad.append(K.name)
    return CheckResult("h1_equals_abelianization", not bad, f"failures {bad}" if bad else "corpus")


def check_sn_invariance(instances=MODEL_INSTANCES) -> CheckResult:
    bad = []
    for name, n, d in instances:
        model = delta_model(corpus.builtin(name), n, d)
        act = symmetric_action(model.base).induced(model.cells)
        if not act.is_simplicial(model.complex):
            bad.append((name, n, d))
    return CheckResult("sn_invariance", not bad, f"failures {bad}" if bad else f"{len(instances)} models")


RESTRICTION_PAIRS = [
    ("square", ("a", "b", "c"), 2, 1),
    ("three_triangles", ("a", "b", "x"), 2, 1),
    ("circle3", ("a", "b"), 3, 2),
]


def check_restriction(pairs=RESTRICTION_PAIRS) -> CheckResult:
    bad = []
    for name, face, n, d in pairs:
        X = corpus.builtin(name)
        A = X.restrict([s for s in X.simplices if set(X.labels(s)) <= set(face)])
        if not restriction_check(X, A, n, d):
            bad.append((name, face))
    return CheckResult("restriction_check", not bad, f"failures {bad}" if bad else f"{len(pairs)} pairs")


def check_skeleton_sufficiency() -> CheckResult:
    bad = []
    for name, n, d in MODEL_INSTANCES:
        X = corpus.builtin(name)
        full = homology(delta_model(X, n, d))
        for i in range(0, full.up_to + 1):
            if homology(delta_model(X, n, d, max_dim=i + 1), i) != full.truncated(i):
                bad.append((name, n, d, i))
    return CheckResult("skeleton_sufficiency", not bad, f"failures {bad}" if bad else "models")


PROPERTY_CHECKS = {
    "boundary_squares_zero": check_boundary_squares,
    "euler_multiplicative": check_euler_multiplicative,
    "snf_crosscheck": check_snf,
    "lazy_vs_materialized": check_lazy_vs_materialized,
    "h1_equals_abelianization": check_h1_abelianization,
    "sn_invariance": check_sn_invariance,
    "restriction_check": check_restriction,
    "skeleton_sufficiency": check_skeleton_sufficiency,
}
