"""Orbit complexes modelling the unordered spaces B^d(X, n).

The quotient of a simplicial complex L by a group G is again a simplicial
complex, with simplices the orbit images of simplices of L, provided the
action is regular: the vertices of each simplex lie in distinct orbits, and
two simplices with the same image lie in the same orbit.

On X^n the coordinate action already has the property that a chain of rows
contains at most one point per orbit (two rows of a chain related by a
coordinate permutation have equal coordinate sums of ranks and are
comparable, so they coincide).  Consequently Sd(X^n), and the invariant
subcomplex W^d(X, n), is regular, and W^d(X, n)/S_n can be taken directly.
``check_regularity`` verifies this on every complex that gets quotiented.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .complex import Simplex, SimplicialComplex, flag_order
from .product import VertexPermutationAction, symmetric_action
from .retract import delta_model, flag_complex


class RegularityError(RuntimeError):
    def __init__(self, report: "RegularityReport"):
        super().__init__(f"action is not regular: {report.reason} at {report.counterexample}")
        self.report = report


class RegularityReport(NamedTuple):
    ok: bool
    counterexample: Simplex | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _images(L: SimplicialComplex, rep: list[int]):
    for s in L.simplices:
        yield s, tuple(sorted({rep[v] for v in s}))


def check_regularity(L: SimplicialComplex, action: VertexPermutationAction) -> RegularityReport:
    """Certificate that L / G is a simplicial complex, or a counterexample."""
    rep = action.orbit_rep
    claimed: dict[Simplex, Simplex] = {}
    seen: set[Simplex] = set()
    for s, image in _images(L, rep):
        if len(image) != len(s):
            return RegularityReport(False, s, "two vertices of one simplex share an orbit")
        if s in seen:
            continue
        orbit = action.simplex_orbit(s)
        seen.update(orbit)
        if image in claimed:
            return RegularityReport(False, s, f"same image as the inequivalent simplex {claimed[image]}")
        claimed[image] = s
    return RegularityReport(True)


@dataclass(frozen=True)
class OrbitComplex:
    """Quotient L / G with one vertex per orbit, labelled by its representative."""

    base: SimplicialComplex
    action: VertexPermutationAction
    complex: SimplicialComplex
    complete: bool
    params: dict = field(default_factory=dict)

    @property
    def rep(self) -> list[int]:
        return self.action.orbit_rep


def orbit_quotient(L: SimplicialComplex, action: VertexPermutationAction, complete: bool = True,
                   params: dict | None = None, check: bool = True) -> OrbitComplex:
    if check:
        report = check_regularity(L, action)
        if not report:
            raise RegularityError(report)
    rep = action.orbit_rep
    reps = sorted(set(rep))
    new = {r: i for i, r in enumerate(reps)}
    simplices = {tuple(sorted(new[rep[v]] for v in s)) for s in L.simplices}
    Q = SimplicialComplex(
        tuple(L.vertices[r] for r in reps),
        tuple(sorted(simplices, key=lambda s: (len(s), s))),
        L.name + "/G" if L.name else "",
    )
    return OrbitComplex(L, action, Q, complete, params or {})


def braid_model(X: SimplicialComplex, n: int, d: int, max_dim: int | None = None,
                subdivisions: int = 1) -> OrbitComplex:
    """Compact model of B^d(X, n) = Delta^d(X, n) / S_n.

    ``subdivisions=1`` quotients W^d(X, n) itself; ``subdivisions=2``
    quotients Sd(W^d(X, n)) and exists for cross-checking on small inputs.
    """
    if subdivisions not in (1, 2):
        raise ValueError("subdivisions must be 1 or 2")
    if subdivisions == 1:
        model = delta_model(X, n, d, max_dim)
        L = model.complex
        action = symmetric_action(model.base).induced(model.cells)
        complete = model.complete
    else:
        model = delta_model(X, n, d)
        W = model.complex
        act_W = symmetric_action(model.base).induced(model.cells)
        k = W.dimension if max_dim is None else max_dim
        L = flag_complex(W, flag_order(W), k)
        action = act_W.induced(flag_order(W))
        complete = k >= W.dimension
    params = {"X": X.name, "n": n, "d": d, "max_dim": max_dim, "subdivisions": subdivisions}
    return orbit_quotient(L, action, complete, params)


def orbit_euler(Q: OrbitComplex) -> int:
    if not Q.complete:
        raise ValueError("Euler characteristic needs the full quotient, not a skeleton")
    return sum((-1) ** (len(s) - 1) for s in Q.complex.simplices)


def orbit_counts(Q: OrbitComplex) -> list[tuple[int, int]]:
    """Per dimension: (# simplices of the base, # orbit simplices)."""
    base = Q.base.f_vector()
    quot = Q.complex.f_vector()
    return list(zip(base, quot + [0] * (len(base) - len(quot))))
