import pytest

from diagconf.complex import (
    Subcomplex,
    barycentric_subdivision,
    connected_components,
    euler_characteristic,
    simplex,
    validate,
)
from diagconf.corpus import circle3, interval, square, three_triangles
from diagconf.homology import homology
from diagconf.product import fat_diagonal, in_fat_diagonal, product_complex
from diagconf.retract import (
    NotFullError,
    cyclic_zero_run,
    delta_model,
    delta_model_size,
    disjoint_complement,
    lazy_flag_skeleton,
    minimal_delta_model,
    restriction_check,
    simplex_interval_model,
    stellar_subdivision,
)
from diagconf.homology import abelianization, pi1_presentation


def test_complement_of_edge_in_tetrahedron():
    K = simplex(["v0", "v1", "v2", "v3"])
    A = Subcomplex(K, frozenset([(0,), (1,), (0, 1)]))
    C = disjoint_complement(K, A)
    assert C.as_complex().vertices == ("v2", "v3")
    assert C.as_complex().f_vector() == [2, 1]


def test_complement_of_nothing():
    K = square()
    assert disjoint_complement(K, Subcomplex(K, frozenset())).simplices == frozenset(K.simplices)


def test_triangle_minus_corners_contractible():
    S = barycentric_subdivision(simplex("abc"))
    A = Subcomplex(S, frozenset([(0,), (1,), (2,)]))
    C = disjoint_complement(S, A).as_complex()
    assert homology(C, reduced=True).is_zero()


def test_not_full_refused():
    P = product_complex(interval(), 3)
    with pytest.raises(NotFullError, match="barycentric subdivision"):
        disjoint_complement(P.complex, fat_diagonal(P, 1))


def test_six_components():
    W = delta_model(interval(), 3, 1).complex
    comps = connected_components(W)
    assert len(comps) == 6
    for c in comps:
        assert homology(c.as_complex(), reduced=True).is_zero()


def test_circle_model():
    W = delta_model(interval(), 3, 2)
    assert validate(W.complex).ok
    assert homology(W).betti[:2] == (1, 1)
    assert abelianization(pi1_presentation(W)) == (1, ())


def test_no_diagonal_means_whole_subdivision():
    W = delta_model(interval(), 2, 2).complex
    S = barycentric_subdivision(product_complex(interval(), 2).complex)
    assert W.f_vector() == S.f_vector()


def test_invalid_parameters():
    with pytest.raises(ValueError):
        delta_model(interval(), 0, 1)
    with pytest.raises(ValueError):
        delta_model(interval(), 2, 0)
    with pytest.raises(ValueError):
        delta_model(interval(), 2, 1, max_dim=-1)


def test_skeleton_bounded_model():
    W = delta_model(interval(), 3, 2, max_dim=1)
    assert not W.complete and W.complex.dimension == 1
    assert delta_model(interval(), 3, 2, max_dim=3).complete


def test_lazy_flags_of_triangle():
    flags = list(lazy_flag_skeleton(simplex("abc"), lambda s: True, 2))
    assert len(flags) == len(barycentric_subdivision(simplex("abc")).simplices) == 25
    assert sum(1 for f in flags if len(f) == 3) == 6


def test_lazy_flags_circle_model():
    P = product_complex(interval(), 3)
    flags = list(lazy_flag_skeleton(P.complex, lambda s: not in_fat_diagonal(P, s, 2), 2))
    W = delta_model(interval(), 3, 2, max_dim=2).complex
    assert len(flags) == len(W.simplices)
    assert homology(W, 1).betti == (1, 1)


def test_size_count_matches():
    W = delta_model(circle3(), 2, 1).complex
    assert delta_model_size(circle3(), 2, 1, W.dimension) == W.f_vector()


@pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (4, 3), (3, 1), (5, 2)])
def test_simplex_interval_contractible(n, d):
    M = simplex_interval_model(n, d)
    assert homology(M, reduced=True).is_zero()


def test_simplex_interval_thin_case_forbids_all_vertices():
    M = simplex_interval_model(4, 3)
    assert all(len(s) >= 2 for s in M.cells)
    assert {(i,) for i in range(4)} <= M.forbidden.simplices


def test_simplex_interval_parameters():
    with pytest.raises(ValueError):
        simplex_interval_model(3, 3)
    with pytest.raises(ValueError):
        simplex_interval_model(1, 1)


def test_cyclic_zero_run():
    assert cyclic_zero_run({0, 3}, 4) == 2
    assert cyclic_zero_run({1}, 4) == 1
    assert cyclic_zero_run(set(), 4) == 0
    assert cyclic_zero_run({0, 1, 2}, 3) == 3


def test_restriction_examples():
    X = circle3()
    edge = X.restrict([(0,), (1,), (0, 1)])
    assert restriction_check(X, edge, 2, 1)
    assert restriction_check(X, X, 2, 1)
    assert restriction_check(X, X.restrict([(0,)]), 2, 1)
    assert restriction_check(three_triangles(), three_triangles().restrict([(0, 1, 2)]), 2, 1)


def test_stellar_subdivision_of_edge():
    K, centers = stellar_subdivision(simplex("abc"), [(0, 1)])
    assert K.f_vector() == [4, 5, 2]
    assert centers[(0, 1)] == 3
    assert validate(K).ok and euler_characteristic(K) == 1


@pytest.mark.parametrize("X,n,d", [(interval(), 3, 1), (interval(), 3, 2), (interval(), 4, 3),
                                   (square(), 2, 1), (circle3(), 3, 2)],
                         ids=["I31", "I32", "I43", "sq21", "c32"])
def test_minimal_model_agrees_with_W(X, n, d):
    W = delta_model(X, n, d)
    M = minimal_delta_model(X, n, d)
    k = min(W.complex.dimension, M.complex.dimension)
    assert homology(W, k) == homology(M, k)


def test_minimal_model_thin_diagonal_needs_no_subdivision():
    M = minimal_delta_model(interval(), 3, 2)
    P = product_complex(interval(), 3)
    assert len(M.complex.vertices) == len(P.complex.vertices) - 2
