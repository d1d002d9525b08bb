import pytest
from hypothesis import given, settings, strategies as st

from diagconf.complex import euler_characteristic, simplex, validate
from diagconf.corpus import circle3, interval, square, three_triangles, wedge
from diagconf.product import (
    ProductSimplex,
    fat_diagonal,
    fullness_witness,
    in_fat_diagonal,
    is_full,
    permute_row,
    product_complex,
    symmetric_action,
)
from diagconf.complex import Subcomplex, barycentric_subdivision, flag_order


def test_cube_counts():
    P = product_complex(interval(), 3)
    assert P.complex.f_vector() == [8, 19, 18, 6]
    assert validate(P.complex).ok


def test_square_counts():
    P = product_complex(interval(), 2)
    assert P.complex.f_vector() == [4, 5, 2]
    assert P.complex.labels((0, 3)) == ("0|0", "1|1")


def test_euler_circle_squared():
    assert euler_characteristic(product_complex(circle3(), 2).complex) == 0


def test_n_must_be_positive():
    with pytest.raises(ValueError):
        product_complex(interval(), 0)


def test_every_simplex_is_staircase():
    P = product_complex(square(), 2)
    for s in P.complex.simplices:
        assert P.product_simplex(s).is_staircase(square())


def test_non_staircase_rows():
    rows = ProductSimplex(((1, 0), (0, 1)))
    assert not rows.is_staircase(interval())


def test_fat_diagonal_empty_when_d_at_least_n():
    P = product_complex(interval(), 3)
    assert len(fat_diagonal(P, 3)) == 0
    with pytest.raises(ValueError):
        fat_diagonal(P, 0)


@pytest.mark.parametrize("X", [interval(), circle3(), square()], ids=lambda X: X.name)
def test_thin_diagonal_is_copy_of_X(X):
    P = product_complex(X, 3)
    A = fat_diagonal(P, 2)
    diag = {tuple(P.index((v,) * 3) for v in s) for s in X.simplices}
    assert set(A.simplices) == diag
    assert is_full(A)


def test_fat_diagonal_needs_identical_columns():
    P = product_complex(interval(), 3)
    s = P.simplex_of([(0, 0, 0), (1, 0, 0), (1, 1, 0)])
    assert s in P.complex
    assert not in_fat_diagonal(P, s, 1)
    assert all(len(set(r)) < 3 for r in P.rows(s))


def test_fat_diagonal_not_full_in_cube():
    P = product_complex(interval(), 3)
    A = fat_diagonal(P, 1)
    assert not is_full(A)
    w = fullness_witness(A)
    assert w is not None and w not in A


@pytest.mark.parametrize("d", [1, 2])
def test_subdivided_subcomplex_is_full(d):
    P = product_complex(interval(), 3)
    A = fat_diagonal(P, d)
    S = barycentric_subdivision(P.complex)
    cells = {i for i, s in enumerate(flag_order(P.complex)) if s in A}
    sub = Subcomplex(S, frozenset(f for f in S.simplices if cells.issuperset(f)))
    assert is_full(sub)


def test_swap_on_square():
    P = product_complex(interval(), 2)
    act = symmetric_action(P)
    (g,) = act.generators
    tri = P.complex.of_dim(2)
    assert act.apply(g, tri[0]) == tri[1]
    diag = P.simplex_of([(0, 0), (1, 1)])
    assert act.apply(g, diag) == diag


def test_action_preserves_fat_diagonal():
    P = product_complex(circle3(), 3)
    act = symmetric_action(P)
    for d in (1, 2):
        A = fat_diagonal(P, d)
        assert all(act.apply(g, s) in A for g in act.generators for s in A.simplices)


def test_orbit_of_off_diagonal_vertex():
    P = product_complex(circle3(), 2)
    act = symmetric_action(P)
    v = P.index((0, 2))
    assert sorted(act.orbit(v)) == sorted([P.index((0, 2)), P.index((2, 0))])


def test_group_elements():
    P = product_complex(interval(), 3)
    assert len(symmetric_action(P).elements()) == 6


def test_permute_row():
    assert permute_row((1, 0, 2), ("a", "b", "c")) == ("b", "a", "c")


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([interval(), circle3(), wedge(2), three_triangles(), simplex("abc")]),
       st.integers(1, 3))
def test_euler_multiplicative(X, n):
    if len(X.vertices) ** n > 200:
        n = 2
    assert euler_characteristic(product_complex(X, n).complex) == euler_characteristic(X) ** n
