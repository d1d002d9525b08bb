import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from diagconf.complex import (
    SimplicialComplex,
    Subcomplex,
    barycentric_subdivision,
    boundary_of_simplex,
    closure,
    connected_components,
    euler_characteristic,
    join,
    link,
    simplex,
    skeleton,
    validate,
)
from diagconf.corpus import all_builtins, sphere, three_triangles
from diagconf.homology import homology


def triangle():
    return simplex(["1", "2", "3"])


def test_validate_triangle_ok():
    assert validate(triangle()).ok


def test_validate_missing_face():
    K = SimplicialComplex(("1", "2"), ((0, 1),))
    report = validate(K)
    assert not report.ok
    assert report.message == "missing face {1}"


def test_validate_empty_complex():
    K = SimplicialComplex((), ())
    assert validate(K).ok
    assert K.dimension == -1


def test_validate_duplicate_and_unknown():
    assert "duplicate" in validate(SimplicialComplex(("a",), ((0,), (0,)))).message
    assert "unknown vertex" in validate(SimplicialComplex(("a",), ((0,), (1,)))).message
    assert "vertex order" in validate(SimplicialComplex(("a", "b"), ((0,), (1,), (1, 0)))).message


def test_subdivide_edge():
    S = barycentric_subdivision(simplex(["a", "b"]))
    assert S.f_vector() == [3, 2]


@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_subdivide_simplex_top_flags(q):
    S = barycentric_subdivision(simplex([str(i) for i in range(q + 1)]))
    assert len(S.of_dim(q)) == math.factorial(q + 1)


@pytest.mark.parametrize("K", all_builtins(), ids=lambda K: K.name)
def test_subdivision_preserves_euler(K):
    assert euler_characteristic(barycentric_subdivision(K)) == euler_characteristic(K)


def test_skeleton():
    T = triangle()
    assert skeleton(T, 1).f_vector() == [3, 3]
    assert skeleton(T, 2).simplices == T.simplices
    assert skeleton(T, 0).f_vector() == [3]
    with pytest.raises(ValueError):
        skeleton(T, -1)


def test_link_vertex_of_sphere_is_circle():
    L = link(sphere(), (0,))
    assert L.restrict(L.simplices).f_vector() == [3, 3]
    assert homology(L.restrict(L.simplices)).betti == (1, 1)


def test_link_of_shared_edge():
    L = link(three_triangles(), (0, 1))
    assert L.f_vector() == [3]


def test_link_of_top_simplex_is_empty():
    assert not link(triangle(), (0, 1, 2)).simplices
    with pytest.raises(ValueError):
        link(triangle(), (0, 5))


def test_join_cone_is_contractible():
    C = join(simplex(["p"]), boundary_of_simplex(["a", "b", "c"]))
    assert homology(C, reduced=True).is_zero()


def test_join_s0_s0_is_circle():
    S0 = SimplicialComplex.from_facets(["a", "b"], [[0], [1]])
    S0b = SimplicialComplex.from_facets(["c", "d"], [[0], [1]])
    J = join(S0, S0b)
    assert J.f_vector() == [4, 4]
    assert homology(J).betti == (1, 1)


def test_join_circle_point_is_disk():
    J = join(boundary_of_simplex(["a", "b", "c"]), simplex(["p"]))
    assert J.f_vector() == [4, 6, 3]
    assert homology(J, reduced=True).is_zero()


def test_join_overlapping_labels():
    with pytest.raises(ValueError):
        join(triangle(), triangle())


def test_components():
    K = SimplicialComplex.from_facets("abcd", [[0, 1], [2, 3]])
    assert len(connected_components(K)) == 2
    assert len(connected_components(triangle())) == 1


def test_euler_values():
    edges_of_tetrahedron = skeleton(simplex("abcd"), 1)
    assert euler_characteristic(edges_of_tetrahedron) == -2
    f = edges_of_tetrahedron.f_vector()
    assert f[1] - f[0] == 4 * (4 - 3) // 2
    assert euler_characteristic(join(simplex(["p"]), sphere())) == 1
    assert euler_characteristic(boundary_of_simplex("abc")) == 0


def test_json_round_trip(tmp_path):
    K = three_triangles()
    K.save(tmp_path / "k.json")
    L = SimplicialComplex.load(tmp_path / "k.json")
    assert L.vertices == K.vertices and L.simplices == K.simplices


def test_json_rejects_bad_index():
    with pytest.raises(ValueError):
        SimplicialComplex.from_json({"vertices": ["a"], "facets": [[0, 3]]})


def test_facets_and_restrict():
    K = three_triangles()
    assert K.facets() == [(0, 1, 2), (0, 1, 3), (0, 1, 4)]
    R = K.restrict([(0, 2)])
    assert R.vertices == ("a", "x") and R.simplices == ((0, 1),)


def test_subcomplex_closure():
    T = triangle()
    assert Subcomplex(T, frozenset([(0,), (1,), (0, 1)])).is_downward_closed()
    assert not Subcomplex(T, frozenset([(0, 1)])).is_downward_closed()


facet_lists = st.lists(
    st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True), min_size=1, max_size=6
)


@settings(max_examples=60, deadline=None)
@given(facet_lists)
def test_closure_is_valid(facets):
    K = SimplicialComplex(tuple(str(i) for i in range(7)), closure(facets))
    assert validate(K).ok
    assert set(K.facets()) <= {tuple(sorted(set(f))) for f in facets}


@settings(max_examples=30, deadline=None)
@given(facet_lists)
def test_subdivision_preserves_homology(facets):
    K = SimplicialComplex(tuple(str(i) for i in range(7)), closure(facets))
    K = K.restrict(K.simplices)
    assert homology(barycentric_subdivision(K)) == homology(K)
