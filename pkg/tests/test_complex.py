from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facelab.complex import (
    SimplicialComplex,
    cone,
    f_vector,
    from_facets,
    is_j_neighborly,
    parse_sc,
    simplex_boundary,
    substructure,
)
from facelab.errors import ApexCollision, EmptyInput, FaceNotInComplex, MalformedToken


def brute_faces(facets):
    out = set()
    for F in facets:
        for k in range(len(F) + 1):
            out.update(frozenset(c) for c in combinations(F, k))
    return out


facet_lists = st.lists(
    st.lists(st.integers(1, 7), min_size=1, max_size=4, unique=True), min_size=1, max_size=8
)


class TestConstruction:
    def test_m5_is_two_dimensional(self, m5):
        assert m5.dim == 2 and m5.n == 5

    def test_subsumed_facet_dropped(self):
        K = from_facets([[1, 2], [1, 2, 3]])
        assert K.facets == [("1", "2", "3")]

    def test_b3_facets(self, b3):
        assert len(b3.facets) == 2 and b3.d == 4

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            parse_sc("# nothing here\n\n")

    @pytest.mark.parametrize("bad", ["", "a b", True, 1.5, None])
    def test_bad_token(self, bad):
        with pytest.raises(MalformedToken):
            from_facets([[1, bad]])

    def test_sc_round_trip(self, m5):
        assert parse_sc(m5.to_sc()) == m5


class TestFaceCounts:
    def test_sphere2(self):
        assert f_vector(simplex_boundary(3)) == (1, 4, 6, 4)

    def test_m5(self, m5):
        assert f_vector(m5) == (1, 5, 10, 5)

    def test_b3(self, b3):
        assert f_vector(b3) == (1, 5, 9, 7, 2)

    @given(facet_lists)
    @settings(max_examples=60, deadline=None)
    def test_against_brute_force(self, facets):
        K = from_facets(facets)
        faces = brute_faces([set(map(str, F)) for F in facets])
        counts = [0] * (max(len(f) for f in faces) + 1)
        for f in faces:
            counts[len(f)] += 1
        assert K.f_vector() == tuple(counts)
        for f in faces:
            assert tuple(f) in K


class TestSubstructures:
    def test_link_of_edge(self, m5):
        assert substructure(m5, ["1", "3"], "link").facets == [("2",)]

    def test_link_of_empty_face(self, m5):
        assert m5.link(()) == m5

    def test_costar_of_cone_vertex(self, b3, b3hat):
        assert b3hat.costar(["@v0"]) == b3

    def test_missing_face(self, m5):
        with pytest.raises(FaceNotInComplex):
            m5.link(["1", "2", "4"])

    @given(facet_lists, st.data())
    @settings(max_examples=60, deadline=None)
    def test_star_is_join_and_costar_covers(self, facets, data):
        K = from_facets(facets)
        F = data.draw(st.sampled_from([f for f in K.all_faces() if f]))
        star = {frozenset(g) for g in K.star(F).all_faces()}
        joined = {frozenset(g) | frozenset(h) for g in K.link(F).all_faces() for h in _subsets(F)}
        assert star == joined
        assert set(K.costar(F).all_faces()) | set(K.star(F).all_faces()) == set(K.all_faces())


def _subsets(F):
    return [c for k in range(len(F) + 1) for c in combinations(F, k)]


class TestCone:
    def test_cone_of_cycle(self):
        K = cone(from_facets([[1, 2], [2, 3], [1, 3]]), "v")
        assert len(K.facets) == 3 and all("v" in f for f in K.facets)

    def test_cone_of_void(self):
        assert cone(SimplicialComplex.void(), "v").is_void

    def test_cone_of_two_points(self):
        assert set(cone(from_facets([[1], [2]]), "v").facets) == {("1", "v"), ("2", "v")}

    def test_apex_collision(self, m5):
        with pytest.raises(ApexCollision):
            cone(m5, "1")

    @given(facet_lists)
    @settings(max_examples=40, deadline=None)
    def test_cone_f_vector(self, facets):
        K = from_facets(facets)
        f = K.f_vector()
        g = cone(K, "apex").f_vector()
        padded = list(f) + [0]
        assert g == tuple(padded[i] + (padded[i - 1] if i else 0) for i in range(len(padded)))


class TestNeighborly:
    def test_m5(self, m5):
        assert is_j_neighborly(m5, 2)

    def test_b3(self, b3):
        assert not is_j_neighborly(b3, 2)

    def test_one_neighborly(self, b3, m5):
        assert is_j_neighborly(b3, 1) and is_j_neighborly(m5, 1)


@given(facet_lists)
@settings(max_examples=40, deadline=None)
def test_from_facets_idempotent(facets):
    K = from_facets(facets)
    assert from_facets([list(f) for f in K.facets]) == K
