from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from facelab.complex import SimplicialComplex, from_facets, simplex_boundary
from facelab.enumerative import h_bar_dprime, minimal_g2, minimal_g_tilde2
from facelab.errors import (
    DimensionTooSmall,
    DistanceTooSmall,
    InvalidParams,
    ManifoldViolation,
    NotAFacet,
    NotMissingFacet,
    VertexClash,
)
from facelab.generators import find_handle, stacked_ball, stacked_sphere
from facelab.homology import betti, euler
from facelab.manifold import boundary_complex, classify, interior_faces
from facelab.surgery import (
    GlueMap,
    barycentric_subdivision,
    coherent_orientation,
    connected_sum,
    cut_along_missing_facet,
    decompose_minimal_g2,
    decompose_minimal_g_tilde2,
    handle_addition,
    missing_facets,
    move_count,
    orientation_compatible,
    pl_handle_sequence,
)

from _brute import missing_facets_brute
from conftest import CHAR0, CHAR2


def double_sphere():
    return connected_sum(simplex_boundary(4), simplex_boundary(4, offset=6),
                         GlueMap.make(["1", "2", "3", "4"], ["6", "7", "8", "9"]))


def unprime(K: SimplicialComplex) -> SimplicialComplex:
    return K.relabel(lambda x: x.rstrip("'"))


class TestMissingFacets:
    def test_b3hat(self, b3hat):
        assert missing_facets(b3hat) == [("2", "3", "4", "@v0")]

    def test_simplex_boundary(self, sphere4):
        assert missing_facets(sphere4) == []

    def test_m5(self, m5):
        assert missing_facets(m5) == [("1", "2", "4"), ("1", "3", "4"), ("1", "3", "5"), ("2", "3", "5"),
                                      ("2", "4", "5")]

    @pytest.mark.parametrize("seed", range(6))
    def test_against_brute_force(self, seed):
        K = stacked_sphere(4, 6 + seed, seed)
        brute = missing_facets_brute([tuple(sorted(f, key=int)) for f in K.facets], K.d)
        assert sorted(missing_facets(K)) == sorted(tuple(sorted(f, key=int)) for f in brute)


class TestConnectedSum:
    def test_two_spheres(self):
        S = double_sphere()
        assert S.f_vector() == (1, 6, 14, 16, 8)
        assert len(missing_facets(S)) == 1

    def test_ball_and_sphere(self, b3):
        S = simplex_boundary(4, offset=10)
        K = connected_sum(b3, S, GlueMap.make(["1", "2", "3", "4"], ["10", "11", "12", "13"]))
        assert classify(K).status == "ball"
        assert boundary_complex(K) == boundary_complex(b3)

    def test_ball_and_ball(self, b3):
        other = b3.relabel(lambda x: str(int(x) + 10))
        with pytest.raises(ManifoldViolation):
            connected_sum(b3, other, GlueMap.make(["1", "2", "3", "4"], ["11", "12", "13", "14"]))

    def test_not_a_facet(self, sphere4):
        with pytest.raises(NotAFacet):
            connected_sum(sphere4, simplex_boundary(4, offset=6), GlueMap.make(["1", "2", "3", "9"], ["6", "7", "8", "9"]))

    def test_vertex_clash(self, sphere4):
        with pytest.raises(VertexClash):
            connected_sum(sphere4, sphere4, GlueMap.make(["1", "2", "3", "4"], ["1", "2", "3", "4"]))

    def test_bad_glue_map(self):
        with pytest.raises(InvalidParams):
            GlueMap.make(["1", "2", "3"], ["4", "5", "6"], {"1": "4", "2": "4", "3": "6"})


class TestHandles:
    def test_long_sphere_handle(self):
        K = stacked_sphere(4, 14, shape="long")
        g = find_handle(K, np.random.default_rng(0), CHAR0)
        H = handle_addition(K, g, CHAR0)
        rep = classify(H, CHAR0)
        assert rep.status == "closed_manifold" and rep.orientable
        assert betti(H, CHAR0)[1] == 1
        assert len(missing_facets(H)) > len(missing_facets(K))

    def test_distance_too_small(self):
        K = stacked_sphere(4, 8, shape="long")
        F1, F2 = [f for f in K.facets if "1" in f][:2]
        with pytest.raises(DistanceTooSmall):
            handle_addition(K, GlueMap.make(F1, F2))

    def test_handle_on_ball_keeps_boundary(self):
        base = stacked_ball(4, 3, shape="long")
        sph = stacked_sphere(4, 14, shape="long").relabel(lambda x: str(int(x) + 100))
        K = connected_sum(base, sph, GlueMap.make(base.facets[0], sph.facets[len(sph.facets) // 2]))
        H = handle_addition(K, find_handle(K, np.random.default_rng(1), CHAR0), CHAR0)
        assert boundary_complex(H) == boundary_complex(K) == boundary_complex(base)

    def test_orientation_rule(self):
        K = stacked_sphere(4, 14, shape="long")
        g = find_handle(K, np.random.default_rng(3), CHAR0, orientable=False)
        assert orientation_compatible(K, g) is False
        H = handle_addition(K, g, CHAR0)
        assert coherent_orientation(H) is None
        assert classify(H, CHAR0).orientable is False and classify(H, CHAR2).orientable is True


class TestCut:
    def test_b3hat(self, b3hat):
        step = cut_along_missing_facet(b3hat, ["2", "3", "4", "@v0"])
        assert step.kind == "connected_sum"
        assert all(p.f_vector() == (1, 5, 10, 10, 5) for p in step.pieces)

    def test_three_simplex_stack(self):
        K = stacked_sphere(4, 7, seed=0)
        step = cut_along_missing_facet(K, missing_facets(K)[0])
        sizes = sorted(len(p.facets) for p in step.pieces)
        assert sizes == [5, 8]
        assert classify(step.pieces[0]).status == classify(step.pieces[1]).status == "sphere"

    def test_not_missing(self, sphere4):
        with pytest.raises(NotMissingFacet):
            cut_along_missing_facet(sphere4, ["1", "2", "3", "4"])

    def test_dimension(self, m5):
        with pytest.raises(DimensionTooSmall):
            cut_along_missing_facet(m5, ["1", "2", "4"], CHAR2)

    def test_round_trip_double_sphere(self):
        S = double_sphere()
        step = cut_along_missing_facet(S, missing_facets(S)[0])
        assert connected_sum(*step.pieces, step.glue) == S
        A, B = (unprime(p) for p in step.pieces)
        phi = {"1": "6", "2": "7", "3": "8", "4": "9"}
        first, second = (A, B) if A == simplex_boundary(4) else (B, A)
        assert first == simplex_boundary(4)
        assert second.relabel(lambda x: phi.get(x, x)) == simplex_boundary(4, offset=6)


def _sum_with_random_facets(K1, K2, rng):
    F1 = K1.facets[int(rng.integers(len(K1.facets)))]
    F2 = K2.facets[int(rng.integers(len(K2.facets)))]
    perm = rng.permutation(len(F2))
    return GlueMap.make(F1, F2, {a: F2[i] for a, i in zip(F1, perm)})


@given(st.integers(5, 8), st.integers(5, 8), st.integers(0, 2**20))
@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_cut_glue_round_trip(n1, n2, seed):
    rng = np.random.default_rng(seed)
    K1 = stacked_sphere(4, n1, seed)
    K2 = stacked_sphere(4, n2, seed + 1).relabel(lambda x: str(int(x) + 50))
    g = _sum_with_random_facets(K1, K2, rng)
    S = connected_sum(K1, K2, g)
    assert len(missing_facets(S)) > max(len(missing_facets(K1)), len(missing_facets(K2)))
    step = cut_along_missing_facet(S, g.source_facet)
    assert step.kind == "connected_sum"
    assert connected_sum(*step.pieces, step.glue) == S
    A, B = (unprime(p) for p in step.pieces)
    back = {A, B}
    assert K1 in back
    rest = (back - {K1}).pop() if A != B else A
    assert rest.relabel(lambda x: g.phi.get(x, x)) == K2


@given(st.integers(0, 2**20))
@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_boundary_conservation(seed):
    rng = np.random.default_rng(seed)
    B = stacked_ball(4, int(rng.integers(2, 6)), seed)
    S = stacked_sphere(4, int(rng.integers(5, 9)), seed).relabel(lambda x: str(int(x) + 50))
    F2 = S.facets[int(rng.integers(len(S.facets)))]
    F1 = B.facets[int(rng.integers(len(B.facets)))]
    K = connected_sum(B, S, GlueMap.make(F1, F2))
    assert boundary_complex(K) == boundary_complex(B)
    assert len(missing_facets(K)) > len(missing_facets(B))


def _interior_facet(K):
    inner = set(K.vertices) - set(boundary_complex(K).vertices)
    return next(f for f in K.facets if set(f) <= inner)


def test_boundary_of_disjoint_sum():
    def ball_with_sphere(off):
        B = stacked_ball(4, 2, shape="long").relabel(lambda x: str(int(x) + off))
        S = stacked_sphere(4, 9, shape="long").relabel(lambda x: str(int(x) + off + 10))
        return connected_sum(B, S, GlueMap.make(B.facets[0], S.facets[0]))

    K1, K2 = ball_with_sphere(0), ball_with_sphere(100)
    K = connected_sum(K1, K2, GlueMap.make(_interior_facet(K1), _interior_facet(K2)))
    assert classify(K).status == "manifold_with_boundary"
    assert set(boundary_complex(K).facets) == set(boundary_complex(K1).facets) | set(boundary_complex(K2).facets)


class TestDecomposition:
    def test_b3_base(self, b3):
        for fn in (decompose_minimal_g2, decompose_minimal_g_tilde2):
            steps = fn(b3)
            assert len(steps) == 1 and steps[0].kind.startswith("base")

    def test_ball_plus_sphere(self, b3):
        S = simplex_boundary(4, offset=10)
        K = connected_sum(b3, S, GlueMap.make(["1", "2", "3", "4"], ["10", "11", "12", "13"]))
        steps = decompose_minimal_g2(K)
        assert move_count(steps) == 1 and steps[-1].kind == "base_no_interior_edges"

    def test_stacked_ball_plus_5sphere(self):
        B = stacked_ball(5, 3, 0)
        S = simplex_boundary(5, offset=20)
        K = connected_sum(B, S, GlueMap.make(B.facets[0], S.facets[0]))
        steps = decompose_minimal_g_tilde2(K)
        assert move_count(steps) == 1 and steps[-1].kind == "base_stacked"

    def test_handlebody(self):
        base = stacked_ball(5, 3, shape="long")
        sph = stacked_sphere(5, 16, shape="long").relabel(lambda x: str(int(x) + 100))
        K = connected_sum(base, sph, GlueMap.make(base.facets[0], sph.facets[len(sph.facets) // 2]))
        H = handle_addition(K, find_handle(K, np.random.default_rng(0), CHAR0), CHAR0)
        assert minimal_g2(H) and minimal_g_tilde2(H)
        for fn in (decompose_minimal_g2, decompose_minimal_g_tilde2):
            steps = fn(H)
            assert steps[-1].kind.startswith("base")
            # the handle is either cut directly or travels inside a closed summand
            handles = sum(s.kind == "handle_addition" for s in steps)
            carried = sum(betti(s.pieces[1], CHAR0)[1] for s in steps if s.kind == "connected_sum")
            assert handles + carried == 1


class TestSubdivision:
    def test_edge(self):
        S = barycentric_subdivision(from_facets([[1, 2]]))
        assert S.f_vector() == (1, 3, 2)

    def test_triangle(self):
        S = barycentric_subdivision(from_facets([[1, 2, 3]]))
        assert S.f_vector()[1] == 7 and S.f_vector()[-1] == 6

    def test_b3_twice(self, b3):
        assert len(barycentric_subdivision(b3, 2).facets) == 1152

    @pytest.mark.parametrize("name", ["m5", "a6", "b3", "octahedron"])
    def test_invariance(self, name, request):
        K = request.getfixturevalue(name)
        S = barycentric_subdivision(K)
        assert euler(S) == euler(K)
        for field in (CHAR0, CHAR2):
            assert tuple(betti(S, field)) == tuple(betti(K, field))
            assert classify(S, field).status == classify(K, field).status


class TestHandleSequence:
    def test_b3(self, b3):
        assert pl_handle_sequence(b3).indices == (0, 0, 1)

    def test_simplex(self):
        assert pl_handle_sequence(from_facets([[1, 2, 3, 4]])).indices == (0,)

    def test_m5(self, m5):
        assert pl_handle_sequence(m5, CHAR2).indices == (0,) * 5 + (1,) * 5

    @pytest.mark.parametrize("seed", range(6))
    def test_bound(self, seed):
        K = stacked_ball(4 + seed % 2, 2 + seed, seed)
        hb = h_bar_dprime(K)
        idx = pl_handle_sequence(K).indices
        for i in range(1, K.d):
            if hb[i] == 0:
                assert max(idx) < i
