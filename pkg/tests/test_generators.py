from __future__ import annotations

import json

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from facelab.enumerative import h_vector, minimal_g2, minimal_g_tilde2
from facelab.errors import InvalidParams
from facelab.generators import generate, join_ball, random_script, stacked_ball, stacked_sphere, walkup
from facelab.homology import betti
from facelab.manifold import classify, is_i_stacked

from conftest import CHAR0


class TestStacked:
    def test_sphere_h(self):
        assert h_vector(stacked_sphere(4, 7, 0)) == (1, 3, 3, 3, 1)

    @pytest.mark.parametrize("shape", ["random", "long"])
    @pytest.mark.parametrize("d,n", [(4, 9), (5, 10), (3, 8)])
    def test_sphere_is_stacked(self, d, n, shape):
        K = stacked_sphere(d, n, 3, shape)
        assert classify(K).status == "sphere" and K.n == n
        h = h_vector(K)
        assert h[1] == n - d and all(h[i] == h[1] for i in range(1, d))

    @pytest.mark.parametrize("seed", range(4))
    def test_ball(self, seed):
        K = stacked_ball(4, 5, seed)
        assert classify(K).status == "ball" and len(K.facets) == 5
        assert is_i_stacked(K, 1)

    @pytest.mark.parametrize("d,k", [(4, 1), (4, 2), (4, 3), (5, 2), (5, 3)])
    def test_join_ball_stackedness(self, d, k):
        K = join_ball(d, k)
        assert classify(K).status == "ball"
        assert is_i_stacked(K, k) and not is_i_stacked(K, k - 1)

    def test_bad_params(self):
        with pytest.raises(InvalidParams):
            stacked_sphere(4, 3)
        with pytest.raises(InvalidParams):
            generate("nope")


def test_kuhnel_mobius():
    assert generate("kuhnel_d3_mobius").f_vector() == (1, 5, 10, 5)


def test_walkup_handle_on_long_sphere():
    script = {"base": {"kind": "stacked_sphere", "d": 4, "n": 14, "shape": "long"}, "ops": [{"op": "handle"}]}
    K = walkup(json.dumps(script), seed=0)
    assert betti(K, CHAR0)[1] == 1 and classify(K, CHAR0).orientable


def test_explicit_sum():
    script = {"base": {"kind": "simplex_boundary", "d": 4},
              "ops": [{"op": "sum", "with": {"kind": "simplex_boundary", "d": 4},
                       "facet": [1, 2, 3, 4], "target": [1, 2, 3, 4]}]}
    assert walkup(script).f_vector() == (1, 6, 14, 16, 8)


@given(st.sampled_from([4, 5]), st.integers(0, 10**6), st.integers(1, 3))
@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_random_scripts_are_minimal(d, seed, n_ops):
    K = walkup(random_script(d, seed, n_ops))
    rep = classify(K, CHAR0)
    assert rep.status in ("ball", "manifold_with_boundary") and rep.connected
    assert minimal_g2(K, CHAR0) and minimal_g_tilde2(K, CHAR0)


@given(st.integers(0, 10**6))
@settings(max_examples=10, deadline=None)
def test_seed_determinism(seed):
    a = walkup(random_script(4, seed, 2), seed)
    b = walkup(random_script(4, seed, 2), seed)
    assert a == b
