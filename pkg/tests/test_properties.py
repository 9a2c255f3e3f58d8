"""Identities that must hold on every homology manifold with boundary we can build."""
from __future__ import annotations

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from facelab.enumerative import g_tilde, h_bar_dprime, h_dprime_completion, h_prime
from facelab.generators import join_ball, random_script, walkup
from facelab.homology import betti, euler
from facelab.manifold import boundary_complex, classify, completion, is_i_stacked
from facelab.oracle import h_dprime_oracle, reduce
from facelab.surgery import barycentric_subdivision, pl_handle_sequence

from conftest import CHAR0

slow = settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])
manifolds = st.builds(lambda d, seed, n: walkup(random_script(d, seed, n)),
                      st.sampled_from([4, 5]), st.integers(0, 10**6), st.integers(1, 3))


@given(manifolds)
@slow
def test_completion_identities(K):
    comp = completion(K, CHAR0)
    hat = comp.complex
    bd = boundary_complex(K, CHAR0)
    assert euler(bd) == euler(K) - euler(hat)
    d = K.d
    bh, bk = betti(hat, CHAR0), betti(K, CHAR0)
    assert all(bh[j - 1] == bk[d - j] for j in range(d))
    for v in K.vertices[:4]:
        bc_hat, bc = betti(hat.costar([v]), CHAR0), betti(K.costar([v]), CHAR0)
        assert all(bc_hat[j] == bh[j] and bc[j] == bk[j] for j in range(d - 2))


@given(manifolds)
@slow
def test_symmetry_and_g_tilde_identity(K):
    hdd = h_dprime_completion(K, CHAR0)
    assert hdd == hdd[::-1]
    comp = completion(K, CHAR0)
    hp = h_prime(comp.complex, CHAR0, "one_singular", u=comp.cone_vertex)
    d = K.d
    for r, gt in enumerate(g_tilde(K, CHAR0), 1):
        assert gt == hdd[d - r] - hp[d - r + 1]


@given(manifolds)
@slow
def test_stackedness_equivalence(K):
    hb = h_bar_dprime(K, CHAR0)
    assert all(x >= 0 for x in hb)
    for i in range(1, K.d):
        assert (hb[i] == 0) == is_i_stacked(K, i - 1, CHAR0)
    idx = pl_handle_sequence(K, CHAR0).indices
    for i in range(1, K.d):
        if hb[i] == 0:
            assert max(idx) < i


@pytest.mark.parametrize("d,k", [(4, 1), (4, 2), (4, 3), (5, 1), (5, 3), (5, 4)])
def test_stackedness_on_join_balls(d, k):
    K = join_ball(d, k)
    hb = h_bar_dprime(K)
    for i in range(1, d):
        assert (hb[i] == 0) == is_i_stacked(K, i - 1)


@given(st.integers(0, 10**6))
@settings(max_examples=4, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_oracle_on_random_members(seed):
    K = walkup(random_script(4, seed, 1, handles=False))
    assume(K.n <= 11)
    Q = reduce(completion(K, CHAR0).complex, CHAR0, seed % 97)
    assert h_dprime_oracle(Q) == h_dprime_completion(K, CHAR0)


@given(st.integers(0, 10**6))
@settings(max_examples=3, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_subdivision_keeps_homology(seed):
    K = walkup(random_script(4, seed, 1, handles=False))
    S = barycentric_subdivision(K)
    assert euler(S) == euler(K)
    assert tuple(betti(S, CHAR0)) == tuple(betti(K, CHAR0))
    assert classify(S, CHAR0).status == classify(K, CHAR0).status
