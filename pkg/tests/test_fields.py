from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facelab.fields import FieldSpec, as_field_spec, get_field, is_prime
from facelab.linalg import nullspace, rank

from _brute import rank_mod_p

FIELDS = ["5", "32003", "2:4", "3:2", "2:16", "3:5"]


def poly_mul(a, b, modulus, p):
    """Schoolbook product of digit lists, reduced by the monic modulus."""
    k = len(modulus) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(2 * k - 1, k - 1, -1):
        c = prod[deg]
        for t in range(k + 1):
            prod[deg - k + t] = (prod[deg - k + t] - c * modulus[t]) % p
    return prod[:k]


def digits(v, p, k):
    return [(v // p**i) % p for i in range(k)]


def test_parse():
    assert as_field_spec("2:16") == FieldSpec(2, 16)
    assert str(as_field_spec(None)) == "32003"
    with pytest.raises(ValueError):
        FieldSpec.parse("4")
    with pytest.raises(ValueError):
        FieldSpec.parse("2:x")


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("spec", FIELDS)
def test_multiplicative_group_is_cyclic(spec):
    F = get_field(spec)
    if F.k == 1:
        return
    elems = np.arange(1, F.q)
    assert sorted(F._exp[: F.q - 1].tolist()) == elems.tolist()


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=150, deadline=None)
def test_field_axioms(spec, data):
    F = get_field(spec)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.sub(a, b), b) == a
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(st.sampled_from(["2:4", "3:2", "3:5", "2:16"]), st.data())
@settings(max_examples=100, deadline=None)
def test_mul_matches_polynomial_arithmetic(spec, data):
    F = get_field(spec)
    a, b = (data.draw(st.integers(0, F.q - 1)) for _ in range(2))
    expect = poly_mul(digits(a, F.p, F.k), digits(b, F.p, F.k), F.modulus, F.p)
    assert digits(int(F.mul(a, b)), F.p, F.k) == expect


@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**31), st.sampled_from([2, 3, 32003]))
@settings(max_examples=80, deadline=None)
def test_rank_matches_reference(r, c, seed, p):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, min(p, 4), size=(r, c))
    F = get_field(p)
    assert rank(F, A) == rank_mod_p(A.tolist(), p)
    N = nullspace(F, A.T)
    assert N.shape[0] == r - rank(F, A)
    if N.size:
        assert not F.matmul(N, A).any()


def test_matmul_large_prime_exact():
    F = get_field(32003)
    rng = np.random.default_rng(0)
    A = rng.integers(0, 32003, size=(7, 3000))
    B = rng.integers(0, 32003, size=(3000, 5))
    ref = (A.astype(object) @ B.astype(object)) % 32003
    assert (F.matmul(A, B) == ref.astype(np.int64)).all()
