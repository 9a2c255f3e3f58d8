"""Reduced simplicial homology with field coefficients.

Betti numbers over GF(p^k) equal those over GF(p) (the boundary matrices have
entries in the prime field and rank does not change under field extension), so
all rank computations run in the prime subfield.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .complex import SimplicialComplex
from .errors import NotAManifold, NotASubcomplex, NotConnected
from .fields import FieldSpec, as_field_spec, get_field
from .linalg import rank


@dataclass(frozen=True)
class BettiTable:
    """Reduced Betti numbers.

    ``values[i]`` is the i-th reduced Betti number for ``i >= 0``;
    ``minus_one`` is the degree -1 entry (nonzero only for ``{∅}``).
    Indexing with ``table[i]`` works for any ``i >= -1`` (zero out of range).
    """

    values: tuple[int, ...]
    minus_one: int
    field: FieldSpec

    def __getitem__(self, i: int) -> int:
        if i == -1:
            return self.minus_one
        if 0 <= i < len(self.values):
            return self.values[i]
        if i < -1:
            raise IndexError(i)
        return 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def total(self) -> int:
        return self.minus_one + sum(self.values)

    def euler(self) -> int:
        return -self.minus_one + sum((-1) ** i * b for i, b in enumerate(self.values))

    def to_json(self) -> dict:
        return {
            "reduced_betti": list(self.values),
            "reduced_betti_minus_one": self.minus_one,
            "field": str(self.field),
        }


def _boundary_matrix(src, dst_index, p, skip=None):
    """Rows: faces in ``src``; columns: ``dst_index`` positions."""
    M = np.zeros((len(src), len(dst_index)), dtype=np.int64)
    for r, face in enumerate(src):
        for i in range(len(face)):
            sub = face[:i] + face[i + 1 :]
            c = dst_index.get(sub)
            if c is not None:
                M[r, c] = 1 if i % 2 == 0 else p - 1
    return M


def _chain_betti(chains, p):
    """chains[s] lists the generating faces of size s (s = 0 is the empty face)."""
    F = get_field(p)
    top = len(chains) - 1
    ranks = [0] * (top + 2)  # ranks[s] = rank of boundary from size s to size s-1
    for s in range(1, top + 1):
        if not chains[s] or not chains[s - 1]:
            continue
        idx = {f: i for i, f in enumerate(chains[s - 1])}
        ranks[s] = rank(F, _boundary_matrix(chains[s], idx, p))
    return [len(chains[s]) - ranks[s] - ranks[s + 1] for s in range(top + 1)]


@functools.lru_cache(maxsize=8192)
def _betti_cached(K: SimplicialComplex, p: int):
    if K.is_void:
        return ()
    chains = [K._faces_of_size(s) for s in range(K.dim + 2)]
    return tuple(_chain_betti(chains, p))


def betti(K: SimplicialComplex, field=None) -> BettiTable:
    spec = as_field_spec(field)
    vals = _betti_cached(K, spec.characteristic)
    if not vals:
        return BettiTable((), 0, spec)
    return BettiTable(tuple(vals[1:]), vals[0], spec)


def relative_betti(K: SimplicialComplex, L: SimplicialComplex, field=None) -> BettiTable:
    """Betti numbers of the chain complex C(K)/C(L), indexed like :func:`betti`.

    If ``L`` is void the empty face survives, so this is reduced homology of ``K``.
    """
    spec = as_field_spec(field)
    if not L.is_subcomplex_of(K):
        raise NotASubcomplex("L is not a subcomplex of K")
    if K.is_void:
        return BettiTable((), 0, spec)
    Lsets = [set(L.labels(f) for f in L._faces_of_size(s)) for s in range(K.dim + 2)]
    chains = []
    for s in range(K.dim + 2):
        faces = [K.labels(f) for f in K._faces_of_size(s)]
        chains.append([f for f in faces if f not in Lsets[s]])
    vals = _chain_betti(chains, spec.characteristic)
    return BettiTable(tuple(vals[1:]), vals[0], spec)


def euler(K: SimplicialComplex) -> int:
    """Reduced Euler characteristic ``sum_{i >= -1} (-1)^i f_i``."""
    f = K.f_vector()
    return sum(x if s % 2 == 1 else -x for s, x in enumerate(f))


def is_orientable(K: SimplicialComplex, field=None) -> bool:
    """Top relative homology of (K, ∂K) is one-dimensional."""
    from .manifold import classify

    rep = classify(K, field)
    if not rep.is_manifold:
        raise NotAManifold(f"complex is {rep.status}")
    if not rep.connected:
        raise NotConnected("complex is not connected")
    return rep.orientable
