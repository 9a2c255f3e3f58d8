"""Exact row reduction over a finite field.

:class:`RowSpace` keeps a reduced row-echelon basis that grows as rows are
added.  New rows arrive in blocks; each block is reduced against the current
basis with one matrix product, echelonised on its own, and then merged.  That
keeps the per-row Python overhead low on matrices with a few thousand columns.
"""
from __future__ import annotations

import numpy as np

from .fields import GF

_BLOCK = 64


def _rref_rows(F: GF, X: np.ndarray):
    """Gauss-Jordan on a small block, row by row.  Returns (rows, pivots)."""
    X = X.copy()
    m = X.shape[0]
    keep = []
    pivots = []
    for r in range(m):
        nz = np.flatnonzero(X[r])
        if nz.size == 0:
            continue
        c = int(nz[0])
        if X[r, c] != 1:
            X[r] = F.mul(X[r], F.inv(X[r, c]))
        others = np.flatnonzero(X[:, c])
        others = others[others != r]
        if others.size:
            X[others] = F.sub(X[others], F.mul(X[others, c][:, None], X[r][None, :]))
        keep.append(r)
        pivots.append(c)
    return X[keep], pivots


class RowSpace:
    """Span of a growing set of row vectors in ``F^ncols``."""

    def __init__(self, F: GF, ncols: int):
        self.F = F
        self.ncols = int(ncols)
        self.R = np.zeros((0, self.ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def reduce(self, V) -> np.ndarray:
        """Normal form of the rows of ``V`` modulo the span (pivot entries zeroed)."""
        V = np.asarray(V, dtype=np.int64).reshape(-1, self.ncols)
        if not self.pivots or V.shape[0] == 0:
            return V.copy()
        return self.F.sub(V, self.F.matmul(V[:, self.pivots], self.R))

    def extend(self, B, block: int = _BLOCK) -> int:
        """Add the rows of ``B``; return how much the rank grew."""
        B = np.asarray(B, dtype=np.int64).reshape(-1, self.ncols)
        before = self.rank
        for s in range(0, B.shape[0], block):
            if self.full:
                break
            X = self.reduce(B[s : s + block])
            Xr, xp = _rref_rows(self.F, X)
            if not xp:
                continue
            if self.pivots:
                self.R = self.F.sub(self.R, self.F.matmul(self.R[:, xp], Xr))
            self.R = np.vstack([self.R, Xr])
            self.pivots.extend(xp)
        return self.rank - before

    def contains(self, V) -> np.ndarray:
        """Boolean per row: is the row inside the span?"""
        return ~self.reduce(V).any(axis=1)

    def nonpivots(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ncols) if c not in piv]

    def quotient_coords(self, V) -> np.ndarray:
        """Coordinates of the rows of ``V`` in ``F^ncols / span``.

        The quotient basis is the set of standard vectors on non-pivot columns.
        """
        return self.reduce(V)[:, self.nonpivots()]


def rank(F: GF, A) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    rs = RowSpace(F, A.shape[1])
    rs.extend(A)
    return rs.rank


def rref(F: GF, A):
    """Reduced row-echelon form with rows sorted by pivot column."""
    A = np.asarray(A, dtype=np.int64)
    rs = RowSpace(F, A.shape[1])
    rs.extend(A)
    order = np.argsort(rs.pivots, kind="stable")
    return rs.R[order], [rs.pivots[i] for i in order]


def nullspace(F: GF, A) -> np.ndarray:
    """Rows spanning ``{x : A x = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    rs = RowSpace(F, n)
    if A.shape[0]:
        rs.extend(A)
    free = rs.nonpivots()
    N = np.zeros((len(free), n), dtype=np.int64)
    for t, j in enumerate(free):
        N[t, j] = 1
        if rs.pivots:
            N[t, rs.pivots] = F.neg(rs.R[:, j])
    return N
