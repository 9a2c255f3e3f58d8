"""Slow, obviously-correct reference computations used only by the tests."""
from __future__ import annotations

from itertools import combinations


def faces_by_size(facets):
    out: dict[int, set] = {}
    for F in facets:
        F = tuple(sorted(F))
        for k in range(len(F) + 1):
            out.setdefault(k, set()).update(combinations(F, k))
    return {k: sorted(v) for k, v in out.items()}


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows if any(r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                c = rows[r][col]
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def reduced_betti(facets, p, skip=frozenset()):
    """Reduced Betti numbers (index 0 = degree -1) of faces minus ``skip``."""
    fs = faces_by_size(facets)
    top = max(fs)
    chains = [[f for f in fs.get(k, []) if f not in skip] for k in range(top + 1)]
    ranks = []
    for k in range(1, top + 1):
        idx = {f: i for i, f in enumerate(chains[k - 1])}
        rows = []
        for f in chains[k]:
            row = [0] * len(idx)
            for j in range(len(f)):
                g = f[:j] + f[j + 1:]
                if g in idx:
                    row[idx[g]] = (-1) ** j % p
            rows.append(row)
        ranks.append(rank_mod_p(rows, p) if rows and idx else 0)
    out = []
    for k in range(top + 1):
        r_in = ranks[k - 1] if k >= 1 else 0
        r_out = ranks[k] if k < len(ranks) else 0
        out.append(len(chains[k]) - r_in - r_out)
    return out


def h_from_f_brute(f):
    """h_j = sum_i (-1)^(j-i) C(d-i, j-i) f_{i-1} computed directly."""
    from math import comb

    d = len(f) - 1
    return tuple(sum((-1) ** (j - i) * comb(d - i, j - i) * f[i] for i in range(j + 1)) for j in range(d + 1))


def missing_facets_brute(facets, d):
    fs = faces_by_size(facets)
    verts = sorted({v for F in facets for v in F})
    faces = {k: set(v) for k, v in fs.items()}
    out = []
    for S in combinations(verts, d):
        if S in faces.get(d, set()):
            continue
        if all(T in faces.get(d - 1, set()) for T in combinations(S, d - 1)):
            out.append(S)
    return out
