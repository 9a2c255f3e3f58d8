"""Artinian reductions of Stanley-Reisner rings by exact linear algebra.

Given a complex K on n vertices and d linear forms Θ, the ring
k[K]/Θk[K] is computed as a quotient of a smaller polynomial ring: Θ is put in
reduced row-echelon form, its pivot variables are eliminated, and every
``x_v`` becomes a linear form in the remaining ``m`` free variables ``y``.  Then

    k(K, Θ) = k[y] / J,

where J is generated by the images of the minimal non-faces of K.  The
degree-j piece of J is built as ``y * J_{j-1}`` plus the new generators of
degree j, and the quotient basis in each degree is the set of non-pivot
monomials of that span.  Degrees 0..d+1 are computed; degree d+1 must vanish
for Θ to be a linear system of parameters.

Coefficients of Θ and of the extra form ω are drawn uniformly from the field
with ``numpy.random.default_rng(seed)``, Θ first.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from itertools import combinations, combinations_with_replacement

import numpy as np

from .complex import SimplicialComplex
from .errors import DimensionTooSmall, FieldTooSmall, LsopFailure, NotApplicable, NotSphereOrBall
from .fields import GF, FieldSpec, as_field_spec, get_field
from .linalg import RowSpace, nullspace, rank

MIN_FIELD_SIZE = 2**14
RETRY_LIMIT = 8


@functools.lru_cache(maxsize=64)
def _monomials(m: int, j: int):
    """Degree-j monomials in m variables (as sorted index tuples) and their index."""
    mons = list(combinations_with_replacement(range(m), j))
    return mons, {t: i for i, t in enumerate(mons)}


@functools.lru_cache(maxsize=64)
def _shift(m: int, j: int) -> np.ndarray:
    """``S[k, i]`` = index in degree j+1 of ``y_k`` times monomial i of degree j."""
    mons, _ = _monomials(m, j)
    _, idx1 = _monomials(m, j + 1)
    S = np.zeros((m, len(mons)), dtype=np.int64)
    for i, t in enumerate(mons):
        for k in range(m):
            S[k, i] = idx1[tuple(sorted(t + (k,)))]
    return S


def minimal_nonfaces(K: SimplicialComplex, max_size: int) -> list[tuple[int, ...]]:
    """Minimal non-faces of K (as id tuples) with at most ``max_size`` vertices."""
    out = []
    n = K.n
    for s in range(2, max_size + 1):
        faces = K._face_set(s)
        lower = K._face_set(s - 1)
        for G in K._faces_of_size(s - 1):
            for v in range(G[-1] + 1 if G else 0, n):
                F = G + (v,)
                if F in faces:
                    continue
                if all(F[:i] + F[i + 1 :] in lower for i in range(s)):
                    out.append(F)
    return out


@dataclass
class _Degree:
    space: RowSpace
    basis: list[int]  # non-pivot monomial indices = quotient basis
    coords: np.ndarray  # row per monomial: its coordinates in the quotient


@dataclass
class GradedQuotient:
    """The Artinian reduction k(K, Θ), degree by degree."""

    complex: SimplicialComplex
    field: FieldSpec
    seed: int | None
    seeds_tried: tuple
    theta: np.ndarray
    omega: np.ndarray
    d: int
    m: int
    L: np.ndarray  # n x m: x_v as a linear form in y
    degrees: list = dc_field(repr=False)
    hilbert: tuple = ()
    _socle_cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def F(self) -> GF:
        return get_field(self.field)

    @property
    def is_valid(self) -> bool:
        return lsop_validate(self)

    @property
    def top_degree(self) -> int:
        nz = [j for j, h in enumerate(self.hilbert) if h]
        return max(nz) if nz else -1

    # -- multiplication ---------------------------------------------------
    def mult_by_variable(self, j: int, k: int) -> np.ndarray:
        """Matrix (dim Q_j x dim Q_{j+1}) of multiplication by y_k."""
        src = self.degrees[j].basis
        if not src or j + 1 >= len(self.degrees):
            return np.zeros((len(src), self.hilbert[j + 1] if j + 1 < len(self.hilbert) else 0), dtype=np.int64)
        S = _shift(self.m, j)
        return self.degrees[j + 1].coords[S[k, src]]

    def mult_by_form(self, j: int, form) -> np.ndarray:
        """Multiplication by a linear form in y (length m) from Q_j to Q_{j+1}."""
        F = self.F
        out = np.zeros((self.hilbert[j], self.hilbert[j + 1]), dtype=np.int64)
        for k in range(self.m):
            c = int(form[k])
            if c:
                out = F.add(out, F.mul(c, self.mult_by_variable(j, k)))
        return out

    def omega_form(self) -> np.ndarray:
        """ω rewritten in the free variables."""
        return self.F.matmul(self.omega[None, :], self.L)[0]

    # -- socle --------------------------------------------------------------
    def socle_basis(self, j: int) -> np.ndarray:
        """Rows spanning Soc(Q)_j, in quotient coordinates of degree j."""
        if j in self._socle_cache:
            return self._socle_cache[j]
        dim = self.hilbert[j]
        if dim == 0:
            B = np.zeros((0, 0), dtype=np.int64)
        elif j + 1 >= len(self.hilbert) or self.hilbert[j + 1] == 0 or self.m == 0:
            B = np.eye(dim, dtype=np.int64)
        else:
            M = np.hstack([self.mult_by_variable(j, k) for k in range(self.m)])
            B = nullspace(self.F, M.T)
        self._socle_cache[j] = B
        return B

    def socle(self) -> tuple[int, ...]:
        return tuple(self.socle_basis(j).shape[0] for j in range(self.d + 1))

    def h_dprime(self) -> tuple[int, ...]:
        d0 = self.top_degree
        soc = self.socle()
        return tuple(
            (self.hilbert[j] - soc[j]) if j < d0 else (self.hilbert[j] if j == d0 else 0) for j in range(self.d + 1)
        )

    def multiplication_closed(self) -> bool:
        """Check y_k J_j ⊆ J_{j+1} for every degree and variable."""
        for j in range(len(self.degrees) - 1):
            R = self.degrees[j].space.R
            if R.shape[0] == 0 or self.m == 0:
                continue
            S = _shift(self.m, j)
            nxt = self.degrees[j + 1].space
            for k in range(self.m):
                V = np.zeros((R.shape[0], nxt.ncols), dtype=np.int64)
                V[:, S[k]] = R
                if not nxt.contains(V).all():
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "seed": self.seed,
            "seeds_tried": list(self.seeds_tried),
            "d": self.d,
            "hilbert": list(self.hilbert[: self.d + 1]),
            "hilbert_d_plus_1": self.hilbert[self.d + 1],
            "lsop_valid": self.is_valid,
        }


def _coords_table(space: RowSpace, basis: list[int], F: GF) -> np.ndarray:
    N = space.ncols
    T = np.zeros((N, len(basis)), dtype=np.int64)
    pos = {c: i for i, c in enumerate(basis)}
    for c, i in pos.items():
        T[c, i] = 1
    if space.pivots and basis:
        T[space.pivots] = F.neg(space.R[:, basis])
    return T


def _substitution(F: GF, theta: np.ndarray):
    """Eliminate pivot variables of Θ; return (L, free columns)."""
    d, n = theta.shape
    rs = RowSpace(F, n)
    rs.extend(theta)
    free = rs.nonpivots()
    L = np.zeros((n, len(free)), dtype=np.int64)
    for t, v in enumerate(free):
        L[v, t] = 1
    for r, p in enumerate(rs.pivots):
        L[p] = F.neg(rs.R[r, free])
    return L, free


def _product_image(F: GF, L: np.ndarray, face, m: int) -> np.ndarray:
    p = np.ones(1, dtype=np.int64)
    for deg, v in enumerate(face):
        S = _shift(m, deg)
        nxt = np.zeros(len(_monomials(m, deg + 1)[0]), dtype=np.int64)
        for k in range(m):
            c = int(L[v, k])
            if c:
                nxt[S[k]] = F.add(nxt[S[k]], F.mul(c, p))
        p = nxt
    return p


def reduce_with(K: SimplicialComplex, field, theta, omega=None, seed=None, seeds_tried=()) -> GradedQuotient:
    """Artinian reduction for explicit Θ (no validation or retries)."""
    spec = as_field_spec(field)
    F = get_field(spec)
    theta = np.asarray(theta, dtype=np.int64)
    d = K.d
    n = K.n
    if omega is None:
        omega = np.zeros(n, dtype=np.int64)
    L, free = _substitution(F, theta)
    m = len(free)
    gens: dict[int, list] = {}
    for face in minimal_nonfaces(K, d + 1):
        gens.setdefault(len(face), []).append(face)
    degrees = []
    prev = None
    for j in range(d + 2):
        N = len(_monomials(m, j)[0])
        space = RowSpace(F, N)
        if j > 0 and prev is not None and prev.full and m > 0:
            space.R = np.eye(N, dtype=np.int64)
            space.pivots = list(range(N))
        else:
            if prev is not None and prev.rank and m > 0:
                S = _shift(m, j - 1)
                for k in range(m):
                    if space.full:
                        break
                    V = np.zeros((prev.rank, N), dtype=np.int64)
                    V[:, S[k]] = prev.R
                    space.extend(V)
            if j in gens and not space.full and N:
                G = np.array([_product_image(F, L, f, m) for f in gens[j]], dtype=np.int64)
                space.extend(G)
        basis = space.nonpivots()
        degrees.append(_Degree(space, basis, _coords_table(space, basis, F)))
        prev = space
    hilbert = tuple(len(dg.basis) for dg in degrees)
    return GradedQuotient(K, spec, seed, tuple(seeds_tried), theta, np.asarray(omega, dtype=np.int64), d, m, L,
                          degrees, hilbert)


def draw_forms(K: SimplicialComplex, field, seed: int):
    F = get_field(as_field_spec(field))
    rng = np.random.default_rng(seed)
    theta = F.random(rng, (K.d, K.n))
    omega = F.random(rng, K.n)
    return theta, omega


def lsop_validate(Q: GradedQuotient) -> bool:
    return len(Q.hilbert) > Q.d + 1 and Q.hilbert[Q.d + 1] == 0


def reduce(K: SimplicialComplex, field=None, seed: int = 0, retries: int = RETRY_LIMIT) -> GradedQuotient:
    """Generic Artinian reduction, reseeding (seed, seed+1, ...) until Θ is an l.s.o.p.

    Results are cached per (complex, field, seed, retries); they are deterministic.
    """
    return _reduce_cached(K, as_field_spec(field), int(seed), int(retries))


@functools.lru_cache(maxsize=128)
def _reduce_cached(K: SimplicialComplex, spec: FieldSpec, seed: int, retries: int) -> GradedQuotient:
    if spec.size < MIN_FIELD_SIZE:
        raise FieldTooSmall(f"field of size {spec.size} is below 2^14")
    if K.is_void:
        raise NotApplicable("void complex")
    tried = []
    for t in range(retries):
        s = seed + t
        tried.append(s)
        theta, omega = draw_forms(K, spec, s)
        Q = reduce_with(K, spec, theta, omega, seed=s, seeds_tried=tried)
        if lsop_validate(Q):
            return Q
    raise LsopFailure(f"no l.s.o.p. found after {retries} seeds", seeds=tried)


def socle(Q: GradedQuotient) -> tuple[int, ...]:
    return Q.socle()


def h_dprime_oracle(Q: GradedQuotient) -> tuple[int, ...]:
    return Q.h_dprime()


# -- Gorenstein / Lefschetz -----------------------------------------------------
def _bar_projection(Q: GradedQuotient, j: int):
    """RowSpace of Soc_j if j is below the top degree (the part killed in Q-bar), else None."""
    if j >= Q.top_degree or Q.hilbert[j] == 0:
        return None
    B = Q.socle_basis(j)
    rs = RowSpace(Q.F, Q.hilbert[j])
    if B.shape[0]:
        rs.extend(B)
    return rs


def _bar_map(Q: GradedQuotient, j: int, M: np.ndarray) -> np.ndarray:
    """Restrict a map Q_j -> Q_{j+1} to Q-bar: representatives in, projection out."""
    src = _bar_projection(Q, j)
    if src is not None:
        M = M[src.nonpivots()]
    dst = _bar_projection(Q, j + 1)
    if dst is not None:
        M = dst.quotient_coords(M) if M.shape[0] else np.zeros((0, len(dst.nonpivots())), dtype=np.int64)
    return M


def gorenstein_check(Q: GradedQuotient) -> dict:
    """Is Q/Soc° Gorenstein?  Computes the socle of the quotient explicitly."""
    if not lsop_validate(Q):
        raise NotApplicable("reduction is not Artinian (Θ is not an l.s.o.p.)")
    d0 = Q.top_degree
    hdd = Q.h_dprime()
    bar_socle = []
    for j in range(d0):
        dims = hdd[j]
        if dims == 0:
            bar_socle.append(0)
            continue
        if Q.m == 0:
            bar_socle.append(dims)
            continue
        M = np.hstack([_bar_map(Q, j, Q.mult_by_variable(j, k)) for k in range(Q.m)])
        bar_socle.append(dims - rank(Q.F, M))
    bar_socle.append(hdd[d0] if d0 >= 0 else 0)
    top_dim = hdd[d0] if d0 >= 0 else 0
    level = all(x == 0 for x in bar_socle[:-1])
    seq = list(hdd[: d0 + 1])
    symmetric = seq == seq[::-1]
    return {
        "check": "gorenstein",
        "field": str(Q.field),
        "seed": Q.seed,
        "top_degree": d0,
        "top_dim": top_dim,
        "h_dprime": list(hdd),
        "bar_socle": bar_socle,
        "level": level,
        "symmetric": symmetric,
        "gorenstein": level and top_dim == 1,
        "passed": level and top_dim == 1 and symmetric,
    }


def _attempts(fn, K, field, seed, trials):
    """Run a generic-coefficient rank test over several seeds; stop at the first pass."""
    runs = []
    s = seed
    for _ in range(max(1, trials)):
        rep = fn(K, field, s)
        runs.append(rep)
        if rep["passed"]:
            break
        s = rep["seed"] + 1
    out = dict(runs[-1])
    out["attempts"] = [{"seed": r["seed"], "passed": r["passed"]} for r in runs]
    return out


def _wlp_once(K, field, seed):
    Q = reduce(K, field, seed)
    d = K.d
    j = d // 2
    if j + 1 > d:
        return {"seed": Q.seed, "passed": True, "rank": 0, "source_dim": Q.hilbert[j], "target_dim": 0}
    M = Q.mult_by_form(j, Q.omega_form())
    r = rank(Q.F, M)
    return {
        "seed": Q.seed,
        "degree": j,
        "source_dim": Q.hilbert[j],
        "target_dim": Q.hilbert[j + 1],
        "rank": r,
        "passed": r == Q.hilbert[j + 1],
    }


def wlp_check(K: SimplicialComplex, field=None, seed: int = 0, trials: int = 3) -> bool:
    return wlp_report(K, field, seed, trials)["passed"]


def wlp_report(K: SimplicialComplex, field=None, seed: int = 0, trials: int = 3) -> dict:
    from .manifold import classify

    rep = classify(K, field)
    if rep.status not in ("sphere", "ball"):
        raise NotSphereOrBall(f"complex is {rep.status}")
    out = _attempts(_wlp_once, K, field, seed, trials)
    out["check"] = "wlp"
    out["field"] = str(as_field_spec(field))
    return out


def lefschetz_maps_check(K: SimplicialComplex, field=None, seed: int = 0, assume_wlp: bool = False,
                         trials: int = 3) -> dict:
    """Ranks of ·ω on the quotient of the completion's reduction by its interior socle."""
    from .enumerative import _manifold
    from .manifold import completion

    spec = as_field_spec(field)
    d = K.d
    if d < 4:
        raise DimensionTooSmall("the Lefschetz statement needs d >= 4")
    _manifold(K, spec, connected=True, orientable=True)
    hat = completion(K, spec).complex

    def once(_K, _f, s):
        Q = reduce(hat, spec, s)
        w = Q.omega_form()
        hdd = Q.h_dprime()
        maps = []
        for i in range(d):
            M = _bar_map(Q, i, Q.mult_by_form(i, w))
            r = rank(Q.F, M) if M.size else 0
            inj_req = i <= 1 or (assume_wlp and i < d // 2)
            surj_req = i >= d - 2 or (assume_wlp and i >= (d + 1) // 2)
            inj = r == hdd[i]
            surj = r == hdd[i + 1]
            maps.append({
                "i": i,
                "source_dim": hdd[i],
                "target_dim": hdd[i + 1],
                "rank": r,
                "injective": inj,
                "surjective": surj,
                "injective_required": inj_req,
                "surjective_required": surj_req,
                "ok": (inj or not inj_req) and (surj or not surj_req),
            })
        return {"seed": Q.seed, "maps": maps, "passed": all(x["ok"] for x in maps)}

    out = _attempts(once, hat, spec, seed, trials)
    out["check"] = "lefschetz_maps"
    out["field"] = str(spec)
    out["assume_wlp"] = assume_wlp
    return out
