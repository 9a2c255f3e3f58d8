"""Closed-form face-number invariants and bound checks.

Everything here is exact integer or rational arithmetic on f-vectors and Betti
numbers.  The Artinian oracle in :mod:`facelab.oracle` computes the algebraic
counterparts independently.

Conventions: ``d = dim + 1``.  For a manifold ``K`` with boundary, quantities
"of the completion" are written in terms of ``K`` itself (its Betti numbers and
the h-vector of its boundary), which is how the closed-form statements read.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .complex import SimplicialComplex
from .errors import (
    ClosedManifold,
    DimensionTooSmall,
    NotAManifold,
    NotConnected,
    NotOrientable,
    NotPure,
    NotStartingAtOne,
    OddDimension,
    ProfileMismatch,
)
from .fields import FieldSpec, as_field_spec
from .homology import betti, relative_betti
from .manifold import ManifoldReport, classify, homology_type, is_cone_vertex_label


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


# -- f, h, g ---------------------------------------------------------------
def h_from_f(f, d: int) -> tuple[int, ...]:
    """h-vector from ``f = (f_{-1}, ..., f_{d-1})`` (missing entries count as 0)."""
    f = list(f) + [0] * (d + 1 - len(f))
    return tuple(sum((-1) ** (i - j) * binom(d - j, d - i) * f[j] for j in range(i + 1)) for i in range(d + 1))


def h_vector(K: SimplicialComplex) -> tuple[int, ...]:
    if not K.is_pure():
        raise NotPure("h-vector needs a pure complex")
    if K.is_void:
        return ()
    return h_from_f(K.f_vector(), K.d)


def g_from_h(h) -> tuple[int, ...]:
    """``(g_0, g_1, ..., g_d)`` with ``g_0 = h_0``."""
    return tuple(h[i] - (h[i - 1] if i > 0 else 0) for i in range(len(h)))


def g_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return g_from_h(h_vector(K))


def _boundary_h(rep: ManifoldReport, i: int) -> int:
    """h_i of the boundary complex (0 out of range or when there is no boundary)."""
    if rep.boundary.is_void or i < 0:
        return 0
    hb = h_vector(rep.boundary)
    return hb[i] if i < len(hb) else 0


# -- profiles ---------------------------------------------------------------
def _manifold(K, field, connected=False, orientable=False) -> ManifoldReport:
    rep = classify(K, field)
    if not rep.is_manifold:
        raise NotAManifold(f"complex is {rep.status}: {rep.reason}")
    if connected and not rep.connected:
        raise NotConnected("complex is not connected")
    if orientable and not rep.orientable:
        raise NotOrientable(f"not orientable over GF({rep.field})")
    return rep


def pick_singular_vertex(K: SimplicialComplex, field=None, u=None) -> str:
    """The designated vertex for the one-singular-vertex formula.

    Explicit ``u`` wins; otherwise the unique singular vertex, then a cone
    vertex label, then the first vertex.
    """
    if u is not None:
        u = str(u)
        if u not in K._index:
            raise ProfileMismatch(f"{u!r} is not a vertex")
        bad = [v for v in K.vertices if v != u and homology_type(K.link([v]), field) == "other"]
        if bad:
            raise ProfileMismatch(f"vertices other than {u!r} are singular: {bad}")
        return u
    bad = [v for v in K.vertices if homology_type(K.link([v]), field) == "other"]
    if len(bad) > 1:
        raise ProfileMismatch(f"more than one singular vertex: {bad}")
    if bad:
        return bad[0]
    cones = [v for v in K.vertices if is_cone_vertex_label(v)]
    return cones[0] if cones else K.vertices[0]


def h_prime(K: SimplicialComplex, field=None, profile: str = "manifold", u=None) -> tuple[int, ...]:
    """h'-numbers from the closed formulas.

    ``profile`` is ``"sphere_ball"``, ``"manifold"`` or ``"one_singular"``.
    """
    if not K.is_pure():
        raise NotPure("h' needs a pure complex")
    spec = as_field_spec(field)
    d = K.d
    h = h_vector(K)
    b = betti(K, spec)
    if profile == "sphere_ball":
        rep = classify(K, spec)
        if rep.status not in ("sphere", "ball"):
            raise ProfileMismatch(f"complex is {rep.status}, not a homology sphere or ball")
        return h
    if profile == "manifold":
        if not classify(K, spec).is_manifold:
            raise ProfileMismatch("complex is not a homology manifold")
        return tuple(
            h[i] - binom(d, i) * sum((-1) ** (i - j) * b[j - 1] for j in range(1, i)) for i in range(d + 1)
        )
    if profile == "one_singular":
        u = pick_singular_vertex(K, spec, u)
        bc = betti(K.costar([u]), spec)
        return tuple(
            h[i]
            - sum(
                (-1) ** (i - j) * (binom(d - 1, i - 1) * b[j - 1] + binom(d - 1, i) * bc[j - 1])
                for j in range(1, i)
            )
            for i in range(d + 1)
        )
    raise ValueError(f"unknown profile {profile!r}")


def h_dprime_closed(K: SimplicialComplex, field=None) -> tuple[int, ...]:
    """h'' of a connected orientable closed manifold (degrees 0..d)."""
    rep = _manifold(K, field, connected=True, orientable=True)
    if not rep.boundary.is_void:
        raise ProfileMismatch("manifold has boundary")
    d = K.d
    out = list(h_bar_dprime(K, field))
    out.append(rep.betti[d - 1])
    return tuple(out)


def h_dprime_completion(K: SimplicialComplex, field=None) -> tuple[int, ...]:
    """h''-numbers of the completion of ``K``, degrees 0..d."""
    rep = _manifold(K, field, connected=True, orientable=True)
    d = K.d
    h = h_vector(K)
    b = rep.betti
    out = []
    for i in range(d):
        corr = sum(
            (-1) ** (i - j) * (binom(d - 1, i) * b[j - 1] + binom(d - 1, i - 1) * b[d - j]) for j in range(2, i + 1)
        )
        out.append(h[i] + _boundary_h(rep, i - 1) - corr)
    out.append(1)
    return tuple(out)


def h_completion(K: SimplicialComplex, field=None) -> tuple[int, ...]:
    """h(K^) via h_i(K) + h_{i-1}(∂K)."""
    rep = _manifold(K, field)
    h = h_vector(K)
    return tuple(h[i] + _boundary_h(rep, i - 1) for i in range(K.d + 1))


def socle_dims_formula(K: SimplicialComplex, field=None) -> tuple[int, ...]:
    """Socle dimensions of the Artinian reduction of the completion, degrees 0..d.

    Degrees below d come from the Betti numbers of ``K``; degree d is the whole
    top component, which is one-dimensional for connected orientable input.
    """
    rep = _manifold(K, field, connected=True, orientable=True)
    d = K.d
    b = rep.betti
    out = [binom(d - 1, i) * b[i - 1] + binom(d - 1, i - 1) * b[d - i] for i in range(d)]
    out.append(1)
    return tuple(out)


def h_bar_dprime(K: SimplicialComplex, field=None) -> tuple[int, ...]:
    """The closed-manifold h'' expression applied to any pure complex, degrees 0..d-1."""
    if not K.is_pure():
        raise NotPure("needs a pure complex")
    d = K.d
    h = h_vector(K)
    b = betti(K, field)
    return tuple(
        h[i] - binom(d, i) * sum((-1) ** (i - j) * b[j - 1] for j in range(1, i + 1)) for i in range(d)
    )


@dataclass(frozen=True)
class GTilde:
    values: tuple[int, ...]  # g~_1 .. g~_{floor(d/2)}
    via_h_dprime: tuple[int, ...] | None
    via_face_numbers: tuple[int, ...] | None
    closed: bool

    @property
    def forms_agree(self) -> bool:
        if self.via_h_dprime is None or self.via_face_numbers is None:
            return True
        return self.via_h_dprime == self.via_face_numbers


def g_tilde_full(K: SimplicialComplex, field=None) -> GTilde:
    rep = _manifold(K, field)
    d = K.d
    b = rep.betti
    g = g_vector(K)
    top = d // 2
    if rep.boundary.is_void:
        closed = tuple(
            g[r] - binom(d + 1, r) * sum((-1) ** (r - j) * b[j - 1] for j in range(1, r + 1))
            for r in range(1, top + 1)
        )
        via_h = None
        if rep.connected and rep.orientable:
            hdd = h_dprime_completion(K, field)
            via_h = tuple(
                hdd[r] - hdd[r - 1] - (binom(d - 1, r - 1) * b[r - 1] + binom(d - 1, r - 2) * b[d - r])
                for r in range(1, top + 1)
            )
        return GTilde(closed, via_h, closed, True)
    if not rep.connected:
        raise NotConnected("complex is not connected")
    if not rep.orientable:
        raise NotOrientable(f"not orientable over GF({rep.field})")
    hdd = h_dprime_completion(K, field)
    via_h = tuple(
        hdd[r] - hdd[r - 1] - (binom(d - 1, r - 1) * b[r - 1] + binom(d - 1, r - 2) * b[d - r])
        for r in range(1, top + 1)
    )

    def gb(i):
        return _boundary_h(rep, i) - _boundary_h(rep, i - 1)

    via_f = tuple(
        g[r]
        + gb(r - 1)
        - sum((-1) ** (r - j) * (binom(d, r) * b[j - 1] + binom(d, r - 1) * b[d - j]) for j in range(2, r + 1))
        for r in range(1, top + 1)
    )
    return GTilde(via_f, via_h, via_f, False)


def g_tilde(K: SimplicialComplex, field=None) -> tuple[int, ...]:
    return g_tilde_full(K, field).values


def relative_hg(K: SimplicialComplex, field=None) -> dict:
    """h_i and g_i of the pair (K, ∂K) for i <= 2."""
    from .manifold import relative_f_vector

    _manifold(K, field)
    d = K.d
    f = relative_f_vector(K, field)
    h = h_from_f(f, d)
    return {"h": tuple(h[: min(3, d + 1)]), "g": tuple(h[i] - h[i - 1] for i in range(1, min(3, d + 1)))}


# -- Macaulay ---------------------------------------------------------------
def binomial_expansion(a: int, i: int) -> list[tuple[int, int]]:
    """Greedy i-th Macaulay representation as ``[(a_i, i), (a_{i-1}, i-1), ...]``."""
    if a < 0 or i < 1:
        raise ValueError("need a >= 0 and i >= 1")
    out = []
    k = i
    while a > 0 and k >= 1:
        top = k
        while comb(top + 1, k) <= a:
            top += 1
        out.append((top, k))
        a -= comb(top, k)
        k -= 1
    return out


def macaulay_pow(a: int, i: int) -> int:
    """``a^<i>``, with ``0^<i> = 0``."""
    return sum(comb(top + 1, k + 1) for top, k in binomial_expansion(a, i))


def m_vector_violation(seq) -> int | None:
    """First index ``l + 1`` breaking Macaulay growth, or ``None``.

    Raises :class:`NotStartingAtOne` when ``seq[0] != 1``.
    """
    seq = list(seq)
    if not seq or seq[0] != 1:
        raise NotStartingAtOne(f"sequence must start with 1, got {seq[:1]}")
    if len(seq) > 1 and not 0 <= seq[1]:
        return 1
    for ell in range(1, len(seq) - 1):
        nxt = seq[ell + 1]
        if nxt < 0 or seq[ell] < 0 or nxt > macaulay_pow(seq[ell], ell):
            return ell + 1
    return None


def is_M_vector(seq) -> bool:
    return m_vector_violation(seq) is None


# -- bound checks --------------------------------------------------------------
def _frac_json(x: Fraction) -> str | int:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _seq_report(name, values, requires_wlp=False):
    bad = m_vector_violation(values)
    return {
        "name": name,
        "values": list(values),
        "is_M_vector": bad is None,
        "violation_index": bad,
        "requires_wlp": requires_wlp,
    }


def _dimension_gate(d: int, minimum: int = 4) -> bool:
    """True when the statement is only informational (d below its hypothesis)."""
    if d < 3:
        raise DimensionTooSmall(f"d = {d} is too small for this check")
    return d < minimum


def check_g_theorems(K: SimplicialComplex, field=None, assume_wlp: bool = False) -> dict:
    spec = as_field_spec(field)
    d = K.d
    informational = _dimension_gate(d)
    _manifold(K, spec, connected=True, orientable=True)
    hdd = h_dprime_completion(K, spec)
    b = betti(K, spec)
    gdd = g_from_h(hdd)
    gt = g_tilde_full(K, spec)
    top = d // 2
    length = top if assume_wlp else min(2, top)
    seqs = [
        _seq_report("g_dprime", [1] + list(gdd[1 : length + 1]), requires_wlp=length > 2),
        _seq_report("g_tilde", [1] + list(gt.values[:length]), requires_wlp=length > 2),
    ]
    for ell in range(1, top):
        if ell + 1 > 2 and not assume_wlp:
            break
        vals = [1] + list(gdd[1 : ell + 1])
        vals.append(gdd[ell + 1] + binom(d - 1, ell + 1) * b[ell] + binom(d - 1, ell) * b[d - ell - 1])
        seqs.append(_seq_report(f"strengthened_l{ell}", vals, requires_wlp=ell + 1 > 2))
    ok = all(s["is_M_vector"] for s in seqs) and gt.forms_agree
    return {
        "check": "g_theorems",
        "field": str(spec),
        "d": d,
        "assume_wlp": assume_wlp,
        "informational": informational,
        "h_dprime": list(hdd),
        "g_dprime": list(gdd[1:]),
        "g_tilde": list(gt.values),
        "g_tilde_forms_agree": gt.forms_agree,
        "sequences": seqs,
        "holds": ok,
        "passed": ok or informational,
    }


def _no_interior_faces_up_to(K, field, size: int) -> bool:
    from .manifold import interior_faces

    return not any(len(f) <= size for f in interior_faces(K, field))


def _require_boundary(rep):
    if rep.boundary.is_void:
        raise ClosedManifold("this bound is stated for manifolds with boundary")


def check_kuhnel_bounds(K: SimplicialComplex, field=None, assume_wlp: bool = False) -> dict:
    spec = as_field_spec(field)
    d = K.d
    informational = _dimension_gate(d)
    rep = _manifold(K, spec, connected=True, orientable=True)
    _require_boundary(rep)
    b = rep.betti
    n = K.n
    rs = [1] + (list(range(2, d // 2)) if assume_wlp else [])
    items = []
    for r in rs:
        lhs = binom(d, r + 1) * b[r] + binom(d, r) * b[d - r - 1]
        rhs = binom(n - d + r, r + 1)
        item = {
            "r": r,
            "statement": "part1" if r == 1 else "part2",
            "requires_wlp": r > 1,
            "lhs": lhs,
            "rhs": rhs,
            "slack": rhs - lhs,
            "holds": lhs <= rhs,
            "equality": lhs == rhs,
        }
        if lhs == rhs:
            neighborly = K.is_j_neighborly(r + 1)
            no_int = _no_interior_faces_up_to(K, spec, r)
            item["consequence"] = {"neighborly": neighborly, "no_small_interior_faces": no_int}
            item["consequence_ok"] = neighborly and no_int
        items.append(item)
    cor = []
    for r in rs:
        bound = Fraction(binom(n - d + r, r + 1), binom(d, r + 1))
        entry = {
            "r": r,
            "requires_wlp": r > 1,
            "betti": b[r],
            "bound": _frac_json(bound),
            "slack": _frac_json(bound - b[r]),
            "holds": b[r] <= bound,
            "equality": b[r] == bound,
        }
        if r == 1:
            thr = 2 * d - 1
            entry["vertex_threshold"] = {"applies": b[1] != 0, "n": n, "min_n": thr, "holds": b[1] == 0 or n >= thr}
        else:
            thr = 2 * d - r
            entry["vertex_threshold"] = {"applies": b[r] != 0, "n": n, "min_n": thr, "holds": b[r] == 0 or n >= thr}
            both = b[r] != 0 and b[d - r - 1] != 0
            entry["vertex_threshold_both"] = {"applies": both, "n": n, "min_n": thr + 1, "holds": not both or n >= thr + 1}
        cor.append(entry)
    ok = all(it["holds"] and it.get("consequence_ok", True) for it in items)
    ok = ok and all(
        c["holds"] and c["vertex_threshold"]["holds"] and c.get("vertex_threshold_both", {"holds": True})["holds"]
        for c in cor
    )
    return {
        "check": "kuhnel_bounds",
        "field": str(spec),
        "d": d,
        "n": n,
        "assume_wlp": assume_wlp,
        "informational": informational,
        "theorem": items,
        "corollary": cor,
        "holds": ok,
        "passed": ok or informational,
    }


def check_weighted_betti(K: SimplicialComplex, field=None) -> dict:
    spec = as_field_spec(field)
    if K.dim % 2:
        raise OddDimension(f"dimension {K.dim} is odd")
    rep = _manifold(K, spec, connected=True, orientable=True)
    _require_boundary(rep)
    k = K.dim // 2
    n = K.n
    b = rep.betti
    big = binom(n - k - 1, k + 1)
    rhs = Fraction(big, binom(2 * k + 1, k + 1))
    lhs = Fraction(b[k])
    for i in range(2, k + 1):
        coef = Fraction(big, binom(2 * k + 1, k + 1) * binom(n - 2 * k - 1 + i, i))
        lhs += coef * (binom(2 * k, i) * b[i - 1] + binom(2 * k, i - 1) * b[2 * k + 1 - i])
    equality = lhs == rhs
    neighborly = K.is_j_neighborly(k + 1)
    no_int = _no_interior_faces_up_to(K, spec, k)
    char_ok = equality == (neighborly and no_int)
    v1 = {
        "lhs": b[k],
        "rhs": _frac_json(rhs),
        "holds": b[k] <= rhs,
        "vertex_threshold": {"applies": b[k] != 0, "n": n, "min_n": 3 * k + 2, "holds": b[k] == 0 or n >= 3 * k + 2},
    }
    s2 = b[k] + sum(b[i - 1] for i in range(2, k))
    v2 = {"applies": n >= 3 * k + 2, "lhs": s2, "rhs": _frac_json(rhs), "holds": n < 3 * k + 2 or s2 <= rhs}
    s3 = sum(b[i - 1] for i in range(2, k + 2))
    v3 = {"applies": n >= 4 * k + 2, "lhs": s3, "rhs": _frac_json(rhs), "holds": n < 4 * k + 2 or s3 <= rhs}
    ok = lhs <= rhs and char_ok and v1["holds"] and v1["vertex_threshold"]["holds"] and v2["holds"] and v3["holds"]
    return {
        "check": "weighted_betti",
        "field": str(spec),
        "k": k,
        "n": n,
        "lhs": _frac_json(lhs),
        "rhs": _frac_json(rhs),
        "slack": _frac_json(rhs - lhs),
        "holds": lhs <= rhs,
        "equality": equality,
        "equality_condition": {"neighborly": neighborly, "no_small_interior_faces": no_int},
        "equality_characterization_ok": char_ok,
        "corollary": {"part1": v1, "part2": v2, "part3": v3},
        "passed": ok,
    }


def minimal_g2_data(K: SimplicialComplex, field=None) -> dict:
    spec = as_field_spec(field)
    d = K.d
    if d < 4:
        raise DimensionTooSmall("minimal g2 is defined for d >= 4")
    rep = _manifold(K, spec)
    g2 = relative_hg(K, spec)["g"][1]
    rb = relative_betti(K, rep.boundary, spec)
    rhs = binom(d + 1, 2) * (rb[1] - rb[0])
    return {"g2_rel": g2, "rhs": rhs, "minimal": g2 == rhs}


def minimal_g2(K: SimplicialComplex, field=None) -> bool:
    return minimal_g2_data(K, field)["minimal"]


def minimal_g_tilde2(K: SimplicialComplex, field=None) -> bool:
    if K.d < 4:
        raise DimensionTooSmall("minimal g~2 is defined for d >= 4")
    return g_tilde(K, field)[1] == 0


@dataclass(frozen=True)
class PrimeVectors:
    h_prime: tuple[int, ...]
    h_dprime: tuple[int, ...]
    h_bar_dprime: tuple[int, ...]
    g_tilde: tuple[int, ...]
    socle_formula: tuple[int, ...]
    field: FieldSpec

    def to_json(self) -> dict:
        return {
            "h_prime": list(self.h_prime),
            "h_dprime": list(self.h_dprime),
            "h_bar_dprime": list(self.h_bar_dprime),
            "g_tilde": list(self.g_tilde),
            "socle_formula": list(self.socle_formula),
            "field": str(self.field),
        }


def prime_vectors(K: SimplicialComplex, field=None) -> PrimeVectors:
    """All formula-side vectors of the completion of a connected orientable manifold."""
    from .manifold import completion

    spec = as_field_spec(field)
    _manifold(K, spec, connected=True, orientable=True)
    comp = completion(K, spec)
    hp = h_prime(comp.complex, spec, "one_singular", u=comp.cone_vertex)
    return PrimeVectors(
        hp,
        h_dprime_completion(K, spec),
        h_bar_dprime(K, spec),
        g_tilde(K, spec),
        socle_dims_formula(K, spec),
        spec,
    )
