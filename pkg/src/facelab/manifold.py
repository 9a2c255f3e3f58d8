"""Homology-manifold recognition, boundary complexes and completions.

Recognition is homological only: a link "is a sphere" when its reduced Betti
numbers are those of a sphere of the right dimension, and "is a ball" when they
all vanish.  No PL or shellability test is attempted.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

from .complex import SimplicialComplex, check_label
from .errors import ClosedManifold, EmptyInput, InvalidParams, NotAManifold
from .fields import FieldSpec, as_field_spec
from .homology import BettiTable, betti, relative_betti

CONE_VERTEX = "@v0"

MANIFOLD_STATUSES = ("closed_manifold", "manifold_with_boundary", "sphere", "ball")


def homology_type(L: SimplicialComplex, field=None) -> str:
    """'sphere', 'ball' (acyclic) or 'other', judged by reduced Betti numbers."""
    b = betti(L, field)
    if L.is_void:
        return "other"
    vals = (b.minus_one,) + tuple(b.values)
    if not any(vals):
        return "ball"
    if vals[-1] == 1 and not any(vals[:-1]):
        return "sphere"
    return "other"


@dataclass(frozen=True)
class ManifoldReport:
    status: str
    field: FieldSpec
    dim: int
    boundary: SimplicialComplex
    connected: bool
    orientable: bool | None
    betti: BettiTable
    singular_vertices: tuple = ()
    reason: str = ""
    link_types: dict = dc_field(default_factory=dict, compare=False, repr=False)

    @property
    def is_manifold(self) -> bool:
        return self.status in MANIFOLD_STATUSES

    @property
    def has_boundary(self) -> bool:
        return self.status in ("manifold_with_boundary", "ball")

    @property
    def is_closed(self) -> bool:
        return self.status in ("closed_manifold", "sphere")

    @property
    def manifold_class(self) -> str | None:
        if not self.is_manifold:
            return None
        return "manifold_with_boundary" if self.has_boundary else "closed_manifold"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "manifold_class": self.manifold_class,
            "dim": self.dim,
            "field": str(self.field),
            "connected": self.connected,
            "orientable": self.orientable,
            "betti": self.betti.to_json(),
            "boundary_facets": [list(f) for f in self.boundary.facets],
            "singular_vertices": list(self.singular_vertices),
            "reason": self.reason,
        }


def _link_ids(K: SimplicialComplex, face: tuple[int, ...]) -> SimplicialComplex:
    fs = set(face)
    return SimplicialComplex([[K.vertices[i] for i in f if i not in fs] for f in K._ifacets if fs.issubset(f)])


@functools.lru_cache(maxsize=2048)
def _classify(K: SimplicialComplex, p: int, spec: FieldSpec) -> ManifoldReport:
    if K.is_void:
        raise EmptyInput("cannot classify the void complex")
    b = betti(K, spec)
    connected = K.is_connected()
    dim = K.dim
    if not K.is_pure():
        return ManifoldReport("not_pure", spec, dim, SimplicialComplex.void(), connected, None, b,
                              reason="facets of different dimensions")
    d = K.d
    types: dict[tuple, str] = {}
    bad_faces = []
    for size in range(1, d):
        for face in K._faces_of_size(size):
            t = homology_type(_link_ids(K, face), spec)
            types[K.labels(face)] = t
            if t == "other":
                bad_faces.append(face)
    singular = tuple(K.vertices[f[0]] for f in bad_faces if len(f) == 1)
    if bad_faces:
        first = K.labels(bad_faces[0])
        return ManifoldReport("not_manifold", spec, dim, SimplicialComplex.void(), connected, None, b,
                              singular, reason=f"link of {list(first)} is neither a homology sphere nor a ball",
                              link_types=types)
    bfaces = [f for f, t in types.items() if t == "ball"]
    if not bfaces:
        orient = relative_betti(K, SimplicialComplex.void(), spec)[d - 1] == len(K.components())
        status = "closed_manifold"
        if connected and b.minus_one == 0 and all(x == 0 for x in b.values[:-1]) and b[d - 1] == 1:
            status = "sphere"
        return ManifoldReport(status, spec, dim, SimplicialComplex.void(), connected, orient, b, link_types=types)
    bd = SimplicialComplex(bfaces)
    reason = ""
    if not bd.is_pure() or bd.dim != d - 2:
        reason = "boundary faces do not form a pure (d-2)-dimensional complex"
    elif sum(bd.f_vector()[1:]) != len(bfaces):
        reason = "boundary faces are not closed under inclusion"
    else:
        brep = _classify(bd, p, spec)
        if not brep.is_closed:
            reason = f"boundary complex is {brep.status}, not a closed homology manifold"
    if reason:
        return ManifoldReport("not_manifold", spec, dim, SimplicialComplex.void(), connected, None, b,
                              reason=reason, link_types=types)
    rel = relative_betti(K, bd, spec)
    orient = rel[d - 1] == len(K.components())
    status = "manifold_with_boundary"
    if connected and b.minus_one == 0 and not any(b.values):
        brep = _classify(bd, p, spec)
        if brep.status == "sphere":
            status = "ball"
    return ManifoldReport(status, spec, dim, bd, connected, orient, b, link_types=types)


def classify(K: SimplicialComplex, field=None) -> ManifoldReport:
    spec = as_field_spec(field)
    return _classify(K, spec.characteristic, spec)


def _require_manifold(K, field) -> ManifoldReport:
    rep = classify(K, field)
    if not rep.is_manifold:
        raise NotAManifold(f"complex is {rep.status}: {rep.reason}")
    return rep


def boundary_complex(K: SimplicialComplex, field=None) -> SimplicialComplex:
    return _require_manifold(K, field).boundary


@dataclass(frozen=True)
class Completion:
    complex: SimplicialComplex
    cone_vertex: str | None
    base: SimplicialComplex

    def to_json(self) -> dict:
        return {
            "cone_vertex": self.cone_vertex,
            "facets": [list(f) for f in self.complex.facets],
            "f_vector": list(self.complex.f_vector()),
        }


def fresh_label(K: SimplicialComplex, base: str = CONE_VERTEX) -> str:
    label = base
    k = 0
    while label in K._index:
        k += 1
        label = f"{base}_{k}"
    return label


def completion(K: SimplicialComplex, field=None) -> Completion:
    rep = _require_manifold(K, field)
    if rep.boundary.is_void:
        return Completion(K, None, K)
    v0 = fresh_label(K)
    hat = SimplicialComplex(K.facets + [list(f) + [v0] for f in rep.boundary.facets])
    return Completion(hat, v0, K)


def interior_faces(K: SimplicialComplex, field=None) -> list[tuple]:
    """Nonempty faces of K that are not boundary faces, by size then lexicographically."""
    rep = _require_manifold(K, field)
    bd = rep.boundary
    out = []
    for size in range(1, K.d + 1):
        for f in K.faces(size - 1):
            if f not in bd:
                out.append(f)
    return out


def relative_f_vector(K: SimplicialComplex, field=None) -> tuple[int, ...]:
    """``(f_{-1}, ..., f_{d-1})`` of the pair (K, ∂K)."""
    rep = _require_manifold(K, field)
    fK = K.f_vector()
    fB = rep.boundary.f_vector()
    return tuple(fK[s] - (fB[s] if s < len(fB) else 0) for s in range(len(fK)))


def is_i_stacked(K: SimplicialComplex, i: int, field=None) -> bool:
    rep = _require_manifold(K, field)
    if rep.boundary.is_void:
        raise ClosedManifold("stackedness of closed manifolds is not decided directly")
    d = K.d
    if not 0 <= i <= d - 1:
        raise InvalidParams(f"i must lie in 0..{d - 1}")
    return all(d - len(f) < i + 1 for f in interior_faces(K, field))


def max_interior_codim(K: SimplicialComplex, field=None) -> int:
    return max(K.d - len(f) for f in interior_faces(K, field))


def singular_vertices(K: SimplicialComplex, field=None) -> list[str]:
    return [v for v in K.vertices if homology_type(K.link([v]), field) == "other"]


def is_cone_vertex_label(label) -> bool:
    return check_label(label).startswith(CONE_VERTEX)
