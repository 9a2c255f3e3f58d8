"""Missing facets, connected sums, handle additions and their inverses.

The central construction is :func:`cut_along_missing_facet`.  Given a missing
facet F of a homology manifold K (d >= 4) it works on the completion K^ and
cuts it along the sphere spanned by the boundary of F:

* a *corner* is a pair (facet A of K^, vertex x of F in A);
* corners at the same facet are on the same side, and corners (A, x), (B, x)
  are on the same side when A and B share a ridge through x that is not
  contained in F;
* the resulting two classes of corners are the two sides of the cut.  Each
  vertex of F is duplicated, one copy per side, and each side gets a copy of F
  as a new facet.

If the cut complex has two components the input was a connected sum (the
piece containing the cone vertex is the one with boundary); if it is connected,
the input was a handle addition.  Removing the cone vertex gives the pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, replace, field as dc_field
from itertools import combinations, permutations

from .complex import SimplicialComplex, canon, check_label, simplex_boundary, vertex_key
from .errors import (
    DimensionTooSmall,
    DistanceTooSmall,
    InvalidParams,
    ManifoldViolation,
    NotAFacet,
    NotAManifold,
    NotMissingFacet,
    PieceNotManifold,
    PreconditionFailed,
    UnexpectedBase,
    VertexClash,
)
from .fields import as_field_spec
from .manifold import classify, completion, interior_faces, is_i_stacked

STEP_KINDS = ("base_stacked", "base_no_interior_edges", "connected_sum", "handle_addition", "vertex_split_reversal")


# -- glue maps -------------------------------------------------------------------
@dataclass(frozen=True)
class GlueMap:
    """Bijection ``phi`` from ``source_facet`` onto ``target_facet``."""

    source_facet: tuple
    target_facet: tuple
    bijection: tuple  # ((v, phi(v)), ...) in source order

    @classmethod
    def make(cls, source, target, mapping=None) -> "GlueMap":
        src = canon(source)
        tgt = canon(target)
        if len(src) != len(source) or len(tgt) != len(target) or len(src) != len(tgt):
            raise InvalidParams("glued facets must have the same size")
        if mapping is None:
            pairs = tuple(zip(src, tgt))
        else:
            m = {check_label(k): check_label(v) for k, v in dict(mapping).items()}
            if set(m) != set(src) or sorted(m.values(), key=vertex_key) != list(tgt):
                raise InvalidParams("glue map must be a bijection between the two facets")
            pairs = tuple((v, m[v]) for v in src)
        return cls(src, tgt, pairs)

    @property
    def phi(self) -> dict:
        return dict(self.bijection)

    def to_json(self) -> dict:
        return {"source": list(self.source_facet), "target": list(self.target_facet),
                "phi": {a: b for a, b in self.bijection}}


def _as_glue(glue, default_target=None) -> GlueMap:
    if isinstance(glue, GlueMap):
        return glue
    if isinstance(glue, dict):
        return GlueMap.make(glue["source"], glue["target"], glue.get("phi"))
    src, tgt = glue[0], glue[1]
    return GlueMap.make(src, tgt, glue[2] if len(glue) > 2 else None)


def _interior_vertices(K: SimplicialComplex, spec) -> set:
    rep = classify(K, spec)
    if not rep.is_manifold:
        raise ManifoldViolation(f"input is {rep.status}, not a homology manifold")
    return set(K.vertices) - set(rep.boundary.vertices)


def _check_interior(glue: GlueMap, int1: set, int2: set) -> None:
    for v, w in glue.bijection:
        if v not in int1 and w not in int2:
            raise ManifoldViolation(f"neither {v} nor {w} is an interior vertex")


# -- orientation ---------------------------------------------------------------------
def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def coherent_orientation(K: SimplicialComplex) -> dict | None:
    """Signs on facets (label tuples) making K coherently oriented, or None.

    Only ridges lying in exactly two facets impose conditions, so this works
    for pseudomanifolds with or without boundary.
    """
    facets = [f for f in K._ifacets]
    by_ridge: dict[tuple, list] = {}
    for a, f in enumerate(facets):
        for i in range(len(f)):
            by_ridge.setdefault(f[:i] + f[i + 1 :], []).append((a, i))
    sign: dict[int, int] = {}
    for start in range(len(facets)):
        if start in sign:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            a = stack.pop()
            f = facets[a]
            for i in range(len(f)):
                inc = by_ridge[f[:i] + f[i + 1 :]]
                if len(inc) != 2:
                    continue
                (b, j) = inc[1] if inc[0][0] == a else inc[0]
                want = -sign[a] * (-1) ** i * (-1) ** j
                if b in sign:
                    if sign[b] != want:
                        return None
                else:
                    sign[b] = want
                    stack.append(b)
    return {K.labels(facets[a]): s for a, s in sign.items()}


def orientation_compatible(K: SimplicialComplex, glue: GlueMap) -> bool | None:
    """Does a handle along ``glue`` keep K orientable?  None if K is not orientable."""
    orient = coherent_orientation(K)
    if orient is None:
        return None
    s1 = orient[glue.source_facet]
    s2 = orient[glue.target_facet]
    tgt_pos = {v: i for i, v in enumerate(glue.target_facet)}
    pi = [tgt_pos[w] for _, w in glue.bijection]
    return s1 * _perm_sign(pi) == -s2


# -- missing facets ----------------------------------------------------------------
def missing_facets(K: SimplicialComplex) -> list[tuple]:
    """All d-sets not in K whose proper subsets are faces, sorted lexicographically."""
    if K.is_void:
        return []
    d = K.d
    if d < 1:
        return []
    ridges = K._face_set(d - 1)
    faces_d = K._face_set(d)
    found = set()
    for G in K._faces_of_size(d - 1):
        gs = set(G)
        for v in range(K.n):
            if v in gs:
                continue
            F = tuple(sorted(G + (v,)))
            if F in found or F in faces_d:
                continue
            if all(F[:i] + F[i + 1 :] in ridges for i in range(d)):
                found.add(F)
    out = [K.labels(F) for F in found]
    out.sort(key=lambda f: [vertex_key(v) for v in f])
    return out


def is_missing_facet(K: SimplicialComplex, F) -> bool:
    Fc = canon(F)
    d = K.d
    if len(Fc) != d or Fc in K:
        return False
    return all(Fc[:i] + Fc[i + 1 :] in K for i in range(d))


# -- sums and handles ------------------------------------------------------------------
def connected_sum(K1: SimplicialComplex, K2: SimplicialComplex, glue, field=None, check: bool = True) -> SimplicialComplex:
    """Identify ``glue.source_facet`` of K1 with ``glue.target_facet`` of K2 and drop it.

    Vertices of K2 in the target facet take the labels of their preimages.
    """
    g = _as_glue(glue)
    if g.source_facet not in set(K1.facets):
        raise NotAFacet(f"{list(g.source_facet)} is not a facet of the first complex")
    if g.target_facet not in set(K2.facets):
        raise NotAFacet(f"{list(g.target_facet)} is not a facet of the second complex")
    if set(K1.vertices) & set(K2.vertices):
        raise VertexClash("the two complexes share vertex labels")
    if check:
        spec = as_field_spec(field)
        _check_interior(g, _interior_vertices(K1, spec), _interior_vertices(K2, spec))
    inv = {w: v for v, w in g.bijection}
    K2r = K2.relabel(lambda x: inv.get(x, x))
    facets = [f for f in K1.facets if f != g.source_facet] + [f for f in K2r.facets if f != g.source_facet]
    return SimplicialComplex(facets)


def handle_addition(K: SimplicialComplex, glue, field=None, check: bool = True) -> SimplicialComplex:
    """Identify two facets of one component of K through ``glue`` and drop them."""
    g = _as_glue(glue)
    fs = set(K.facets)
    for F in (g.source_facet, g.target_facet):
        if F not in fs:
            raise NotAFacet(f"{list(F)} is not a facet")
    for v, w in g.bijection:
        dist = K.graph_distance(v, w)
        if dist == float("inf"):
            raise PreconditionFailed("the glued facets lie in different components; use connected_sum")
        if dist < 3:
            raise DistanceTooSmall(f"graph distance between {v} and {w} is {dist} < 3")
    if check:
        inner = _interior_vertices(K, as_field_spec(field))
        _check_interior(g, inner, inner)
    inv = {w: v for v, w in g.bijection}
    facets = [f for f in K.relabel(lambda x: inv.get(x, x)).facets if f != g.source_facet]
    return SimplicialComplex(facets)


# -- cutting --------------------------------------------------------------------------
@dataclass(frozen=True)
class DecompositionStep:
    kind: str
    witness: tuple | None
    pieces: tuple
    glue: GlueMap | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witness": list(self.witness) if self.witness is not None else None,
            "pieces": [{"f_vector": list(p.f_vector()), "facets": [list(f) for f in p.facets]} for p in self.pieces],
            "glue": self.glue.to_json() if self.glue else None,
            "note": self.note,
        }


def _fresh(label: str, taken: set) -> str:
    new = label + "'"
    while new in taken:
        new += "'"
    return new


def cut_along_missing_facet(K: SimplicialComplex, F, field=None) -> DecompositionStep:
    spec = as_field_spec(field)
    d = K.d
    if d < 4:
        raise DimensionTooSmall("cutting along missing facets needs d >= 4")
    Fc = canon(F)
    if not is_missing_facet(K, Fc):
        raise NotMissingFacet(f"{list(Fc)} is not a missing facet")
    rep = classify(K, spec)
    if not rep.is_manifold:
        raise NotAManifold(f"complex is {rep.status}")
    comp = completion(K, spec)
    hat, v0 = comp.complex, comp.cone_vertex
    Fs = set(Fc)
    facets = hat.facets

    # union-find over corners
    corners = [(a, x) for a, f in enumerate(facets) for x in f if x in Fs]
    cid = {c: i for i, c in enumerate(corners)}
    parent = list(range(len(corners)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    by_ridge: dict[tuple, list[int]] = {}
    for a, f in enumerate(facets):
        here = [cid[(a, x)] for x in f if x in Fs]
        for c in here[1:]:
            union(here[0], c)
        for i in range(len(f)):
            r = f[:i] + f[i + 1 :]
            if not set(r) <= Fs:
                by_ridge.setdefault(r, []).append(a)
    for r, inc in by_ridge.items():
        if len(inc) != 2:
            raise PieceNotManifold(f"ridge {list(r)} of the completion is not in exactly two facets")
        a, b = inc
        for x in r:
            if x in Fs:
                union(cid[(a, x)], cid[(b, x)])
    roots = sorted({find(i) for i in range(len(corners))}, key=lambda r: min(i for i in range(len(corners)) if find(i) == r))
    if len(roots) != 2:
        raise PieceNotManifold(f"the boundary of {list(Fc)} has {len(roots)} sides, expected 2")
    side_of_facet = {}
    for (a, x), i in cid.items():
        side_of_facet[a] = roots.index(find(i))
    taken = set(hat.vertices)
    primed = {}
    for x in Fc:
        primed[x] = _fresh(x, taken)
        taken.add(primed[x])

    def build(orig_side: int):
        out = []
        for a, f in enumerate(facets):
            s = side_of_facet.get(a)
            if s is None or s == orig_side:
                out.append(f)
            else:
                out.append(tuple(primed[x] if x in Fs else x for x in f))
        out.append(Fc)
        out.append(tuple(primed[x] for x in Fc))
        return SimplicialComplex(out)

    cut = build(0)
    parts = cut.components()
    if len(parts) == 2:
        if v0 is not None:
            main = next(p for p in parts if v0 in p._index)
        else:
            main = max(parts, key=lambda p: (len(p.facets), [[vertex_key(v) for v in f] for f in p.facets]))
        if primed[Fc[0]] in main._index:
            cut = build(1)
            parts = cut.components()
            main = next(p for p in parts if Fc[0] in p._index)
        other = next(p for p in parts if p is not main)
        if v0 is not None:
            main = SimplicialComplex([f for f in main.facets if v0 not in f])
        pieces = (main, other)
        glue = GlueMap.make(Fc, [primed[x] for x in Fc], {x: primed[x] for x in Fc})
        kind = "connected_sum"
    elif len(parts) == 1:
        piece = parts[0]
        if v0 is not None:
            piece = SimplicialComplex([f for f in piece.facets if v0 not in f])
        pieces = (piece,)
        glue = GlueMap.make(Fc, [primed[x] for x in Fc], {x: primed[x] for x in Fc})
        kind = "handle_addition"
    else:
        raise PieceNotManifold(f"cutting produced {len(parts)} components")
    for p in pieces:
        prep = classify(p, spec)
        if not prep.is_manifold:
            raise PieceNotManifold(f"a piece of the cut is {prep.status}: {prep.reason}")
    return DecompositionStep(kind, Fc, pieces, glue)


# -- decompositions -----------------------------------------------------------------
def simplex_link_vertex(K: SimplicialComplex):
    """Least vertex whose link is the boundary of a (d-1)-simplex, or None."""
    d = K.d
    for v in sorted(K.vertices, key=vertex_key):
        L = K.link([v])
        if L.n == d and len(L.facets) == d and L.is_pure() and L.d == d - 1:
            W = canon(L.vertices)
            if W not in K:
                return v, W
    return None


def contract_vertex(K: SimplicialComplex, v, W) -> tuple[SimplicialComplex, SimplicialComplex]:
    """Replace the star of v (link = boundary of simplex W) by the facet W."""
    rest = SimplicialComplex([f for f in K.facets if v not in f] + [tuple(W)])
    summand = SimplicialComplex([[x for x in tuple(W) + (v,) if x != y] for y in tuple(W) + (v,)])
    return rest, summand


def is_simplex_boundary(K: SimplicialComplex) -> bool:
    return not K.is_void and K.n == K.d + 1 and len(K.facets) == K.d + 1 and K.is_pure()


def verify_walkup(K: SimplicialComplex, field=None) -> int:
    """Split a closed complex into simplex boundaries by contractions and cuts.

    Returns the number of simplex boundaries reached; raises UnexpectedBase if
    some piece is neither a simplex boundary nor splittable.
    """
    spec = as_field_spec(field)
    total = 0
    todo = list(K.components())
    while todo:
        G = todo.pop()
        if is_simplex_boundary(G):
            total += 1
            continue
        hit = simplex_link_vertex(G)
        if hit is not None:
            rest, _ = contract_vertex(G, *hit)
            total += 1
            todo.append(rest)
            continue
        mf = missing_facets(G)
        if not mf:
            raise UnexpectedBase("closed piece has no missing facet and is not a simplex boundary")
        step = cut_along_missing_facet(G, mf[0], spec)
        todo.extend(step.pieces)
    return total


def _no_interior_edges(K: SimplicialComplex, spec) -> bool:
    return all(len(f) > 2 for f in interior_faces(K, spec))


def _is_stacked_manifold(K: SimplicialComplex, spec) -> bool:
    if not is_i_stacked(K, 1, spec):
        return False
    for v in K.vertices:
        L = K.link([v])
        rep = classify(L, spec)
        if rep.status != "ball" or not is_i_stacked(L, 1, spec):
            return False
    return True


def _decompose(K: SimplicialComplex, field, mode: str) -> list[DecompositionStep]:
    from .enumerative import minimal_g2, minimal_g_tilde2

    spec = as_field_spec(field)
    if K.d < 4:
        raise DimensionTooSmall("decompositions need d >= 4")
    rep = classify(K, spec)
    if not rep.is_manifold or not rep.has_boundary:
        raise PreconditionFailed(f"expected a homology manifold with boundary, got {rep.status}")
    if not rep.connected:
        raise PreconditionFailed("complex is not connected")
    if mode == "gtilde2":
        if not rep.orientable:
            raise PreconditionFailed("complex is not orientable")
        minimal, label = minimal_g_tilde2, "minimal g~2"
    else:
        minimal, label = minimal_g2, "minimal g2"
    if not minimal(K, spec):
        raise PreconditionFailed(f"complex does not have {label}")

    def verify(C, what):
        r = classify(C, spec)
        if not r.is_manifold or not r.has_boundary or not r.connected:
            raise PieceNotManifold(f"{what} is {r.status} (connected={r.connected})")
        if not minimal(C, spec):
            raise PreconditionFailed(f"{what} lost {label}")

    def verify_summand(G):
        r = classify(G, spec)
        if not r.is_closed:
            raise PieceNotManifold(f"closed summand is {r.status}")
        if mode == "gtilde2":
            if not minimal_g_tilde2(G, spec):
                raise UnexpectedBase("closed summand does not have minimal g~2")
        else:
            if not minimal(G, spec):
                raise UnexpectedBase("closed summand does not have minimal g2")
            verify_walkup(G, spec)
        b1 = r.betti[1]
        return f"closed summand {r.status}" + (f" with first Betti number {b1}" if b1 else "")

    steps: list[DecompositionStep] = []
    cur = K
    while True:
        hit = simplex_link_vertex(cur)
        if hit is not None:
            v, W = hit
            rest, summand = contract_vertex(cur, v, W)
            steps.append(DecompositionStep("vertex_split_reversal", W, (rest, summand),
                                           note=f"link of {v} is a simplex boundary"))
            verify(rest, "contracted complex")
            cur = rest
            continue
        mf = missing_facets(cur)
        if not mf:
            break
        step = cut_along_missing_facet(cur, mf[0], spec)
        if step.kind == "connected_sum":
            step = replace(step, note=verify_summand(step.pieces[1]))
        verify(step.pieces[0], "remaining piece")
        steps.append(step)
        cur = step.pieces[0]
    if mode == "gtilde2":
        if not _is_stacked_manifold(cur, spec):
            raise UnexpectedBase("base complex is not a stacked homology manifold")
        steps.append(DecompositionStep("base_stacked", None, (cur,)))
    else:
        if not _no_interior_edges(cur, spec):
            raise UnexpectedBase("base complex has interior edges")
        steps.append(DecompositionStep("base_no_interior_edges", None, (cur,)))
    return steps


def decompose_minimal_g2(K: SimplicialComplex, field=None) -> list[DecompositionStep]:
    """Peel off sums and handles until a base without interior edges remains.

    Steps are listed in the order they are undone, from K down to the base.
    """
    return _decompose(K, field, "g2")


def decompose_minimal_g_tilde2(K: SimplicialComplex, field=None) -> list[DecompositionStep]:
    """As :func:`decompose_minimal_g2`, ending in a stacked homology manifold."""
    return _decompose(K, field, "gtilde2")


def move_count(steps) -> int:
    return sum(1 for s in steps if not s.kind.startswith("base"))


# -- subdivision and handles -----------------------------------------------------------
def face_label(face) -> str:
    return "{" + ",".join(face) + "}"


def barycentric_subdivision(K: SimplicialComplex, times: int = 1) -> SimplicialComplex:
    if times < 1:
        raise InvalidParams("times must be at least 1")
    cur = K
    for _ in range(times):
        facets = []
        for G in cur.facets:
            for perm in permutations(G):
                chain = [face_label(canon(perm[: i + 1])) for i in range(len(perm))]
                facets.append(chain)
        cur = SimplicialComplex(facets)
    return cur


@dataclass(frozen=True)
class HandleSequence:
    indices: tuple
    faces: tuple = dc_field(default=(), compare=False)
    note: str = "valid under PL hypothesis"

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "faces": [list(f) for f in self.faces], "note": self.note}


def pl_handle_sequence(K: SimplicialComplex, field=None) -> HandleSequence:
    """Handle indices read off the interior faces, ordered by codimension."""
    d = K.d
    faces = sorted(interior_faces(K, field), key=lambda f: (d - len(f), [vertex_key(v) for v in f]))
    return HandleSequence(tuple(d - len(f) for f in faces), tuple(faces))


def handle_stages(K: SimplicialComplex, field=None) -> list[SimplicialComplex]:
    """The complexes X_j: unions of stars of face-vertices in the second subdivision."""
    seq = pl_handle_sequence(K, field)
    sd2 = barycentric_subdivision(K, 2)
    stages = []
    acc: list = []
    for f in seq.faces:
        v = face_label((face_label(f),))
        acc.extend(sd2.star([v]).facets)
        stages.append(SimplicialComplex(acc))
    return stages
