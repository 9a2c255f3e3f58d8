"""Seeded generators and bundled example complexes.

Randomness contract: every generator takes an integer ``seed`` and draws only
from ``numpy.random.default_rng(seed)``, so the same arguments give the same
complex.  Vertices are the integers 1..n unless stated otherwise.
"""
from __future__ import annotations

import json
from itertools import combinations, permutations

import numpy as np

from .complex import SimplicialComplex, canon, simplex_boundary, vertex_key
from .errors import DistanceTooSmall, InvalidParams
from .fields import as_field_spec
from .manifold import classify
from .surgery import GlueMap, connected_sum, handle_addition, orientation_compatible

GENERATOR_KINDS = ("simplex_boundary", "stacked_sphere", "stacked_ball", "join_ball", "walkup", "kuhnel_d3_mobius")

BUNDLED = {
    # 2-neighborly Moebius strip with 5 vertices
    "m5": [[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 1], [5, 1, 2]],
    # 6-vertex triangulated annulus, non-neighborly
    "a6": [[1, 2, 4], [2, 4, 5], [2, 3, 5], [3, 5, 6], [1, 3, 6], [1, 4, 6]],
    # two tetrahedra sharing a triangle
    "b3": [[1, 2, 3, 4], [2, 3, 4, 5]],
    "octahedron": [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 2], [6, 2, 3], [6, 3, 4], [6, 4, 5], [6, 5, 2]],
}


def bundled(name: str) -> SimplicialComplex:
    key = name.lower()
    if key in BUNDLED:
        return SimplicialComplex.from_facets(BUNDLED[key])
    if key.startswith("boundary_simplex_") or key.startswith("simplex_boundary_"):
        return simplex_boundary(int(key.rsplit("_", 1)[1]))
    raise InvalidParams(f"unknown bundled complex {name!r}; known: {sorted(BUNDLED)}")


def kuhnel_d3_mobius() -> SimplicialComplex:
    return bundled("m5")


def _boundary_of(simplices) -> SimplicialComplex:
    count: dict[tuple, int] = {}
    for s in simplices:
        for f in combinations(sorted(s), len(s) - 1):
            count[f] = count.get(f, 0) + 1
    return SimplicialComplex([f for f, c in count.items() if c == 1])


def stacked_sphere(d: int, n: int, seed: int = 0, shape: str = "random") -> SimplicialComplex:
    """Stacked (d-1)-sphere on n vertices.

    ``random`` stacks a new vertex onto a uniformly chosen facet each time;
    ``long`` is the boundary of the path of d-simplices {i, ..., i+d}.
    """
    if d < 2 or n < d + 1:
        raise InvalidParams("need d >= 2 and n >= d + 1")
    if shape == "long":
        return _boundary_of([range(i, i + d + 1) for i in range(1, n - d + 1)])
    if shape != "random":
        raise InvalidParams(f"unknown shape {shape!r}")
    rng = np.random.default_rng(seed)
    facets = [tuple(f) for f in simplex_boundary(d).facets]
    facets = [tuple(int(v) for v in f) for f in facets]
    for v in range(d + 2, n + 1):
        i = int(rng.integers(len(facets)))
        F = facets.pop(i)
        facets.extend(tuple(x for x in F if x != y) + (v,) for y in F)
    return SimplicialComplex(facets)


def stacked_ball(d: int, k: int, seed: int = 0, shape: str = "random") -> SimplicialComplex:
    """Stacked (d-1)-ball with k facets (tree-like gluing along ridges)."""
    if d < 2 or k < 1:
        raise InvalidParams("need d >= 2 and k >= 1")
    if shape == "long":
        return SimplicialComplex([range(i, i + d) for i in range(1, k + 1)])
    if shape != "random":
        raise InvalidParams(f"unknown shape {shape!r}")
    rng = np.random.default_rng(seed)
    facets = [tuple(range(1, d + 1))]
    count: dict[tuple, int] = {}
    for r in combinations(facets[0], d - 1):
        count[r] = 1
    for v in range(d + 1, d + k):
        free = sorted(r for r, c in count.items() if c == 1)
        R = free[int(rng.integers(len(free)))]
        F = R + (v,)
        facets.append(F)
        for r in combinations(F, d - 1):
            count[r] = count.get(r, 0) + 1
    return SimplicialComplex(facets)


def join_ball(d: int, k: int) -> SimplicialComplex:
    """Boundary of a k-simplex joined with a (d-k-1)-simplex: a ball whose
    smallest interior face has codimension k (so it is k- but not (k-1)-stacked)."""
    if not 1 <= k <= d - 1:
        raise InvalidParams("need 1 <= k <= d - 1")
    sph = [f for f in combinations(range(1, k + 2), k)]
    top = tuple(range(k + 2, d + 2))
    return SimplicialComplex([f + top for f in sph])


def _int_labels(K: SimplicialComplex) -> int:
    return max((int(v) for v in K.vertices if v.lstrip("-").isdigit()), default=0)


def compact_labels(K: SimplicialComplex) -> SimplicialComplex:
    order = sorted(K.vertices, key=vertex_key)
    mapping = {v: str(i + 1) for i, v in enumerate(order)}
    return K.relabel(mapping)


def _near(K: SimplicialComplex) -> dict:
    """Vertices at graph distance <= 2 from each vertex (itself included)."""
    adj = K.adjacency()
    out = {}
    for a in range(K.n):
        s = {a} | adj[a]
        for b in adj[a]:
            s |= adj[b]
        out[K.vertices[a]] = {K.vertices[x] for x in s}
    return out


def find_handle(K: SimplicialComplex, rng, field=None, orientable: bool = True, max_pairs: int = 20000) -> GlueMap:
    """Search (in seeded random order) for a glue map admissible for a handle."""
    spec = as_field_spec(field)
    rep = classify(K, spec)
    interior = set(K.vertices) - set(rep.boundary.vertices)
    near = _near(K)
    facets = K.facets
    pairs = [(i, j) for i in range(len(facets)) for j in range(len(facets)) if i != j]
    order = rng.permutation(len(pairs))
    for t in order[:max_pairs]:
        F1, F2 = facets[pairs[int(t)][0]], facets[pairs[int(t)][1]]
        if not any(v in interior for v in F1) and not any(w in interior for w in F2):
            continue
        ok = {v: [w for w in F2 if w not in near[v] and (v in interior or w in interior)] for v in F1}
        if any(not c for c in ok.values()):
            continue
        for perm in permutations(F2):
            if all(w in ok[v] for v, w in zip(F1, perm)):
                g = GlueMap.make(F1, F2, dict(zip(F1, perm)))
                if not orientable or orientation_compatible(K, g):
                    return g
    raise DistanceTooSmall("no pair of facets admits a handle (distance >= 3 and interior vertices)")


def _build(spec_obj: dict, seed: int) -> SimplicialComplex:
    kind = spec_obj.get("kind")
    d = spec_obj.get("d")
    s = spec_obj.get("seed", seed)
    if kind == "simplex_boundary":
        return simplex_boundary(d)
    if kind == "stacked_sphere":
        return stacked_sphere(d, spec_obj["n"], s, spec_obj.get("shape", "random"))
    if kind == "stacked_ball":
        return stacked_ball(d, spec_obj["k"], s, spec_obj.get("shape", "random"))
    if kind == "join_ball":
        return join_ball(d, spec_obj["k"])
    if kind == "bundled":
        return bundled(spec_obj["name"])
    if kind == "facets":
        return SimplicialComplex.from_facets(spec_obj["facets"])
    raise InvalidParams(f"unknown complex kind {kind!r} in script")


def walkup(script, seed: int = 0, field=None) -> SimplicialComplex:
    """Run a build script of connected sums and handle additions.

    ``script`` is a dict (or JSON text)::

        {"base": {"kind": "stacked_ball", "d": 4, "k": 3},
         "ops": [{"op": "sum", "with": {"kind": "stacked_sphere", "d": 4, "n": 7, "shape": "long"}},
                 {"op": "handle"}]}

    ``sum`` may give ``facet`` (in the current complex) and ``target`` (in the
    summand); missing choices are drawn with the seed.  ``handle`` may give
    ``facets: [F1, F2]`` and ``phi``; otherwise an admissible, orientation
    compatible pair is searched.  Labels are compacted to 1..n at the end.
    """
    if isinstance(script, str):
        script = json.loads(script)
    if not isinstance(script, dict) or "base" not in script:
        raise InvalidParams("script needs a 'base' entry")
    spec = as_field_spec(field)
    rng = np.random.default_rng(script.get("seed", seed))
    K = _build(script["base"], seed)
    for op in script.get("ops", []):
        kind = op.get("op")
        if kind == "sum":
            other = _build(op["with"], int(rng.integers(2**31)))
            off = _int_labels(K)
            other = other.relabel(lambda x: str(int(x) + off) if x.lstrip("-").isdigit() else x + "_s")
            rep = classify(K, spec)
            interior = set(K.vertices) - set(rep.boundary.vertices)
            orep = classify(other, spec)
            o_int = set(other.vertices) - set(orep.boundary.vertices)
            if "facet" in op:
                F1 = canon(op["facet"])
            else:
                cands = K.facets if orep.is_closed else [f for f in K.facets if set(f) <= interior]
                if not cands:
                    raise InvalidParams("no facet admits this connected sum")
                F1 = cands[int(rng.integers(len(cands)))]
            if "target" in op:
                F2 = canon(str(int(v) + off) for v in op["target"])
            else:
                c2 = other.facets if set(F1) <= interior else [f for f in other.facets if set(f) <= o_int]
                if not c2:
                    raise InvalidParams("no summand facet admits this connected sum")
                F2 = c2[int(rng.integers(len(c2)))]
            K = connected_sum(K, other, GlueMap.make(F1, F2), spec)
        elif kind == "handle":
            if "facets" in op:
                F1, F2 = op["facets"]
                g = GlueMap.make(F1, F2, op.get("phi"))
            else:
                g = find_handle(K, rng, spec, orientable=op.get("orientable", True))
            K = handle_addition(K, g, spec)
        else:
            raise InvalidParams(f"unknown op {kind!r}")
    return compact_labels(K)


def random_script(d: int, seed: int, n_ops: int = 2, handles: bool = True) -> dict:
    """A build script: stacked ball, sphere summands, optionally one handle.

    A handle needs a facet made of interior vertices far from the rest, so it
    is only added after a long stacked sphere has been summed in.
    """
    rng = np.random.default_rng(seed)
    base = {"kind": "stacked_ball", "d": d, "k": int(rng.integers(2, 2 + 2 * d)),
            "shape": "long" if handles else "random", "seed": int(rng.integers(1000))}
    ops = []
    want_handle = handles and n_ops >= 2 and bool(rng.integers(2))
    for i in range(n_ops - (1 if want_handle else 0)):
        if want_handle and i == 0:
            ops.append({"op": "sum", "with": {"kind": "stacked_sphere", "d": d, "n": 3 * d + 2, "shape": "long"}})
        elif rng.integers(2):
            ops.append({"op": "sum", "with": {"kind": "simplex_boundary", "d": d}})
        else:
            ops.append({"op": "sum", "with": {"kind": "stacked_sphere", "d": d, "n": int(d + 1 + rng.integers(1, 4)),
                                              "seed": int(rng.integers(1000))}})
    if want_handle:
        ops.append({"op": "handle"})
    return {"base": base, "ops": ops, "seed": int(rng.integers(2**31))}


def generate(kind: str, params: dict | None = None, seed: int = 0) -> SimplicialComplex:
    p = dict(params or {})
    if kind == "simplex_boundary":
        return simplex_boundary(int(p["d"]))
    if kind == "stacked_sphere":
        return stacked_sphere(int(p["d"]), int(p["n"]), seed, p.get("shape", "random"))
    if kind == "stacked_ball":
        return stacked_ball(int(p["d"]), int(p["k"]), seed, p.get("shape", "random"))
    if kind == "join_ball":
        return join_ball(int(p["d"]), int(p["k"]))
    if kind == "walkup":
        return walkup(p["script"], seed)
    if kind == "kuhnel_d3_mobius":
        return kuhnel_d3_mobius()
    raise InvalidParams(f"unknown generator {kind!r}; choose from {GENERATOR_KINDS}")
