"""Finite abstract simplicial complexes stored by their facets.

Vertex labels are non-empty strings without whitespace (integers are accepted
and converted).  Labels are ordered "naturally": numeric labels by value and
before any non-numeric label, which are ordered as strings.  Faces are sorted
tuples of labels in that order, and facets are kept in lexicographic order, so
every derived listing is deterministic.

Internally each complex interns its labels to ``0..n-1`` and stores facets as
sorted integer tuples; faces of a given size are enumerated lazily and cached.
"""
from __future__ import annotations

import functools
import io
import os
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import ApexCollision, EmptyInput, FaceNotInComplex, MalformedToken

Face = tuple  # tuple[str, ...]


def vertex_key(label: str):
    s = str(label)
    if s.isdigit():
        return (0, int(s), s)
    if s[:1] == "-" and s[1:].isdigit():
        return (0, int(s), s)
    return (1, 0, s)


def check_label(token) -> str:
    if isinstance(token, bool):
        raise MalformedToken(f"bad vertex token {token!r}")
    if isinstance(token, int):
        return str(token)
    if not isinstance(token, str) or not token or any(ch.isspace() for ch in token):
        raise MalformedToken(f"bad vertex token {token!r}")
    return token


def canon(face: Iterable) -> Face:
    """Sorted, duplicate-free label tuple."""
    return tuple(sorted({check_label(v) for v in face}, key=vertex_key))


def _maximal(sets: list[frozenset]) -> list[frozenset]:
    uniq = sorted(set(sets), key=len, reverse=True)
    if not uniq:
        return []
    if len(uniq[0]) == len(uniq[-1]):
        return uniq
    kept: list[frozenset] = []
    for s in uniq:
        if not any(s < t for t in kept if len(t) > len(s)):
            kept.append(s)
    return kept


class SimplicialComplex:
    """An immutable simplicial complex.

    ``SimplicialComplex([])`` is the void complex (no faces at all) and
    ``SimplicialComplex([()])`` is ``{∅}``.  Use :meth:`from_facets` for
    validated user input.
    """

    __slots__ = ("vertices", "_index", "_ifacets", "_cache", "__weakref__")

    def __init__(self, facets: Iterable[Iterable] = ()):
        sets = [frozenset(check_label(v) for v in f) for f in facets]
        sets = _maximal(sets)
        verts = sorted(set().union(*sets) if sets else set(), key=vertex_key)
        self.vertices: tuple[str, ...] = tuple(verts)
        self._index = {v: i for i, v in enumerate(verts)}
        ifs = sorted(tuple(sorted(self._index[v] for v in s)) for s in sets)
        self._ifacets: tuple[tuple[int, ...], ...] = tuple(ifs)
        self._cache: dict = {}

    # -- construction ----------------------------------------------------------
    @classmethod
    def from_facets(cls, facet_list: Sequence[Sequence]) -> "SimplicialComplex":
        facet_list = list(facet_list)
        if not facet_list:
            raise EmptyInput("no facets given")
        for f in facet_list:
            if isinstance(f, (str, bytes)) or not hasattr(f, "__iter__"):
                raise MalformedToken(f"facet {f!r} is not a list of vertex tokens")
            f = list(f)
            if not f:
                raise EmptyInput("empty facet")
            for v in f:
                check_label(v)
        return cls(facet_list)

    @classmethod
    def void(cls) -> "SimplicialComplex":
        return cls(())

    @classmethod
    def simplex(cls, labels: Iterable) -> "SimplicialComplex":
        return cls([list(labels)])

    @classmethod
    def _from_ids(cls, ifacets, labels) -> "SimplicialComplex":
        return cls([[labels[i] for i in f] for f in ifacets])

    # -- basic data ----------------------------------------------------------
    @property
    def facets(self) -> list[Face]:
        return [tuple(self.vertices[i] for i in f) for f in self._ifacets]

    @property
    def is_void(self) -> bool:
        return not self._ifacets

    @property
    def dim(self) -> int:
        if not self._ifacets:
            return -1
        return max(len(f) for f in self._ifacets) - 1

    @property
    def d(self) -> int:
        """dim + 1"""
        return self.dim + 1

    @property
    def n(self) -> int:
        return len(self.vertices)

    def is_pure(self) -> bool:
        sizes = {len(f) for f in self._ifacets}
        return len(sizes) <= 1

    def __len__(self) -> int:
        return len(self._ifacets)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self._ifacets == other._ifacets

    def __hash__(self) -> int:
        return hash((self.vertices, self._ifacets))

    def __repr__(self) -> str:
        if self.is_void:
            return "SimplicialComplex(void)"
        body = " ".join("".join(f) if all(len(v) == 1 for v in f) else "{" + ",".join(f) + "}" for f in self.facets[:8])
        more = "" if len(self) <= 8 else f" ... ({len(self)} facets)"
        return f"SimplicialComplex(dim={self.dim}, n={self.n}: {body}{more})"

    # -- faces ---------------------------------------------------------------
    def _faces_of_size(self, k: int) -> tuple[tuple[int, ...], ...]:
        key = ("faces", k)
        got = self._cache.get(key)
        if got is None:
            if k == 0:
                got = ((),) if self._ifacets else ()
            else:
                acc = set()
                for f in self._ifacets:
                    if len(f) >= k:
                        acc.update(combinations(f, k))
                got = tuple(sorted(acc))
            self._cache[key] = got
        return got

    def _face_set(self, k: int) -> frozenset:
        key = ("faceset", k)
        got = self._cache.get(key)
        if got is None:
            got = frozenset(self._faces_of_size(k))
            self._cache[key] = got
        return got

    def faces(self, dim: int) -> list[Face]:
        """All faces of the given dimension (``dim = -1`` gives ``[()]``)."""
        if dim < -1:
            return []
        return [tuple(self.vertices[i] for i in f) for f in self._faces_of_size(dim + 1)]

    def all_faces(self) -> list[Face]:
        out = []
        for k in range(-1, self.dim + 1):
            out.extend(self.faces(k))
        return out

    def ids(self, face: Iterable) -> tuple[int, ...] | None:
        """Interned ids of a face, or ``None`` if a label is not a vertex."""
        try:
            return tuple(sorted(self._index[check_label(v)] for v in face))
        except KeyError:
            return None

    def labels(self, ids: Iterable[int]) -> Face:
        return tuple(self.vertices[i] for i in sorted(ids))

    def __contains__(self, face) -> bool:
        t = self.ids(face)
        if t is None:
            return False
        if len(set(t)) != len(t):
            return False
        return t in self._face_set(len(t))

    def f_vector(self) -> tuple[int, ...]:
        """``(f_{-1}, f_0, ..., f_{dim})``; the void complex gives ``()``."""
        if self.is_void:
            return ()
        return tuple(len(self._faces_of_size(k)) for k in range(0, self.dim + 2))

    # -- substructures -------------------------------------------------------
    def _require_face(self, face) -> tuple[int, ...]:
        t = self.ids(face)
        if t is None or t not in self._face_set(len(t)):
            raise FaceNotInComplex(f"{canon(face)} is not a face")
        return t

    def link(self, face=()) -> "SimplicialComplex":
        t = set(self._require_face(face))
        out = [[self.vertices[i] for i in f if i not in t] for f in self._ifacets if t.issubset(f)]
        return SimplicialComplex(out)

    def star(self, face=()) -> "SimplicialComplex":
        t = set(self._require_face(face))
        return SimplicialComplex([[self.vertices[i] for i in f] for f in self._ifacets if t.issubset(f)])

    def costar(self, face=()) -> "SimplicialComplex":
        """Faces not containing ``face`` (any vertex set, not necessarily a face)."""
        t = set()
        for v in face:
            lab = check_label(v)
            if lab not in self._index:
                return self  # no face contains a non-vertex
            t.add(self._index[lab])
        if not t:
            return SimplicialComplex.void()
        out = []
        for f in self._ifacets:
            if t.issubset(f):
                for v in t:
                    out.append([self.vertices[i] for i in f if i != v])
            else:
                out.append([self.vertices[i] for i in f])
        return SimplicialComplex(out)

    def substructure(self, face, kind: str) -> "SimplicialComplex":
        if kind == "link":
            return self.link(face)
        if kind == "star":
            return self.star(face)
        if kind == "costar":
            return self.costar(face)
        raise ValueError(f"unknown substructure kind {kind!r}")

    def restrict(self, vertex_subset: Iterable) -> "SimplicialComplex":
        """Induced subcomplex on a vertex subset."""
        keep = {check_label(v) for v in vertex_subset}
        sets = [frozenset(v for v in f if v in keep) for f in self.facets]
        return SimplicialComplex([s for s in sets if s] or ([()] if not self.is_void else []))

    def cone(self, apex) -> "SimplicialComplex":
        apex = check_label(apex)
        if apex in self._index:
            raise ApexCollision(f"apex {apex!r} is already a vertex")
        return SimplicialComplex([list(f) + [apex] for f in self.facets])

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self.facets + other.facets)

    def relabel(self, mapping) -> "SimplicialComplex":
        """Apply a vertex map (dict or callable); unmapped vertices keep their label."""
        if callable(mapping):
            fn = mapping
        else:
            fn = lambda v: mapping.get(v, v)  # noqa: E731
        return SimplicialComplex([[check_label(fn(v)) for v in f] for f in self.facets])

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(f in other for f in self.facets)

    def is_j_neighborly(self, j: int) -> bool:
        if j < 1:
            raise ValueError("j must be >= 1")
        if j > self.n:
            return True
        return len(self._faces_of_size(j)) == comb(self.n, j)

    # -- graph structure -----------------------------------------------------
    def adjacency(self) -> list[set[int]]:
        got = self._cache.get("adj")
        if got is None:
            got = [set() for _ in range(self.n)]
            for a, b in self._faces_of_size(2):
                got[a].add(b)
                got[b].add(a)
            self._cache["adj"] = got
        return got

    def graph_distance(self, u, v) -> float:
        """Edge-graph distance between two vertices (``inf`` if disconnected)."""
        a = self._index[check_label(u)]
        b = self._index[check_label(v)]
        if a == b:
            return 0
        adj = self.adjacency()
        seen = {a}
        frontier = [a]
        dist = 0
        while frontier:
            dist += 1
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y == b:
                        return dist
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return float("inf")

    def components(self) -> list["SimplicialComplex"]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in self._ifacets:
            for v in f[1:]:
                ra, rb = find(f[0]), find(v)
                if ra != rb:
                    parent[ra] = rb
        groups: dict[int, list] = {}
        for f in self._ifacets:
            if f:
                groups.setdefault(find(f[0]), []).append(f)
        out = [SimplicialComplex._from_ids(fs, self.vertices) for fs in groups.values()]
        out.sort(key=lambda c: [vertex_key(v) for v in c.vertices])
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- canonical text ------------------------------------------------------
    def to_sc(self) -> str:
        return "".join(" ".join(f) + "\n" for f in self.facets)


@functools.lru_cache(maxsize=None)
def simplex_boundary(d: int, offset: int = 1) -> SimplicialComplex:
    """Boundary of the d-simplex on vertices ``offset..offset+d``."""
    verts = list(range(offset, offset + d + 1))
    return SimplicialComplex([[v for v in verts if v != w] for w in verts])


def parse_sc(text: str) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(io.StringIO(text), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        facets.append(line.split())
    if not facets:
        raise EmptyInput("no facets in input")
    return SimplicialComplex.from_facets(facets)


def read_sc(path: str | os.PathLike) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_sc(fh.read())


def write_sc(K: SimplicialComplex, path: str | os.PathLike, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        fh.write(K.to_sc())


def from_facets(facet_list) -> SimplicialComplex:
    return SimplicialComplex.from_facets(facet_list)


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return K.f_vector()


def substructure(K: SimplicialComplex, face, kind: str) -> SimplicialComplex:
    return K.substructure(face, kind)


def cone(K: SimplicialComplex, apex) -> SimplicialComplex:
    return K.cone(apex)


def is_j_neighborly(K: SimplicialComplex, j: int) -> bool:
    return K.is_j_neighborly(j)
