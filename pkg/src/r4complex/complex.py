"""Abstract simplicial 2-complexes.

Simplices are tuples of vertex ids in ascending order; that order is also the
orientation used by the boundary matrices.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .presentation import Presentation, Syllable, Word, free_reduce

__all__ = [
    "SimplicialComplex2",
    "ValidationReport",
    "CWData",
    "validate",
    "euler_characteristic",
    "boundary_matrices",
    "spanning_tree",
    "pi1_presentation",
    "contract_tree",
    "complex_to_json",
    "complex_from_json",
]


def _canon(simplex) -> tuple[int, ...]:
    return tuple(sorted(int(v) for v in simplex))


@dataclass(frozen=True)
class SimplicialComplex2:
    """Vertices ``0 .. vertex_count-1`` plus edge and triangle lists.

    Duplicate simplices passed to the constructor are dropped (first
    occurrence wins) and remembered in ``duplicates`` so that
    :func:`validate` can report them.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()
    triangles: tuple[tuple[int, int, int], ...] = ()
    labels: dict = field(default_factory=dict, compare=False)
    duplicates: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        dups = list(self.duplicates)
        out = {}
        for name, size in (("edges", 2), ("triangles", 3)):
            seen: dict[tuple[int, ...], None] = {}
            for s in getattr(self, name):
                c = _canon(s)
                if len(c) != size:
                    raise ValueError(f"{name[:-1]} {s} does not have {size} vertices")
                if c in seen:
                    dups.append(c)
                else:
                    seen[c] = None
            out[name] = tuple(seen)
        object.__setattr__(self, "edges", out["edges"])
        object.__setattr__(self, "triangles", out["triangles"])
        object.__setattr__(self, "duplicates", tuple(dups))
        labels = {}
        for k, v in dict(self.labels).items():
            labels[(int(k),) if isinstance(k, (int, np.integer)) else _canon(k)] = v
        object.__setattr__(self, "labels", labels)

    @property
    def V(self) -> int:
        return self.vertex_count

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def T(self) -> int:
        return len(self.triangles)

    @property
    def simplex_count(self) -> int:
        return self.V + self.E + self.T

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for a in adj:
            a.sort()
        return adj

    def maximal_simplices(self) -> list[tuple[int, ...]]:
        """Triangles, edges in no triangle, and vertices in no edge."""
        in_tri = {e for t in self.triangles for e in combinations(t, 2)}
        in_edge = {v for e in self.edges for v in e}
        out: list[tuple[int, ...]] = list(self.triangles)
        out += [e for e in self.edges if e not in in_tri]
        out += [(v,) for v in range(self.vertex_count) if v not in in_edge]
        return out

    def label(self, simplex) -> str:
        return self.labels.get(_canon(simplex), "plain")


@dataclass
class ValidationReport:
    closure_violations: list[str] = field(default_factory=list)
    duplicates: list[tuple[int, ...]] = field(default_factory=list)
    isolated_vertices: list[int] = field(default_factory=list)
    out_of_range: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.closure_violations or self.duplicates
                    or self.isolated_vertices or self.out_of_range)

    def __len__(self) -> int:
        return len(self.lines())

    def lines(self) -> list[str]:
        out = list(self.closure_violations)
        out += [f"duplicate simplex {d}" for d in self.duplicates]
        out += [f"isolated vertex {v}" for v in self.isolated_vertices]
        out += [f"vertex id out of range in {s}" for s in self.out_of_range]
        return out


def validate(K: SimplicialComplex2) -> ValidationReport:
    """Closure, duplicate, id-range and isolated-vertex checks.

    A complex consisting of a single vertex is not reported as isolated.
    """
    rep = ValidationReport(duplicates=list(K.duplicates))
    n = K.vertex_count
    for s in K.edges + K.triangles:
        if s[0] < 0 or s[-1] >= n or len(set(s)) != len(s):
            rep.out_of_range.append(s)
    edges = set(K.edges)
    for t in K.triangles:
        for e in combinations(t, 2):
            if e not in edges:
                rep.closure_violations.append(f"edge {e} of triangle {t} missing")
    if n > 1:
        used = {v for e in K.edges for v in e}
        rep.isolated_vertices = [v for v in range(n) if v not in used]
    return rep


def euler_characteristic(K: SimplicialComplex2) -> int:
    return K.V - K.E + K.T


def boundary_matrices(K: SimplicialComplex2) -> tuple[np.ndarray, np.ndarray]:
    """Integer boundary matrices d1 (V x E) and d2 (E x T).

    >>> d1, d2 = boundary_matrices(SimplicialComplex2(3, [(0, 1), (0, 2), (1, 2)], [(0, 1, 2)]))
    >>> d2[:, 0].tolist()
    [1, -1, 1]
    """
    d1 = np.zeros((K.V, K.E), dtype=object)
    for j, (u, v) in enumerate(K.edges):
        d1[u, j] -= 1
        d1[v, j] += 1
    idx = K.edge_index()
    d2 = np.zeros((K.E, K.T), dtype=object)
    for j, (a, b, c) in enumerate(K.triangles):
        d2[idx[(b, c)], j] += 1
        d2[idx[(a, c)], j] -= 1
        d2[idx[(a, b)], j] += 1
    return d1, d2


def spanning_tree(K: SimplicialComplex2, basepoint: int = 0) -> set[tuple[int, int]]:
    """BFS tree from ``basepoint``, visiting neighbours by ascending id."""
    if K.vertex_count == 0:
        raise ValueError("empty complex")
    adj = K.neighbours()
    seen = {basepoint}
    tree = set()
    queue = deque([basepoint])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                tree.add((min(u, v), max(u, v)))
                queue.append(v)
    if len(seen) != K.vertex_count:
        raise ValueError(f"complex is disconnected ({len(seen)} of {K.vertex_count} vertices reachable)")
    return tree


@dataclass(frozen=True)
class CWData:
    """One 0-cell, loops ``one_cells`` and an attaching word per 2-cell."""

    one_cells: tuple[tuple[int, int], ...]
    attaching_words: tuple[Word, ...]

    def loop_names(self) -> tuple[str, ...]:
        return tuple(f"c{u}_{v}" for u, v in self.one_cells)

    def presentation(self) -> Presentation:
        return Presentation(self.loop_names(), self.attaching_words)


def contract_tree(K: SimplicialComplex2, basepoint: int = 0) -> CWData:
    """Collapse a spanning tree; every triangle becomes a word of length <= 3."""
    tree = spanning_tree(K, basepoint)
    loops = tuple(e for e in K.edges if e not in tree)
    gen = {e: i for i, e in enumerate(loops)}
    words = []
    for a, b, c in K.triangles:
        syl = []
        for u, v in ((a, b), (b, c), (c, a)):
            e = (min(u, v), max(u, v))
            if e in gen:
                syl.append(Syllable(gen[e], 1 if u < v else -1))
        words.append(Word(tuple(syl)))
    return CWData(loops, tuple(words))


def pi1_presentation(K: SimplicialComplex2, basepoint: int = 0) -> Presentation:
    """Edge-path presentation of the fundamental group at ``basepoint``."""
    cw = contract_tree(K, basepoint)
    return Presentation(cw.loop_names(), tuple(free_reduce(w) for w in cw.attaching_words))


# -- JSON ----------------------------------------------------------------------

def _label_key(s: tuple[int, ...]) -> str:
    return ",".join(map(str, s))


def complex_to_json(K: SimplicialComplex2) -> dict:
    return {
        "vertices": K.vertex_count,
        "edges": [list(e) for e in K.edges],
        "triangles": [list(t) for t in K.triangles],
        "labels": {_label_key(k): v for k, v in sorted(K.labels.items())},
    }


def complex_from_json(data: dict | str) -> SimplicialComplex2:
    if isinstance(data, str):
        data = json.loads(data)
    labels = {}
    for k, v in data.get("labels", {}).items():
        labels[tuple(int(x) for x in k.split(","))] = v
    return SimplicialComplex2(
        int(data["vertices"]),
        tuple(tuple(e) for e in data.get("edges", [])),
        tuple(tuple(t) for t in data.get("triangles", [])),
        labels,
    )
