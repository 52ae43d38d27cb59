"""The model simplicial complex of a stabilized presentation.

The 1-skeleton is a wedge of 3-edge circles, one per generator. Each relator
``r_j h_j`` gets a triangulated annulus whose lower boundary runs along the
wedge spelling the word, closed off by a cone on the upper boundary; each
relator ``h_j`` gets the single triangle bounded by the circle ``h_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import SimplicialComplex2
from .presentation import Presentation, Syllable, Word

__all__ = [
    "Circle",
    "Gadget",
    "ModelStructure",
    "ModelBuilder",
    "build_wedge",
    "build_annulus",
    "build_model_complex",
    "stabilized_shape",
]


@dataclass(frozen=True)
class Circle:
    """Simplicial circle ``O -> p -> q -> O`` of one generator."""

    generator: int
    kind: str  # "generator" or "stabilizer"
    vertices: tuple[int, int, int]

    @property
    def far_edge(self) -> tuple[int, int]:
        """The edge not incident to the wedge point."""
        return self.vertices[1], self.vertices[2]

    def walk(self, sign: int) -> list[int]:
        """Start vertices of the three directed edges of one traversal."""
        o, p, q = self.vertices
        return [o, p, q] if sign > 0 else [o, q, p]


@dataclass
class Gadget:
    """Annulus + cone killing the relator ``r_j h_j``.

    ``lower`` is ``w_1 .. w_n`` (wedge vertex ids, rotated so that the last
    rectangle ``Q_n`` sits over the far edge of ``h_j``), ``upper`` is
    ``v_1 .. v_n``.
    """

    index: int
    stabilizer: int
    word: Word
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    apex: int | None = None
    h_disk: tuple[int, int, int] | None = None

    @property
    def rect_count(self) -> int:
        return len(self.lower)

    def rectangles(self) -> list[tuple[int, int, int, int]]:
        """``Q_l`` as ``(w_l, w_{l+1}, v_{l+1}, v_l)``."""
        n = self.rect_count
        w, v = self.lower, self.upper
        return [(w[l], w[(l + 1) % n], v[(l + 1) % n], v[l]) for l in range(n)]

    def annulus_triangles(self) -> list[tuple[int, int, int]]:
        """``t'_l = v_l w_l w_{l+1}`` and ``t_l = v_l w_{l+1} v_{l+1}`` for each l."""
        n = self.rect_count
        w, v = self.lower, self.upper
        out = []
        for l in range(n):
            out.append((v[l], w[l], w[(l + 1) % n]))
            out.append((v[l], w[(l + 1) % n], v[(l + 1) % n]))
        return out

    def cone_triangles(self) -> list[tuple[int, int, int]]:
        n = self.rect_count
        if self.apex is None:
            return []
        return [(self.apex, self.upper[l], self.upper[(l + 1) % n]) for l in range(n)]


@dataclass
class ModelStructure:
    wedge_point: int
    circles: list[Circle]
    gadgets: list[Gadget] = field(default_factory=list)
    generator_count: int = 0  # generators of the presentation before stabilization

    def e_edge(self, gadget: Gadget) -> tuple[int, int]:
        return self.circles[gadget.stabilizer].far_edge

    def to_json(self) -> dict:
        return {
            "wedge_point": self.wedge_point,
            "generator_count": self.generator_count,
            "circles": [{"generator": c.generator, "kind": c.kind, "vertices": list(c.vertices)}
                        for c in self.circles],
            "gadgets": [{
                "index": g.index,
                "stabilizer": g.stabilizer,
                "word": g.word.pairs(),
                "lower": list(g.lower),
                "upper": list(g.upper),
                "apex": g.apex,
                "h_disk": list(g.h_disk) if g.h_disk else None,
            } for g in self.gadgets],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ModelStructure":
        circles = [Circle(c["generator"], c["kind"], tuple(c["vertices"])) for c in data["circles"]]
        gadgets = [Gadget(g["index"], g["stabilizer"], Word.of(*map(tuple, g["word"])),
                          tuple(g["lower"]), tuple(g["upper"]), g["apex"],
                          tuple(g["h_disk"]) if g.get("h_disk") else None)
                   for g in data["gadgets"]]
        return cls(data["wedge_point"], circles, gadgets, data.get("generator_count", 0))


class ModelBuilder:
    """Incremental construction: wedge first, then one gadget per relator."""

    def __init__(self, kinds: list[str]):
        self.vertex_count = 1
        self.edges: list[tuple[int, int]] = []
        self._edge_set: set[tuple[int, int]] = set()
        self.triangles: list[tuple[int, int, int]] = []
        self.labels: dict[tuple[int, ...], str] = {(0,): "wedge"}
        circles = []
        for i, kind in enumerate(kinds):
            p, q = self._new_vertex("wedge"), self._new_vertex("wedge")
            for e in ((0, p), (p, q), (0, q)):
                self._add_edge(e, "wedge")
            circles.append(Circle(i, kind, (0, p, q)))
        self.structure = ModelStructure(0, circles, [], kinds.count("generator"))

    def _new_vertex(self, label: str) -> int:
        v = self.vertex_count
        self.vertex_count += 1
        self.labels[(v,)] = label
        return v

    def _add_edge(self, e, label: str):
        e = (min(e), max(e))
        if e in self._edge_set:
            return
        self._edge_set.add(e)
        self.edges.append(e)
        self.labels[e] = label

    def _add_triangle(self, t, label: str):
        t = tuple(sorted(t))
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            if e not in self._edge_set:
                raise AssertionError(f"edge {e} of triangle {t} missing")
        self.triangles.append(t)
        self.labels[t] = label

    def lower_walk(self, word: Word, stabilizer: int) -> list[int]:
        """``w_1 .. w_n`` for the closed wedge path spelling ``word``."""
        syl = word.syllables
        if not syl or syl[-1] != Syllable(stabilizer, 1):
            raise ValueError("word must end with the stabilizer letter (apply stabilize first)")
        if any(s.generator == stabilizer for s in syl[:-1]):
            raise ValueError("stabilizer letter must occur exactly once")
        seq: list[int] = []
        for s in syl:
            circle = self.structure.circles[s.generator]
            for _ in range(abs(s.exponent)):
                seq += circle.walk(s.exponent)
        # seq ends with O, a, b where (a, b) is the far edge of h_j; rotate so w_1 = b
        return [seq[-1]] + seq[:-1]

    def attach_annulus(self, word: Word, stabilizer: int) -> Gadget:
        if self.structure.circles[stabilizer].kind != "stabilizer":
            raise ValueError(f"generator {stabilizer} is not a stabilizer")
        w = self.lower_walk(word, stabilizer)
        n = len(w)
        j = len(self.structure.gadgets) + 1
        tag = f"annulus:{j}"
        v = [self._new_vertex(tag) for _ in range(n)]
        for l in range(n):
            nxt = (l + 1) % n
            assert (min(w[l], w[nxt]), max(w[l], w[nxt])) in self._edge_set
            self._add_edge((v[l], w[l]), tag)
            self._add_edge((v[l], w[nxt]), tag)
            self._add_edge((v[l], v[nxt]), tag)
        g = Gadget(j, stabilizer, word, tuple(w), tuple(v))
        for t in g.annulus_triangles():
            self._add_triangle(t, tag)
        self.structure.gadgets.append(g)
        return g

    def cone_upper_boundary(self, gadget: Gadget) -> int:
        tag = f"cone:{gadget.index}"
        apex = self._new_vertex(tag)
        for u in gadget.upper:
            self._add_edge((apex, u), tag)
        gadget.apex = apex
        for t in gadget.cone_triangles():
            self._add_triangle(t, tag)
        return apex

    def add_h_disk(self, stabilizer: int, gadget: Gadget | None = None) -> tuple[int, int, int]:
        circle = self.structure.circles[stabilizer]
        j = gadget.index if gadget is not None else stabilizer
        t = tuple(sorted(circle.vertices))
        self._add_triangle(t, f"h_disk:{j}")
        if gadget is not None:
            gadget.h_disk = t
        return t

    def complex(self) -> SimplicialComplex2:
        return SimplicialComplex2(self.vertex_count, tuple(self.edges),
                                  tuple(self.triangles), dict(self.labels))


def build_wedge(gen_count: int, stabilizers: int = 0) -> tuple[SimplicialComplex2, ModelStructure]:
    """Wedge of ``gen_count + stabilizers`` triangles sharing vertex 0."""
    b = ModelBuilder(["generator"] * gen_count + ["stabilizer"] * stabilizers)
    return b.complex(), b.structure


def build_annulus(rect_count: int) -> SimplicialComplex2:
    """A free-standing triangulated annulus of ``rect_count`` rectangles.

    Lower vertices are ``0 .. n-1``, upper ``n .. 2n-1``.
    """
    n = rect_count
    if n < 3:
        raise ValueError("an annulus needs at least 3 rectangles to be simplicial")
    edges, tris = [], []
    for l in range(n):
        nxt = (l + 1) % n
        wl, wn, vl, vn = l, nxt, n + l, n + nxt
        edges += [(wl, wn), (vl, wl), (vl, wn), (vl, vn)]
        tris += [(vl, wl, wn), (vl, wn, vn)]
    return SimplicialComplex2(2 * n, tuple(edges), tuple(tris))


def stabilized_shape(P: Presentation) -> tuple[int, int]:
    """``(n, m)`` such that ``P`` is the stabilization of an n-generator,
    m-relator presentation; raises ``ValueError`` otherwise."""
    if P.m % 2:
        raise ValueError("a stabilized presentation has an even number of relators")
    m = P.m // 2
    n = P.n - m
    if n < 0:
        raise ValueError("fewer generators than stabilizers")
    for j in range(m):
        h = n + j
        if P.relators[m + j].pairs() != [(h, 1)]:
            raise ValueError(f"relator {m + j} is not the stabilizer h_{j + 1}")
        r = P.relators[j].syllables
        if not r or r[-1] != Syllable(h, 1) or any(s.generator >= n for s in r[:-1]):
            raise ValueError(f"relator {j} is not of the form r_j h_j")
    return n, m


def build_model_complex(P_stab: Presentation) -> tuple[SimplicialComplex2, ModelStructure]:
    """Wedge -> annuli -> cones -> h-disks for a stabilized presentation."""
    n, m = stabilized_shape(P_stab)
    b = ModelBuilder(["generator"] * n + ["stabilizer"] * m)
    for j in range(m):
        g = b.attach_annulus(P_stab.relators[j], n + j)
        b.cone_upper_boundary(g)
        b.add_h_disk(n + j, g)
    return b.complex(), b.structure
