"""Exact rational realization of model complexes in R^4.

Coordinates are ``(x1, x2, x3, x4)``. The wedge lives in the plane
``Pi = {x3 = x4 = 0}``; ``Lambda = {x4 = H}`` is the parallel 3-plane. The
3-planes through ``Pi`` form a pencil indexed by the angle ``gamma`` of their
normal direction in the ``(x3, x4)`` plane, and we index it by the rational
parameter ``t = tan(gamma / 2)``, so that direction(t) is a rational unit
vector. Gadget ``j`` sweeps the closed pencil interval ``I_j``; cones sit at
height ``2 H`` inside the same interval.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complex import SimplicialComplex2, complex_from_json, complex_to_json, contract_tree, spanning_tree
from .exact import (Point, in_closed_triangle_2d, q, qstr, segment_segment_dist2_2d,
                    sqrt_floor)
from .model import Gadget, ModelStructure, build_model_complex
from .presentation import (Presentation, binary_compress, pad_relations, presentation_from_json,
                           presentation_to_json, stabilize)

__all__ = [
    "H", "T_STAR", "RHO_PRIME", "APEX_HEIGHT",
    "RealizedComplex",
    "direction",
    "cot_of",
    "layout_wedge",
    "assign_intervals",
    "place_annulus",
    "place_cone",
    "realize",
    "realize_homotopy_type",
    "realized_to_json",
    "realized_from_json",
    "to_off",
]

H = Fraction(1)
T_STAR = Fraction(1, 2)  # sin(theta*) = 4/5
RHO_PRIME = H / Fraction(4, 5)  # distance Pi -> Lambda inside the slice at theta*
APEX_HEIGHT = 2 * H

# wedge radii: generator circles reach radius 1, stabilizer circles radius 4
GENERATOR_RADIUS = Fraction(1)
STABILIZER_RADIUS = Fraction(4)


def direction(t: Fraction) -> tuple[Fraction, Fraction]:
    """Rational unit vector ``(cos g, sin g)`` for ``t = tan(g/2)``."""
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def cot_of(t: Fraction) -> Fraction:
    """``cot(g)`` for ``t = tan(g/2)``; strictly decreasing on ``(0, 1]``."""
    return (1 - t * t) / (2 * t)


@dataclass(frozen=True)
class RealizedComplex:
    complex: SimplicialComplex2
    structure: ModelStructure
    coords: tuple[Point, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]
    parameters: tuple[tuple[Fraction, ...], ...]
    delta_lb: Fraction
    presentation: Presentation | None = None

    @property
    def vertex_count(self) -> int:
        return self.complex.vertex_count


# -- wedge -------------------------------------------------------------------

def _ray_params(count: int) -> list[Fraction]:
    # evenly spaced tan-half-angles in (-1, 1): directions in (-pi/2, pi/2)
    return [Fraction(2 * k + 1 - count, count) for k in range(count)]


def layout_wedge(struct: ModelStructure) -> tuple[dict[int, Point], Fraction]:
    """Place the wedge in ``Pi`` and certify its separation constant.

    Circle ``i`` is the thin triangle between two consecutive rays of a
    rational fan; stabilizer circles reach further out than generator
    circles. Returns the coordinates and a rational ``delta_lb`` with
    ``delta_lb**2`` at most the squared distance from the far edges of the
    stabilizer circles to the wedge point and the generator circles.
    """
    zero = Fraction(0)
    coords: dict[int, Point] = {struct.wedge_point: (zero,) * 4}
    u = _ray_params(2 * len(struct.circles))
    for i, c in enumerate(struct.circles):
        r = STABILIZER_RADIUS if c.kind == "stabilizer" else GENERATOR_RADIUS
        _, p, qv = c.vertices
        for v, t in ((p, u[2 * i]), (qv, u[2 * i + 1])):
            dx, dy = direction(t)
            coords[v] = (r * dx, r * dy, zero, zero)

    flat = {v: x[:2] for v, x in coords.items()}
    origin = flat[struct.wedge_point]
    gen_edges = []
    for c in struct.circles:
        if c.kind == "generator":
            o, a, b = c.vertices
            gen_edges += [(o, a), (a, b), (b, o)]
    d2 = None
    for c in struct.circles:
        if c.kind != "stabilizer":
            continue
        a, b = (flat[v] for v in c.far_edge)
        cands = [segment_segment_dist2_2d(a, b, origin, origin)]
        cands += [segment_segment_dist2_2d(a, b, flat[x], flat[y]) for x, y in gen_edges]
        m = min(cands)
        d2 = m if d2 is None else min(d2, m)
        # the h-disk must not swallow any other wedge vertex
        tri = [flat[v] for v in c.vertices]
        for v, pt in flat.items():
            if v not in c.vertices and in_closed_triangle_2d(pt, *tri):
                raise AssertionError(f"wedge vertex {v} lies in the disk of circle {c.generator}")
    if d2 is None:
        return coords, Fraction(0)
    delta = sqrt_floor(d2)
    if delta <= 0:
        raise AssertionError("wedge layout has no positive separation")
    return coords, delta


# -- pencil intervals ------------------------------------------------------------

def width_bound(delta_lb: Fraction) -> Fraction:
    """Strict upper bound on 2 * width(I_j): delta_lb / (4 rho')."""
    return delta_lb / (4 * RHO_PRIME)


def assign_intervals(m: int, delta_lb: Fraction) -> list[tuple[Fraction, Fraction]]:
    """``m`` disjoint closed t-intervals in ``(T_STAR, 1)``, separated by gaps
    at least as wide as the intervals, with ``2 * width < delta_lb / (4 rho')``."""
    if m < 1:
        return []
    if delta_lb <= 0:
        raise ValueError("delta_lb must be positive")
    w = min(width_bound(delta_lb) / 4, (1 - T_STAR) / (2 * (2 * m + 1)))
    return [(T_STAR + (2 * j - 1) * w, T_STAR + 2 * j * w) for j in range(1, m + 1)]


def place_annulus(gadget: Gadget, interval: tuple[Fraction, Fraction],
                  coords: dict[int, Point]) -> tuple[Fraction, ...]:
    """Lift each ``w_l`` to ``v_l`` on ``Lambda`` inside pencil slice ``t_l``.

    The ``t_l`` subdivide the open interval uniformly, so they increase
    strictly with ``l``. Fills ``coords`` and returns the parameters.
    """
    lo, hi = interval
    n = gadget.rect_count
    step = (hi - lo) / (n + 1)
    ts = tuple(lo + (l + 1) * step for l in range(n))
    for w, v, t in zip(gadget.lower, gadget.upper, ts):
        x1, x2 = coords[w][:2]
        coords[v] = (x1, x2, H * cot_of(t), H)
    return ts


def place_cone(gadget: Gadget, interval: tuple[Fraction, Fraction],
               coords: dict[int, Point]) -> Point:
    """Apex above the centroid of the upper circle, at height ``2H``, in the
    middle slice of the interval."""
    lo, hi = interval
    mid = (lo + hi) / 2
    n = len(gadget.upper)
    cx = sum(coords[v][0] for v in gadget.upper) / n
    cy = sum(coords[v][1] for v in gadget.upper) / n
    apex = (cx, cy, APEX_HEIGHT * cot_of(mid), APEX_HEIGHT)
    coords[gadget.apex] = apex
    return apex


# -- pipeline ------------------------------------------------------------------

def realize_stabilized(P_stab: Presentation) -> RealizedComplex:
    K, struct = build_model_complex(P_stab)
    coords, delta = layout_wedge(struct)
    intervals = assign_intervals(len(struct.gadgets), delta) if struct.gadgets else []
    params = []
    for g, I in zip(struct.gadgets, intervals):
        params.append(place_annulus(g, I, coords))
        place_cone(g, I, coords)
    if len(coords) != K.vertex_count:
        raise AssertionError("some vertices were not placed")
    return RealizedComplex(K, struct, tuple(coords[v] for v in range(K.vertex_count)),
                           tuple(intervals), tuple(params), delta, P_stab)


def realize(P: Presentation, compress: bool = False) -> RealizedComplex:
    """pad -> (binary_compress) -> stabilize -> model complex -> coordinates."""
    P = pad_relations(P)
    if compress:
        P = pad_relations(binary_compress(P))
    return realize_stabilized(stabilize(P))


def realize_homotopy_type(K: SimplicialComplex2, compress: bool = False) -> RealizedComplex:
    """Realize a complex homotopy equivalent to the connected 2-complex ``K``."""
    spanning_tree(K)  # raises on disconnected input
    return realize(contract_tree(K).presentation(), compress=compress)


# -- serialization -----------------------------------------------------------------

def realized_to_json(rc: RealizedComplex) -> dict:
    data = complex_to_json(rc.complex)
    data["coordinates"] = [[qstr(x) for x in p] for p in rc.coords]
    data["frame"] = {"h": qstr(H), "t_star": qstr(T_STAR), "rho_prime": qstr(RHO_PRIME),
                     "apex_height": qstr(APEX_HEIGHT)}
    data["delta_lb"] = qstr(rc.delta_lb)
    data["intervals"] = [[qstr(a), qstr(b)] for a, b in rc.intervals]
    data["parameters"] = [[qstr(t) for t in ts] for ts in rc.parameters]
    data["structure"] = rc.structure.to_json()
    if rc.presentation is not None:
        data["presentation"] = presentation_to_json(rc.presentation)
    return data


def realized_from_json(data: dict | str) -> RealizedComplex:
    if isinstance(data, str):
        data = json.loads(data)
    K = complex_from_json(data)
    coords = tuple(tuple(q(x) for x in p) for p in data["coordinates"])
    if len(coords) != K.vertex_count or any(len(p) != 4 for p in coords):
        raise ValueError("coordinate table does not match the vertex count")
    struct = ModelStructure.from_json(data["structure"]) if "structure" in data else ModelStructure(0, [])
    pres = presentation_from_json(data["presentation"]) if "presentation" in data else None
    return RealizedComplex(
        K, struct, coords,
        tuple((q(a), q(b)) for a, b in data.get("intervals", [])),
        tuple(tuple(q(t) for t in ts) for ts in data.get("parameters", [])),
        q(data.get("delta_lb", "0")),
        pres,
    )


def to_off(rc: RealizedComplex, drop_axis: int = 3) -> str:
    """Float projection to three coordinates, triangles only, OFF format."""
    keep = [i for i in range(4) if i != drop_axis]
    lines = ["OFF", f"{rc.vertex_count} {rc.complex.T} 0"]
    for p in rc.coords:
        lines.append(" ".join(repr(float(p[i])) for i in keep))
    for t in rc.complex.triangles:
        lines.append("3 " + " ".join(map(str, t)))
    return "\n".join(lines) + "\n"


def sector_of(point: Sequence[Fraction]) -> Fraction | None:
    """``x3 / x4`` (the cotangent of the pencil angle) for points above ``Pi``."""
    return point[2] / point[3] if point[3] > 0 else None
