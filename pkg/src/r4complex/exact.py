"""Exact rational helpers: parsing/printing, small planar predicates and
fraction-free row reduction of tiny integer matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

Point = tuple[Fraction, ...]


def q(x) -> Fraction:
    """Fraction from int, Fraction or a ``"p/q"`` string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"refusing inexact value {x!r}")


def qstr(x: Fraction) -> str:
    return str(Fraction(x))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(x - y for x, y in zip(a, b))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def orient2d(a, b, c) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def point_segment_dist2(p, a, b) -> Fraction:
    """Squared distance from ``p`` to segment ``ab`` (any dimension)."""
    ab = sub(b, a)
    ap = sub(p, a)
    den = dot(ab, ab)
    if den == 0:
        return dot(ap, ap)
    t = dot(ap, ab) / den
    t = min(max(t, Fraction(0)), Fraction(1))
    d = tuple(x - t * y for x, y in zip(ap, ab))
    return dot(d, d)


def segments_cross_2d(a, b, c, d) -> bool:
    """Closed planar segments ``ab`` and ``cd`` share a point."""
    o1, o2 = orient2d(a, b, c), orient2d(a, b, d)
    o3, o4 = orient2d(c, d, a), orient2d(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return any(point_segment_dist2(p, s, t) == 0
               for p, s, t in ((c, a, b), (d, a, b), (a, c, d), (b, c, d)))


def segment_segment_dist2_2d(a, b, c, d) -> Fraction:
    if segments_cross_2d(a, b, c, d):
        return Fraction(0)
    return min(point_segment_dist2(c, a, b), point_segment_dist2(d, a, b),
               point_segment_dist2(a, c, d), point_segment_dist2(b, c, d))


def in_closed_triangle_2d(p, a, b, c) -> bool:
    s = (orient2d(a, b, p), orient2d(b, c, p), orient2d(c, a, p))
    return not (min(s) < 0 < max(s))


def sqrt_floor(x: Fraction, scale: int = 1 << 16) -> Fraction:
    """Largest ``k/scale`` whose square does not exceed ``x`` (x >= 0)."""
    if x < 0:
        raise ValueError("negative argument")
    return Fraction(isqrt((x * scale * scale).__floor__()), scale)


# -- tiny integer linear algebra ---------------------------------------------

def integer_column(point: Sequence[Fraction]) -> tuple[list[int], int]:
    """Homogeneous column ``(p, 1)`` scaled by a positive integer to be integral."""
    s = 1
    for x in point:
        s = lcm(s, Fraction(x).denominator)
    return [int(x * s) for x in point] + [s], s


def _reduce_row(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    return [x // g for x in row] if g > 1 else row


def rref(rows: list[list[int]], col_order: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free reduced echelon form.

    Returns the nonzero rows and their pivot columns; each pivot column is
    zero in every other returned row.
    """
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in col_order:
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        p = pr[c]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f != 0:
                rows[i] = _reduce_row([p * x - f * y for x, y in zip(rows[i], pr)])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def kernel_basis(rows: list[list[int]], cols: Sequence[int]) -> list[dict[int, int]]:
    """Integer kernel basis of the submatrix on ``cols`` (entries outside
    ``cols`` are ignored). Vectors are dicts column -> coefficient."""
    red, piv = rref([[row[c] for c in cols] for row in rows], range(len(cols)))
    free = [c for c in range(len(cols)) if c not in piv]
    L = 1
    for row, c in zip(red, piv):
        L = lcm(L, abs(row[c]))
    basis = []
    for f in free:
        z = {cols[f]: L}
        for row, c in zip(red, piv):
            z[cols[c]] = -row[f] * (L // row[c])
        basis.append(z)
    return basis


def rank(rows: list[list[int]]) -> int:
    if not rows:
        return 0
    return len(rref(rows, range(len(rows[0])))[1])
