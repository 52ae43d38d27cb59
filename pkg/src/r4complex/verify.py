"""Exact certification of realizations.

A realization is an embedding iff every simplex is non-degenerate and every
pair of closed simplices meets exactly in the realization of their common
face. Checking pairs of maximal simplices is enough: faces of two properly
intersecting simplices intersect properly.

The pair predicate works on homogeneous coordinates ``(p, 1)``. For
simplices ``S u A`` and ``S u B`` sharing the vertex set ``S``, a bad point
exists iff there are ``lam >= 0`` on ``A``, ``mu >= 0`` on ``B``, not all
zero, and free ``nu`` on ``S`` with

    sum lam_a a^ + sum nu_s s^ = sum mu_b b^.

Eliminating ``nu`` leaves a question about nonnegative vectors in a kernel
of dimension at most 6, settled by enumerating extreme rays.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .embed import RHO_PRIME, T_STAR, RealizedComplex, cot_of, width_bound
from .exact import Point, dot, integer_column, kernel_basis, q, qstr, rank, rref, sub

__all__ = [
    "DegenerateSimplexError",
    "SigmaConditionError",
    "PairResult",
    "Violation",
    "IntersectionReport",
    "SigmaCertificate",
    "simplex_pair_intersection",
    "check_embedding",
    "check_sigma_condition",
    "check_sectors",
    "lemma2_oracle",
    "report_to_json",
]

DISJOINT = "disjoint"
SHARED_FACE = "shared_face"
VIOLATION = "violation"


class DegenerateSimplexError(ValueError):
    pass


class SigmaConditionError(AssertionError):
    pass


@dataclass(frozen=True)
class PairResult:
    kind: str
    witness: Point | None = None


@dataclass(frozen=True)
class Violation:
    simplices: tuple[tuple[int, ...], tuple[int, ...]]
    witness: Point

    def to_json(self) -> dict:
        return {"simplices": [list(s) for s in self.simplices],
                "witness": [qstr(x) for x in self.witness]}


@dataclass
class IntersectionReport:
    violations: list[Violation] = field(default_factory=list)
    checked_pairs: int = 0
    pruned_pairs: int = 0
    degenerate: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations and not self.degenerate

    @property
    def total_pairs(self) -> int:
        return self.checked_pairs + self.pruned_pairs


# -- the exact predicate ------------------------------------------------------------

def _is_degenerate(points: Sequence[Point]) -> bool:
    cols = [integer_column(p)[0] for p in points]
    rows = [list(r) for r in zip(*cols)]
    return rank(rows) < len(points)


def _nonneg_kernel_vector(rows: list[list[int]], cols: list[int]) -> dict[int, int] | None:
    """A nonzero ``z >= 0`` supported on ``cols`` with ``rows @ z = 0``, if any."""
    basis = kernel_basis(rows, cols)
    d = len(basis)
    if d == 0:
        return None
    # every extreme ray of {z >= 0, Mz = 0} is cut out by d-1 zero coordinates
    for zeros in combinations(cols, d - 1):
        sub_rows = [[b.get(c, 0) for b in basis] for c in zeros]
        if sub_rows:
            coeffs = kernel_basis(sub_rows, list(range(d)))
            if len(coeffs) != 1:
                continue
            coeff = coeffs[0]
        else:
            coeff = {0: 1}
        z = {c: sum(coeff.get(i, 0) * basis[i].get(c, 0) for i in range(d)) for c in cols}
        vals = list(z.values())
        if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
            return z
        if all(v <= 0 for v in vals) and any(v < 0 for v in vals):
            return {c: -v for c, v in z.items()}
    return None


def _exact_pair(sigma: Sequence[int], tau: Sequence[int], coords) -> PairResult:
    S = sorted(set(sigma) & set(tau))
    A = [v for v in sigma if v not in S]
    B = [v for v in tau if v not in S]
    if not A or not B:
        return PairResult(SHARED_FACE)
    verts = S + A + B
    cols, scales = [], []
    for i, v in enumerate(verts):
        col, s = integer_column(coords[v])
        if i >= len(S) + len(A):
            col = [-x for x in col]
        cols.append(col)
        scales.append(s)
    rows = [list(r) for r in zip(*cols)]
    k = len(verts)
    red, piv = rref(rows, range(k))
    s_idx = range(len(S))
    keep = [row for row, c in zip(red, piv) if c not in s_idx]
    dropped = [(row, c) for row, c in zip(red, piv) if c in s_idx]
    constrained = list(range(len(S), k))
    z = _nonneg_kernel_vector(keep, constrained)
    if z is None:
        return PairResult(SHARED_FACE if S else DISJOINT)

    # recover nu on S, then build a point of sigma outside conv(S)
    total = Fraction(0)
    acc = [Fraction(0)] * 4
    for i in range(len(S), len(S) + len(A)):
        lam = Fraction(z[i] * scales[i])
        total += lam
        acc = [x + lam * y for x, y in zip(acc, coords[verts[i]])]
    for row, c in dropped:
        nu = -Fraction(sum(row[j] * z[j] for j in constrained), row[c]) * scales[c]
        if nu > 0:
            total += nu
            acc = [x + nu * y for x, y in zip(acc, coords[verts[c]])]
    return PairResult(VIOLATION, tuple(x / total for x in acc))


def simplex_pair_intersection(sigma: Sequence[int], tau: Sequence[int], coords) -> PairResult:
    """Classify two realized simplices (vertex ids into ``coords``).

    Returns ``disjoint``, ``shared_face`` (they meet exactly in the
    realization of their common face) or ``violation`` with a witness point.
    """
    for s in (sigma, tau):
        if _is_degenerate([coords[v] for v in s]):
            raise DegenerateSimplexError(f"simplex {tuple(s)} is degenerate")
    return _exact_pair(tuple(sigma), tuple(tau), coords)


# -- pruning ----------------------------------------------------------------------------

class _Checker:
    """Pair checker with exact separating-functional reductions and a cache."""

    def __init__(self, coords: Sequence[Point], prune: bool = True):
        self.coords = coords
        self.prune = prune
        self.cache: dict[tuple, PairResult] = {}
        self.exact_calls = 0
        self._info: dict[tuple[int, ...], tuple] = {}

    def info(self, s: tuple[int, ...]):
        got = self._info.get(s)
        if got is None:
            pts = [self.coords[v] for v in s]
            lo = tuple(min(p[i] for p in pts) for i in range(4))
            hi = tuple(max(p[i] for p in pts) for i in range(4))
            ratios = []
            valid = True
            for p in pts:
                if p[3] > 0:
                    ratios.append(p[2] / p[3])
                elif p[2] != 0 or p[3] != 0:
                    valid = False
            sector = (min(ratios), max(ratios)) if ratios else None
            got = (lo, hi, valid, sector)
            self._info[s] = got
        return got

    def _reduce(self, s, t):
        """Try to replace (s, t) by faces on a separating hyperplane.

        Returns None when no candidate functional separates them; otherwise
        the pair of zero-faces (possibly empty).
        """
        (slo, shi, sval, ssec), (tlo, thi, tval, tsec) = self.info(s), self.info(t)
        c = self.coords
        for i in range(4):
            for a, b, alo, ahi, blo, bhi in ((s, t, slo, shi, tlo, thi), (t, s, tlo, thi, slo, shi)):
                if ahi[i] <= blo[i]:
                    cut = ahi[i]
                    fa = tuple(v for v in a if c[v][i] == cut)
                    fb = tuple(v for v in b if c[v][i] == cut)
                    return (fa, fb) if a is s else (fb, fa)
        if sval and tval:
            # f = x3 - k * x4 vanishes on Pi and separates pencil sectors
            def on_plane(simplex, k):
                return tuple(v for v in simplex
                             if (c[v][2] == 0 and c[v][3] == 0)
                             or (k is not None and c[v][3] > 0 and c[v][2] == k * c[v][3]))
            if ssec is None or tsec is None:
                return on_plane(s, None), on_plane(t, None)
            for a, b, asec, bsec in ((s, t, ssec, tsec), (t, s, tsec, ssec)):
                if asec[1] < bsec[0]:
                    return on_plane(s, None), on_plane(t, None)
                if asec[1] == bsec[0]:
                    k = asec[1]
                    return on_plane(s, k), on_plane(t, k)
        return None

    def pair(self, s: tuple[int, ...], t: tuple[int, ...]) -> tuple[PairResult, bool]:
        """Verdict for (s, t) and whether an exact solve was needed."""
        if not s or not t or set(s) <= set(t) or set(t) <= set(s):
            kind = SHARED_FACE if set(s) & set(t) else DISJOINT
            return PairResult(kind), False
        key = (s, t) if s <= t else (t, s)
        got = self.cache.get(key)
        if got is not None:
            return got
        if self.prune:
            red = self._reduce(s, t)
            if red is not None and (red[0] != s or red[1] != t):
                res = self.pair(*red)
                self.cache[key] = res
                return res
        self.exact_calls += 1
        res = (_exact_pair(s, t, self.coords), True)
        self.cache[key] = res
        return res


def _candidate_pairs(simplices: list[tuple[int, ...]], checker: _Checker):
    """Sweep over x1; yields pairs whose closed bounding boxes overlap."""
    order = sorted(range(len(simplices)), key=lambda i: checker.info(simplices[i])[0][0])
    active: list[int] = []
    for i in order:
        lo_i, hi_i = checker.info(simplices[i])[:2]
        active = [j for j in active if checker.info(simplices[j])[1][0] >= lo_i[0]]
        for j in active:
            lo_j, hi_j = checker.info(simplices[j])[:2]
            if all(lo_i[k] <= hi_j[k] and lo_j[k] <= hi_i[k] for k in range(1, 4)):
                yield (min(i, j), max(i, j))
        active.append(i)


def _check_chunk(args):
    coords, simplices, pairs, prune = args
    checker = _Checker(coords, prune)
    out = []
    exact = 0
    for i, j in pairs:
        res, needed = checker.pair(simplices[i], simplices[j])
        exact += needed
        if res.kind == VIOLATION:
            out.append((i, j, res.witness))
    return out, exact


def check_embedding(rc: RealizedComplex | tuple, prune: bool = True, workers: int = 1,
                    simplices: Iterable[tuple[int, ...]] | None = None) -> IntersectionReport:
    """All-pairs exact embedding check.

    ``rc`` is a :class:`RealizedComplex` or a ``(complex, coords)`` pair. With
    ``prune`` the pairs are filtered by bounding boxes and reduced along
    exact separating functionals (coordinate hyperplanes and pencil
    sectors); without it every pair of maximal simplices is solved directly.
    """
    if isinstance(rc, RealizedComplex):
        K, coords = rc.complex, rc.coords
    else:
        K, coords = rc
    coords = tuple(tuple(q(x) for x in p) for p in coords)
    simp = list(simplices) if simplices is not None else K.maximal_simplices()
    simp = [tuple(sorted(s)) for s in simp]
    report = IntersectionReport()
    report.degenerate = [s for s in simp if _is_degenerate([coords[v] for v in s])]
    bad = set(report.degenerate)
    simp = [s for s in simp if s not in bad]
    n = len(simp)
    total = n * (n - 1) // 2

    if prune:
        pairs = list(_candidate_pairs(simp, _Checker(coords)))
    else:
        pairs = list(combinations(range(n), 2))

    if workers > 1 and len(pairs) > 1:
        chunks = [pairs[w::workers] for w in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_check_chunk, [(coords, simp, ch, prune) for ch in chunks]))
    else:
        results = [_check_chunk((coords, simp, pairs, prune))]

    found = []
    exact = 0
    for out, e in results:
        found += out
        exact += e
    found.sort(key=lambda x: (x[0], x[1]))
    report.violations = [Violation((simp[i], simp[j]), w) for i, j, w in found]
    report.checked_pairs = exact
    report.pruned_pairs = total - exact
    return report


# -- sigma condition and pencil sectors ----------------------------------------------

@dataclass
class SigmaCertificate:
    bound: Fraction
    margins: list[Fraction]
    problems: list[str]

    @property
    def holds(self) -> bool:
        return not self.problems and all(m > 0 for m in self.margins)


def check_sigma_condition(rc: RealizedComplex, strict: bool = True) -> SigmaCertificate:
    """Check ``2 * width(I_j) < delta_lb / (4 rho')`` for every gadget.

    Also checks the intervals are disjoint subsets of ``(t*, 1)`` and that
    each gadget's parameters increase strictly inside its interval. Margins
    are ``delta_lb / (4 rho') - 2 * width(I_j)``.
    """
    bound = width_bound(rc.delta_lb)
    margins = [bound - 2 * (b - a) for a, b in rc.intervals]
    problems = []
    for j, (a, b) in enumerate(rc.intervals, 1):
        if not T_STAR < a < b < 1:
            problems.append(f"interval {j} = [{a}, {b}] not inside ({T_STAR}, 1)")
    ordered = sorted(rc.intervals)
    for (a1, b1), (a2, b2) in zip(ordered, ordered[1:]):
        if a2 <= b1:
            problems.append(f"intervals [{a1}, {b1}] and [{a2}, {b2}] overlap")
    for j, ((a, b), ts) in enumerate(zip(rc.intervals, rc.parameters), 1):
        if not all(a < x < b for x in ts) or any(x >= y for x, y in zip(ts, ts[1:])):
            problems.append(f"parameters of gadget {j} are not strictly increasing inside I_{j}")
    for j, m in enumerate(margins, 1):
        if m <= 0:
            problems.append(f"gadget {j}: 2*|I_j| exceeds delta_lb/(4 rho') by {-m}")
    cert = SigmaCertificate(bound, margins, problems)
    if strict and not cert.holds:
        raise SigmaConditionError("; ".join(problems))
    return cert


def check_sectors(rc: RealizedComplex) -> list[str]:
    """Points of gadget j above ``Pi`` lie in the closed pencil sector of I_j
    (annulus at heights (0, H], cone at [H, 2H]); returns problems found."""
    problems = []
    for g, (a, b) in zip(rc.structure.gadgets, rc.intervals):
        lo, hi = cot_of(b), cot_of(a)
        verts = list(g.upper) + ([g.apex] if g.apex is not None else [])
        for v in verts:
            x = rc.coords[v]
            if x[3] <= 0 or not lo <= x[2] / x[3] <= hi:
                problems.append(f"vertex {v} of gadget {g.index} outside its sector")
        for w in g.lower:
            if rc.coords[w][2] != 0 or rc.coords[w][3] != 0:
                problems.append(f"lower vertex {w} of gadget {g.index} not in Pi")
    return problems


# -- segment angle oracle ---------------------------------------------------------

PI_LOWER = Fraction(314159265, 10 ** 8)
PI_UPPER = Fraction(355, 113)


def _cos_bounds(x2: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    """Rational bracket of ``cos(x)`` from two consecutive Taylor partial sums.

    Valid once the terms decrease in magnitude, which holds from the second
    term on for ``x**2 <= 12``.
    """
    s = Fraction(1)
    term = Fraction(1)
    prev = s
    for k in range(1, terms + 1):
        term = -term * x2 / ((2 * k - 1) * (2 * k))
        prev, s = s, s + term
    return min(prev, s), max(prev, s)


def _signed_root_below(square: Fraction, positive: bool, r: Fraction) -> bool:
    """Is ``c < r`` for the real ``c`` with ``c**2 = square`` and the given sign?"""
    if positive:
        return r > 0 and square < r * r
    return r >= 0 or square > r * r


def _angle_exceeds(cos2: Fraction, cos_positive: bool, bound2: Fraction) -> bool:
    """Decide ``angle > B`` for an angle in ``[0, pi]`` with ``cos(angle)**2 = cos2``
    and ``B = sqrt(bound2)``."""
    if bound2 >= PI_UPPER ** 2:
        return False
    if bound2 >= PI_LOWER ** 2:
        raise ArithmeticError("angle bound too close to pi to decide")
    if not cos_positive and bound2 < Fraction(9, 4):
        return True  # angle >= pi/2 > 3/2 > B
    # cos is decreasing on [0, pi]: angle > B  iff  cos(angle) < cos(B)
    for terms in range(8, 200, 4):
        lo, hi = _cos_bounds(bound2, terms)
        if _signed_root_below(cos2, cos_positive, lo):
            return True
        if not _signed_root_below(cos2, cos_positive, hi):
            return False  # cos(angle) >= hi >= cos(B)
    raise ArithmeticError("angle comparison undecided")


def lemma2_oracle(e1: tuple[Point, Point], e2: tuple[Point, Point],
                  plane: tuple[Point, Point] | None = None) -> bool:
    """Check the segment-angle bound for two segments meeting off a plane.

    ``e_i = (x_i, y_i)`` with ``x_i`` on the plane and ``y_i`` strictly on one
    side; the segments must share a point off the plane. ``plane`` is
    ``(point, normal)`` in R^3 and defaults to ``z = 0``. Returns whether
    some segment makes an angle with the normal greater than
    ``delta / (2 * length)``, ``delta`` being the distance between the base
    points.
    """
    if plane is None:
        plane = ((Fraction(0),) * 3, (Fraction(0), Fraction(0), Fraction(1)))
    origin, normal = (tuple(q(x) for x in v) for v in plane)
    (x1, y1), (x2, y2) = ((tuple(q(c) for c in a), tuple(q(c) for c in b)) for a, b in (e1, e2))

    def height(p):
        return dot(sub(p, origin), normal)

    if height(x1) != 0 or height(x2) != 0:
        raise ValueError("each segment needs its first endpoint on the plane")
    h1, h2 = height(y1), height(y2)
    if h1 == 0 or h2 == 0 or (h1 > 0) != (h2 > 0):
        raise ValueError("second endpoints must lie strictly on the same side")
    sign = 1 if h1 > 0 else -1
    delta2 = dot(sub(x1, x2), sub(x1, x2))
    if delta2 == 0:
        return True  # the bound is 0 and angles are nonnegative
    p = _segment_meet(x1, y1, x2, y2)
    if p is None or height(p) == 0:
        raise ValueError("segments must intersect off the plane")
    n2 = dot(normal, normal)
    for x, y in ((x1, y1), (x2, y2)):
        d = sub(y, x)
        l2 = dot(d, d)
        along = sign * dot(d, normal)
        cos2 = along * along / (l2 * n2)
        if _angle_exceeds(cos2, along > 0, delta2 / (4 * l2)):
            return True
    return False


def _segment_meet(a, b, c, d) -> Point | None:
    """Common point of segments ab and cd in R^3, if exactly one exists."""
    u, v, w = sub(b, a), sub(d, c), sub(c, a)
    # solve a + s u = c + r v in least-squares normal form (exact)
    uu, uv, vv, uw, vw = dot(u, u), dot(u, v), dot(v, v), dot(u, w), dot(v, w)
    den = uu * vv - uv * uv
    if den == 0:
        return None
    s = (uw * vv - vw * uv) / den
    r = (uw * uv - vw * uu) / den
    if not (0 <= s <= 1 and 0 <= r <= 1):
        return None
    p1 = tuple(x + s * y for x, y in zip(a, u))
    p2 = tuple(x + r * y for x, y in zip(c, v))
    return p1 if p1 == p2 else None


def report_to_json(report: IntersectionReport, sigma: SigmaCertificate | None = None) -> dict:
    out = {
        "clean": report.clean,
        "checked_pairs": report.checked_pairs,
        "pruned_pairs": report.pruned_pairs,
        "violations": [v.to_json() for v in report.violations],
        "degenerate": [list(s) for s in report.degenerate],
    }
    if sigma is not None:
        out["sigma"] = {"holds": sigma.holds, "bound": qstr(sigma.bound),
                        "margins": [qstr(m) for m in sigma.margins], "problems": sigma.problems}
    return out
