"""Shared fixtures and independent exact oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from r4complex.complex import SimplicialComplex2
from r4complex.presentation import parse

# Presentations exercised across modules, with the expected abelianization
# as (free rank, torsion).
CORPUS = {
    "<a ; a>": (0, ()),
    "<a ; 1>": (1, ()),
    "<a ; a^2>": (0, (2,)),
    "<a ; a^3>": (0, (3,)),
    "<a ; a^12>": (0, (12,)),
    "<a, b ; a b a^-1 b^-1>": (2, ()),
    "<a, b ; 1, 1>": (2, ()),
    "<a, b ; a b a b^-1>": (1, (2,)),
}


def surface(vertex_count: int, triangles) -> SimplicialComplex2:
    """Closed complex from a triangle list (edges derived)."""
    tris = [tuple(sorted(t)) for t in triangles]
    edges = sorted({e for t in tris for e in combinations(t, 2)})
    return SimplicialComplex2(vertex_count, tuple(edges), tuple(tris))


def torus_7() -> SimplicialComplex2:
    """Seven-vertex torus."""
    return surface(7, [t for i in range(7)
                       for t in ((i, (i + 1) % 7, (i + 3) % 7), (i, (i + 2) % 7, (i + 3) % 7))])


def klein_bottle_9() -> SimplicialComplex2:
    """3x3 grid, top and bottom glued straight, left and right glued with a flip."""
    def vid(i, j):
        if i == 3:
            return 3 * 0 + (-j) % 3
        return 3 * i + j % 3

    tris = []
    for i in range(3):
        for j in range(3):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            tris += [(a, b, d), (a, d, c)]
    return surface(9, tris)


def tetrahedron_boundary() -> SimplicialComplex2:
    return surface(4, combinations(range(4), 3))


@pytest.fixture
def torus():
    return torus_7()


@pytest.fixture
def klein():
    return klein_bottle_9()


@pytest.fixture
def sphere():
    return tetrahedron_boundary()


def random_presentation(rng: random.Random, max_gens: int = 2, max_rels: int = 2,
                        max_syllables: int = 2, max_exp: int = 3):
    n = rng.randint(1, max_gens)
    names = "abcd"[:n]
    rels = []
    for _ in range(rng.randint(0, max_rels)):
        k = rng.randint(0, max_syllables)
        word = " ".join(f"{rng.choice(names)}^{rng.choice([e for e in range(-max_exp, max_exp + 1) if e])}"
                        for _ in range(k))
        rels.append(word or "1")
    return parse(f"<{', '.join(names)} ; {', '.join(rels)}>")


# -- exact oracles ---------------------------------------------------------------

def solve_affine(points, target):
    """Barycentric coordinates of ``target`` w.r.t. affinely independent
    ``points`` (Fractions), or None when ``target`` is off their affine hull."""
    k = len(points)
    rows = [[Fraction(p[d]) for p in points] + [Fraction(target[d])] for d in range(len(target))]
    rows.append([Fraction(1)] * k + [Fraction(1)])
    r = 0
    piv = []
    for c in range(k):
        i = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i2 in range(len(rows)):
            if i2 != r and rows[i2][c] != 0:
                f = rows[i2][c]
                rows[i2] = [x - f * y for x, y in zip(rows[i2], rows[r])]
        piv.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    lam = [Fraction(0)] * k
    for row, c in zip(rows, piv):
        lam[c] = row[-1]
    return lam


def in_closed_simplex(point, verts) -> bool:
    lam = solve_affine(verts, point)
    return lam is not None and all(x >= 0 for x in lam)


def is_true_violation(sigma, tau, coords, witness) -> bool:
    """``witness`` lies in both closed simplices but outside their common face."""
    s_pts = [coords[v] for v in sigma]
    t_pts = [coords[v] for v in tau]
    if not (in_closed_simplex(witness, s_pts) and in_closed_simplex(witness, t_pts)):
        return False
    shared = sorted(set(sigma) & set(tau))
    return not shared or not in_closed_simplex(witness, [coords[v] for v in shared])


def det(M) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    A = [[int(x) for x in r] for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def minor_gcd_factors(M) -> tuple[int, ...]:
    """Invariant factors from gcds of all i x i minors (d_1 ... d_i = g_i)."""
    rows = [[int(x) for x in r] for r in M]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    out = []
    prev = 1
    for i in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), i):
            for cs in combinations(range(n), i):
                g = gcd(g, det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def pytest_terminal_summary(terminalreporter):
    """Print the one-line verdict of every acceptance criterion that ran."""
    import sys
    module = sys.modules.get("test_acceptance")
    verdicts = getattr(module, "VERDICTS", {})
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for n in sorted(verdicts):
            terminalreporter.write_line(verdicts[n])
