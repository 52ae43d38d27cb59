"""Smith normal form over the integers and integral homology of 2-complexes.

Matrices are numpy arrays with ``dtype=object`` holding Python ints, so
entries never overflow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .complex import SimplicialComplex2, boundary_matrices

__all__ = [
    "SNFResult",
    "AbelianDecomposition",
    "as_integer_matrix",
    "smith_normal_form",
    "decomposition_from_relations",
    "homology_groups",
    "matrix_to_embedded_complex",
    "parse_matrix",
    "matrix_to_text",
]


def as_integer_matrix(M, cols: int | None = None) -> np.ndarray:
    """Dense object array of Python ints; ``cols`` fixes the width of an empty matrix."""
    if isinstance(M, np.ndarray):
        if M.ndim != 2:
            raise ValueError("expected a 2-dimensional matrix")
        cols = M.shape[1] if cols is None else cols
        M = M.tolist()
    rows = [[int(x) for x in r] for r in M]
    width = len(rows[0]) if rows else (cols or 0)
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    out = np.zeros((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = x
    return out


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: tuple[int, ...]
    U: np.ndarray | None = None
    V: np.ndarray | None = None
    shape: tuple[int, int] = (0, 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def diagonal(self) -> np.ndarray:
        D = np.zeros(self.shape, dtype=object)
        for i, d in enumerate(self.invariant_factors):
            D[i, i] = d
        return D


def _to_array(rows: list[list[int]], shape: tuple[int, int]) -> np.ndarray:
    out = np.zeros(shape, dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = x
    return out


def smith_normal_form(M, transforms: bool = True) -> SNFResult:
    """Invariant factors of ``M`` with unimodular ``U``, ``V`` such that ``U M V = D``.

    Pivots are the smallest nonzero absolute values of the trailing block,
    ties going to the earliest row and then the earliest column.

    >>> smith_normal_form([[2, 4], [6, 8]]).invariant_factors
    (2, 4)
    """
    A = [list(r) for r in as_integer_matrix(M).tolist()]
    m = len(A)
    n = as_integer_matrix(M).shape[1] if not A else len(A[0])
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if transforms:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            if transforms:
                for r in V:
                    r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row dst += f * row src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        if transforms:
            U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):  # column dst += f * column src
        for r in A:
            if r[src]:
                r[dst] += f * r[src]
        if transforms:
            for r in V:
                if r[src]:
                    r[dst] += f * r[src]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best
        return best

    t = 0
    while t < min(m, n):
        best = find_pivot(t)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
            # remainders are smaller than the pivot: move the smallest in and repeat
            rem = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rem += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rem:
                _, i, j = min(rem)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            p = A[t][t]
            if abs(p) == 1:
                break
            # divisibility: pull a non-multiple into the pivot row
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
        t += 1
    factors = tuple(int(A[i][i]) for i in range(t))
    if not transforms:
        return SNFResult(factors, None, None, (m, n))
    return SNFResult(factors, _to_array(U, (m, m)), _to_array(V, (n, n)), (m, n))


@dataclass(frozen=True)
class AbelianDecomposition:
    """``Z^free_rank`` plus cyclic torsion summands in divisibility order."""

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


def decomposition_from_relations(M, n: int | None = None) -> AbelianDecomposition:
    """The group ``Z^n / rowspace(M)`` for an ``m x n`` relation matrix."""
    A = as_integer_matrix(M, n)
    if n is None:
        n = A.shape[1]
    elif A.shape[1] != n:
        raise ValueError(f"matrix has {A.shape[1]} columns, expected {n}")
    snf = smith_normal_form(A, transforms=False)
    return AbelianDecomposition(n - snf.rank, tuple(d for d in snf.invariant_factors if d > 1))


def homology_groups(K: SimplicialComplex2) -> tuple[AbelianDecomposition, ...]:
    """``(H0, H1, H2)`` from Smith forms of the boundary matrices."""
    d1, d2 = boundary_matrices(K)
    s1 = smith_normal_form(d1, transforms=False)
    s2 = smith_normal_form(d2, transforms=False)
    h0 = AbelianDecomposition(K.V - s1.rank)
    h1 = AbelianDecomposition(K.E - s1.rank - s2.rank,
                              tuple(d for d in s2.invariant_factors if d > 1))
    h2 = AbelianDecomposition(K.T - s2.rank)
    return h0, h1, h2


def matrix_to_embedded_complex(M):
    """Embedded 2-complex in R^4 whose H1 is ``Z^n / rowspace(M)``."""
    from .embed import realize
    from .presentation import matrix_to_presentation

    return realize(matrix_to_presentation(as_integer_matrix(M)), compress=True)


# -- I/O ----------------------------------------------------------------------------

def parse_matrix(text: str) -> np.ndarray:
    """Rows of whitespace-separated integers, or a JSON list of rows
    (optionally wrapped as ``{"matrix": [...], "cols": n}``)."""
    s = text.strip()
    if s.startswith("[") or s.startswith("{"):
        data = json.loads(s)
        if isinstance(data, dict):
            return as_integer_matrix(data["matrix"], data.get("cols"))
        return as_integer_matrix(data)
    rows = [line.replace(",", " ").split() for line in s.splitlines()]
    rows = [r for r in rows if r]
    try:
        return as_integer_matrix([[int(x) for x in r] for r in rows])
    except ValueError as exc:
        raise ValueError(f"bad matrix: {exc}") from None


def matrix_to_text(M) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in as_integer_matrix(M).tolist())
