"""Acceptance suite: nine end-to-end criteria, all checked with exact arithmetic.

Each test records a one-line verdict; ``conftest.pytest_terminal_summary``
prints the collected lines after the run.
"""
import random
import time
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from conftest import (det, is_true_violation, klein_bottle_9, matmul, minor_gcd_factors,
                      random_presentation, tetrahedron_boundary, torus_7)
from r4complex.complex import SimplicialComplex2, boundary_matrices, euler_characteristic, validate
from r4complex.embed import realize, realize_homotopy_type
from r4complex.homology import decomposition_from_relations, homology_groups, smith_normal_form
from r4complex.model import build_model_complex
from r4complex.presentation import (abelianized_matrix, binary_compress, pad_relations, parse,
                                    stabilize, unary_size)
from r4complex.verify import (SigmaConditionError, check_embedding, check_sigma_condition,
                              lemma2_oracle)

F = Fraction
VERDICTS = {}

CORPUS_RUNS = [
    ("<a ; a>", False, "0"),
    ("<a ; 1>", False, "Z"),
    ("<a ; a^2>", False, "Z/2"),
    ("<a ; a^3>", False, "Z/3"),
    ("<a ; a^12>", False, "Z/12"),
    ("<a, b ; a b a^-1 b^-1>", False, "Z^2"),
    ("<a, b ; 1, 1>", False, "Z^2"),
    ("<a, b ; a b a b^-1>", False, "Z + Z/2"),
    ("<a ; a^1024>", True, "Z/1024"),
]


def verdict(n, ok, detail):
    VERDICTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(VERDICTS[n])
    assert ok, detail


@pytest.fixture(scope="module")
def corpus():
    return {(text, comp): realize(parse(text), compress=comp) for text, comp, _ in CORPUS_RUNS}


def test_criterion_1_end_to_end(corpus):
    start = time.perf_counter()
    bad = []
    for text, comp, expected in CORPUS_RUNS:
        rc = realize(parse(text), compress=comp)
        report = check_embedding(rc)
        h1 = homology_groups(rc.complex)[1]
        reference = decomposition_from_relations(abelianized_matrix(parse(text)))
        if not report.clean or h1 != reference or str(h1) != expected:
            bad.append(f"{text}: clean={report.clean} H1={h1} want {reference}")
    elapsed = time.perf_counter() - start
    verdict(1, not bad and elapsed < 60,
            f"{len(CORPUS_RUNS)} presentations, {elapsed:.1f}s" + ("; " + "; ".join(bad) if bad else ""))


def test_criterion_2_size_law():
    points = []
    for k in range(4, 129):
        K, _ = build_model_complex(stabilize(parse(f"<a ; a^{k}>")))
        points.append((unary_size(stabilize(parse(f"<a ; a^{k}>"))), K.simplex_count))
    (s0, c0), (s1, c1) = points[0], points[-1]
    alpha = F(c1 - c0, s1 - s0)
    beta = c0 - alpha * s0
    residual = max(abs(c - (alpha * s + beta)) for s, c in points)
    verdict(2, residual == 0 and (alpha, beta) == (24, -59),
            f"size = {alpha} * s(P') + ({beta}), max residual {residual}, C = {alpha}")


def test_criterion_3_compression():
    c1, c2 = 4, 0
    bad = []
    for k in range(1, 21):
        P = parse(f"<a ; a^{2 ** k}>")
        out = unary_size(binary_compress(P))
        if unary_size(P) != 2 ** k + 1 or out > c1 * k + c2 or out != 4 * k - 1:
            bad.append(k)
    verdict(3, not bad, f"compressed size 4k - 1 <= {c1}k + {c2} for k = 1..20" + (f"; bad k {bad}" if bad else ""))


def test_criterion_4_sigma(corpus):
    problems = []
    for (text, _), rc in corpus.items():
        cert = check_sigma_condition(rc)
        if not cert.holds or not all(m > 0 for m in cert.margins):
            problems.append(text)
        for j, (a, b) in enumerate(rc.intervals):
            # widen interval j just past the bound sigma < delta / (4 rho')
            wide = list(rc.intervals)
            wide[j] = (a, a + cert.bound / 2 + F(1, 10 ** 9))
            try:
                check_sigma_condition(replace(rc, intervals=tuple(wide)))
                problems.append(f"{text}: widening interval {j} not detected")
            except SigmaConditionError:
                pass
    verdict(4, not problems, f"{len(corpus)} realizations with positive margins, widening detected"
            + ("; " + "; ".join(problems) if problems else ""))


def _rational_vector(rng, lo=-9, hi=9):
    return tuple(F(rng.randint(lo, hi), rng.randint(1, 5)) for _ in range(3))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def lemma2_configuration(rng):
    """Two segments from a plane that meet at a point strictly off it."""
    while True:
        normal = _rational_vector(rng)
        if any(normal):
            break
    origin = _rational_vector(rng) if rng.random() < 0.5 else (F(0),) * 3
    seed = (F(1), F(0), F(0)) if normal[1] or normal[2] else (F(0), F(1), F(0))
    u = _cross(normal, seed)
    v = _cross(normal, u)

    def on_plane():
        a, b = F(rng.randint(-20, 20), rng.randint(1, 4)), F(rng.randint(-20, 20), rng.randint(1, 4))
        return tuple(o + a * x + b * y for o, x, y in zip(origin, u, v))

    x1 = on_plane()
    x2 = x1 if rng.random() < 0.02 else on_plane()
    lift = F(rng.choice([-1, 1]) * rng.randint(1, 40), rng.randint(1, 8))
    p = tuple(c + lift * n for c, n in zip(on_plane(), normal))
    segs = []
    for x in (x1, x2):
        s = 1 + F(rng.randint(0, 30), rng.randint(1, 10))
        segs.append((x, tuple(a + s * (b - a) for a, b in zip(x, p))))
    return segs[0], segs[1], (origin, normal)


def test_criterion_5_lemma2():
    rng = random.Random(20240605)
    failures = 0
    for i in range(1000):
        e1, e2, plane = lemma2_configuration(rng)
        if not lemma2_oracle(e1, e2, plane):
            failures += 1
    verdict(5, failures == 0, f"1000 seeded configurations, {failures} counterexamples")


def test_criterion_6_snf():
    rng = random.Random(6)
    bad, oracle_checked = 0, 0
    for _ in range(1000):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.randint(-10, 10) for _ in range(n)] for _ in range(m)]
        res = smith_normal_form(M)
        U, V, d = res.U.tolist(), res.V.tolist(), res.invariant_factors
        ok = (matmul(matmul(U, M), V) == res.diagonal().tolist()
              and abs(det(U)) == 1 and abs(det(V)) == 1
              and all(x > 0 for x in d) and all(b % a == 0 for a, b in zip(d, d[1:])))
        if m <= 5 and n <= 5:
            oracle_checked += 1
            ok = ok and d == minor_gcd_factors(M)
        bad += not ok
    verdict(6, bad == 0, f"1000 matrices, {oracle_checked} against the minor-gcd oracle, {bad} failures")


def structural_problems(K: SimplicialComplex2, P=None):
    out = []
    if not validate(K).ok:
        out.append("validate")
    d1, d2 = boundary_matrices(K)
    if K.E and K.T and np.any(d1.dot(d2) != 0):
        out.append("d1 d2 != 0")
    if P is not None and euler_characteristic(K) != 1 - P.n + P.m:
        out.append("euler characteristic")
    h0, _, h2 = homology_groups(K)
    if h2.torsion:
        out.append("H2 torsion")
    if (h0.free_rank, h0.torsion) != (1, ()):
        out.append("H0")
    return out


def test_criterion_7_structure(corpus):
    rng = random.Random(7)
    problems, built = [], 0
    for (text, _), rc in corpus.items():
        problems += [f"{text}: {p}" for p in structural_problems(rc.complex, rc.presentation)]
        built += 1
    for _ in range(40):
        P = stabilize(pad_relations(random_presentation(rng, 3, 3, 3, 4)))
        K, _ = build_model_complex(P)
        problems += [f"{P}: {p}" for p in structural_problems(K, P)]
        built += 1
    for K in (torus_7(), klein_bottle_9(), tetrahedron_boundary()):
        rc = realize_homotopy_type(K)
        problems += structural_problems(K) + structural_problems(rc.complex, rc.presentation)
        built += 2
    verdict(7, not problems, f"{built} complexes" + ("; " + "; ".join(problems) if problems else ""))


def inject_crossing(rc):
    """Append a triangle that pierces the h-disk of the first gadget."""
    K = rc.complex
    tri = [rc.coords[v] for v in rc.structure.gadgets[0].h_disk]
    c = tuple(sum(p[i] for p in tri) / 3 for i in range(4))
    n = K.vertex_count
    new = [(c[0], c[1], F(-1), F(-1, 7)), (c[0], c[1], F(1), F(1, 7)),
           (c[0] + 50, c[1] + 50, F(100), F(-100))]
    K2 = SimplicialComplex2(n + 3, K.edges + ((n, n + 1), (n, n + 2), (n + 1, n + 2)),
                            K.triangles + ((n, n + 1, n + 2),))
    return K2, list(rc.coords) + new, (n, n + 1, n + 2)


def test_criterion_8_verifier_equivalence():
    rng = random.Random(8)
    texts = [t for t, comp, _ in CORPUS_RUNS if not comp and t != "<a ; a^12>"]
    disagreements, flagged = [], 0
    for i in range(50):
        P = parse(texts[i]) if i < len(texts) else random_presentation(rng, 2, 2, 2, 3)
        rc = realize(P)
        pruned, full = check_embedding(rc), check_embedding(rc, prune=False)
        if [v.simplices for v in pruned.violations] != [v.simplices for v in full.violations]:
            disagreements.append(f"clean #{i}")
        if i % 5 == 0 and rc.structure.gadgets:
            K2, coords, bad = inject_crossing(rc)
            a, b = check_embedding((K2, coords)), check_embedding((K2, coords), prune=False)
            same = [v.simplices for v in a.violations] == [v.simplices for v in b.violations]
            exact = bool(a.violations) and all(
                bad in v.simplices and is_true_violation(*v.simplices, coords, v.witness)
                for v in a.violations)
            flagged += exact
            if not (same and exact):
                disagreements.append(f"injected #{i}")
    verdict(8, not disagreements,
            f"50 complexes agree, {flagged} injected crossings flagged with exact witnesses"
            + ("; " + ", ".join(disagreements) if disagreements else ""))


def test_criterion_9_homotopy_types():
    cases = [("torus", torus_7(), "Z^2"), ("Klein bottle", klein_bottle_9(), "Z + Z/2"),
             ("2-sphere", tetrahedron_boundary(), "0")]
    bad = []
    for name, K, expected in cases:
        rc = realize_homotopy_type(K)
        h1 = homology_groups(rc.complex)[1]
        if not check_embedding(rc).clean or str(h1) != expected or h1 != homology_groups(K)[1]:
            bad.append(f"{name}: H1 = {h1}")
    verdict(9, not bad, "torus Z^2, Klein bottle Z + Z/2, sphere 0" + ("; " + "; ".join(bad) if bad else ""))
