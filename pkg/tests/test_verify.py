import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import in_closed_simplex, is_true_violation, random_presentation
from r4complex.complex import SimplicialComplex2
from r4complex.embed import realize
from r4complex.presentation import parse
from r4complex.verify import (DISJOINT, SHARED_FACE, VIOLATION, DegenerateSimplexError,
                              SigmaConditionError, check_embedding, check_sectors,
                              check_sigma_condition, lemma2_oracle, report_to_json,
                              simplex_pair_intersection)

F = Fraction


def pts(*rows):
    return [tuple(F(x) for x in r) for r in rows]


# -- the pair predicate ---------------------------------------------------------------

def test_shared_edge_only():
    c = pts((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0))
    assert simplex_pair_intersection((0, 1, 2), (0, 1, 3), c).kind == SHARED_FACE


def test_crossing_triangles_witness():
    c = pts((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0),
            (F(1, 2), F(1, 2), -1, 0), (F(1, 2), F(1, 2), 1, 0), (2, 2, 0, 1))
    res = simplex_pair_intersection((0, 1, 2), (3, 4, 5), c)
    assert res.kind == VIOLATION
    assert res.witness == (F(1, 2), F(1, 2), 0, 0)


def test_disjoint_and_overlap_along_shared_vertex():
    c = pts((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (5, 5, 5, 5), (6, 5, 5, 5), (5, 6, 5, 5))
    assert simplex_pair_intersection((0, 1, 2), (3, 4, 5), c).kind == DISJOINT
    # coplanar triangles sharing vertex 0 and overlapping beyond it
    c = pts((0, 0, 0, 0), (2, 0, 0, 0), (0, 2, 0, 0), (1, F(1, 2), 0, 0), (3, 3, 0, 0))
    res = simplex_pair_intersection((0, 1, 2), (0, 3, 4), c)
    assert res.kind == VIOLATION
    assert is_true_violation((0, 1, 2), (0, 3, 4), c, res.witness)


def test_collinear_edges_overlapping():
    c = pts((0, 0, 0, 0), (2, 0, 0, 0), (1, 0, 0, 0), (3, 0, 0, 0))
    res = simplex_pair_intersection((0, 1), (2, 3), c)
    assert res.kind == VIOLATION
    assert is_true_violation((0, 1), (2, 3), c, res.witness)


def test_vertex_on_triangle():
    c = pts((0, 0, 0, 0), (2, 0, 0, 0), (0, 2, 0, 0), (1, 0, 0, 0))
    res = simplex_pair_intersection((0, 1, 2), (3,), c)
    assert res.kind == VIOLATION and res.witness == c[3]


def test_degenerate_triangle_rejected():
    c = pts((0, 0, 0, 0), (1, 1, 1, 1), (2, 2, 2, 2), (5, 0, 0, 0))
    with pytest.raises(DegenerateSimplexError):
        simplex_pair_intersection((0, 1, 2), (3,), c)
    rep = check_embedding((SimplicialComplex2(3, ((0, 1), (0, 2), (1, 2)), ((0, 1, 2),)), c[:3]))
    assert rep.degenerate == [(0, 1, 2)] and not rep.clean


small = st.integers(-3, 3)
point = st.tuples(small, small, small, small)


def brute_force_meet(sigma, tau, c):
    """Search a rational grid of barycentric coordinates for a bad common point."""
    shared = set(sigma) & set(tau)
    grid = 6
    def combos(k):
        if k == 1:
            yield (grid,)
            return
        for i in range(grid + 1):
            for rest in combos(k - 1):
                if sum(rest) + i == grid:
                    yield (i,) + rest
    for lam in combos(len(sigma)):
        p = tuple(sum(F(l, grid) * c[v][d] for l, v in zip(lam, sigma)) for d in range(4))
        if in_closed_simplex(p, [c[v] for v in tau]):
            if not shared or not in_closed_simplex(p, [c[v] for v in sorted(shared)]):
                return p
    return None


@settings(max_examples=150, deadline=None)
@given(st.lists(point, min_size=6, max_size=6, unique=True), st.sampled_from([0, 1, 2]))
def test_predicate_agrees_with_witness_checks(raw, share):
    """Every reported witness is a genuine bad point; grid hits are never missed."""
    c = [tuple(F(x) for x in p) for p in raw]
    sigma = (0, 1, 2)
    tau = tuple(range(3 - share, 6 - share))
    try:
        res = simplex_pair_intersection(sigma, tau, c)
    except DegenerateSimplexError:
        return
    if res.kind == VIOLATION:
        assert is_true_violation(sigma, tau, c, res.witness)
    else:
        assert brute_force_meet(sigma, tau, c) is None
        assert brute_force_meet(tau, sigma, c) is None


def generic_meet(a, b):
    """Unique common point of the affine planes of triangles a and b in R^4
    with its two barycentric vectors (4x4 solve by elimination)."""
    # a0 + s (a1 - a0) + t (a2 - a0) - u (b1 - b0) - v (b2 - b0) = b0 - a0
    cols = [[a[1][d] - a[0][d] for d in range(4)], [a[2][d] - a[0][d] for d in range(4)],
            [b[0][d] - b[1][d] for d in range(4)], [b[0][d] - b[2][d] for d in range(4)]]
    rhs = [b[0][d] - a[0][d] for d in range(4)]
    M = [[cols[j][d] for j in range(4)] + [rhs[d]] for d in range(4)]
    for c in range(4):
        r = next(i for i in range(c, 4) if M[i][c] != 0)
        M[c], M[r] = M[r], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for i in range(4):
            if i != c:
                M[i] = [x - M[i][c] * y for x, y in zip(M[i], M[c])]
    s_, t, u, v = (M[i][4] for i in range(4))
    return (1 - s_ - t, s_, t), (1 - u - v, u, v)


def test_generic_random_triangles_match_linear_solve():
    """Two generic 2-planes in R^4 meet in one point; the triangles meet iff
    that point has nonnegative barycentrics in both."""
    rng = random.Random(11)
    seen = set()
    for _ in range(300):
        c = [tuple(F(rng.randint(-1000, 1000), rng.randint(1, 50)) for _ in range(4))
             for _ in range(6)]
        la, lb = generic_meet(c[:3], c[3:])
        expected = all(x >= 0 for x in la + lb)
        res = simplex_pair_intersection((0, 1, 2), (3, 4, 5), c)
        assert (res.kind == VIOLATION) == expected
        if expected:
            assert res.witness == tuple(sum(l * p[d] for l, p in zip(la, c[:3])) for d in range(4))
        seen.add(expected)
    assert seen == {True, False}


# -- whole complexes -------------------------------------------------------------------

@pytest.mark.parametrize("text", ["<a ; a^3>", "<a, b ; 1, 1>", "<a, b ; a b a b^-1>"])
def test_realized_clean_and_matches_unpruned(text):
    rc = realize(parse(text))
    pruned = check_embedding(rc)
    full = check_embedding(rc, prune=False)
    assert pruned.clean and full.clean
    n = len(rc.complex.maximal_simplices())
    assert full.checked_pairs == n * (n - 1) // 2
    assert pruned.total_pairs == full.total_pairs
    assert pruned.checked_pairs < full.checked_pairs
    assert check_sectors(rc) == []


def test_workers_give_identical_report():
    rc = realize(parse("<a, b ; a^2 b^-1>"))
    coords = list(rc.coords)
    coords[rc.structure.gadgets[0].upper[1]] = (F(0),) * 4
    one = check_embedding((rc.complex, coords))
    three = check_embedding((rc.complex, coords), workers=3)
    assert one.violations == three.violations
    assert one.checked_pairs == three.checked_pairs


def inject_crossing(rc):
    """Add a triangle that pierces the h-disk of the first gadget."""
    K = rc.complex
    tri = [rc.coords[v] for v in rc.structure.gadgets[0].h_disk]
    centroid = tuple(sum(p[i] for p in tri) / 3 for i in range(4))
    n = K.vertex_count
    new = [(centroid[0], centroid[1], F(-1), F(-1, 7)),
           (centroid[0], centroid[1], F(1), F(1, 7)),
           (centroid[0] + 50, centroid[1] + 50, F(100), F(-100))]
    K2 = SimplicialComplex2(n + 3, K.edges + ((n, n + 1), (n, n + 2), (n + 1, n + 2)),
                            K.triangles + ((n, n + 1, n + 2),))
    return K2, list(rc.coords) + new, (n, n + 1, n + 2)


def test_injected_crossing_is_flagged_exactly():
    rc = realize(parse("<a ; a^2>"))
    K2, coords, bad = inject_crossing(rc)
    rep = check_embedding((K2, coords))
    full = check_embedding((K2, coords), prune=False)
    assert [v.simplices for v in rep.violations] == [v.simplices for v in full.violations]
    assert rep.violations
    assert all(bad in v.simplices for v in rep.violations)
    for v in rep.violations:
        assert is_true_violation(*v.simplices, coords, v.witness)


def test_pruned_equals_unpruned_on_random_complexes():
    rng = random.Random(5)
    for i in range(12):
        rc = realize(random_presentation(rng, 2, 2, 2, 2))
        coords = list(rc.coords)
        if i % 2:
            v = rng.randrange(len(coords))
            coords[v] = tuple(F(rng.randint(-2, 2), 2) for _ in range(4))
        a = check_embedding((rc.complex, coords))
        b = check_embedding((rc.complex, coords), prune=False)
        assert a.degenerate == b.degenerate
        assert [v.simplices for v in a.violations] == [v.simplices for v in b.violations]
        for v in a.violations:
            assert is_true_violation(*v.simplices, coords, v.witness)


# -- sigma condition -----------------------------------------------------------------------

def test_sigma_margins_positive():
    rc = realize(parse("<a, b ; a b, b^2>"))
    cert = check_sigma_condition(rc)
    assert cert.holds and all(m > 0 for m in cert.margins)
    (a, b), _ = rc.intervals
    assert cert.margins[0] == rc.delta_lb / (4 * F(5, 4)) - 2 * (b - a)


def test_sigma_widened_interval_flagged():
    rc = realize(parse("<a ; a^3>"))
    (a, b), = rc.intervals
    wide = replace(rc, intervals=((a, a + rc.delta_lb),))
    with pytest.raises(SigmaConditionError):
        check_sigma_condition(wide)
    cert = check_sigma_condition(wide, strict=False)
    assert not cert.holds and cert.margins[0] < 0


def test_sigma_overlapping_intervals_flagged():
    rc = realize(parse("<a ; a, a^2>"))
    I1, I2 = rc.intervals
    bad = replace(rc, intervals=(I1, I1), parameters=(rc.parameters[0], rc.parameters[0]))
    assert any("overlap" in p for p in check_sigma_condition(bad, strict=False).problems)


def test_report_json():
    rc = realize(parse("<a ; a^2>"))
    data = report_to_json(check_embedding(rc), check_sigma_condition(rc))
    assert data["clean"] and data["violations"] == []
    assert data["sigma"]["holds"]


# -- segment angle oracle ---------------------------------------------------------

@given(st.fractions(min_value=F(1, 100), max_value=100), st.fractions(min_value=F(1, 100), max_value=100))
def test_lemma2_symmetric_tent(d, z):
    apex = (F(0), F(0), z)
    assert lemma2_oracle(((-d / 2, 0, 0), apex), ((d / 2, 0, 0), apex))


def test_lemma2_shared_base_point_vacuous():
    assert lemma2_oracle(((0, 0, 0), (1, 1, 1)), ((0, 0, 0), (2, 2, 2)))


def test_lemma2_general_plane():
    plane = ((0, 0, 1), (1, 1, 0))
    assert lemma2_oracle(((1, -1, 1), (2, 1, 7)), ((-1, 1, 1), (2, 1, 7)), plane)


def test_lemma2_preconditions():
    with pytest.raises(ValueError):
        lemma2_oracle(((0, 0, 1), (0, 0, 2)), ((1, 0, 0), (0, 0, 2)))
    with pytest.raises(ValueError):
        lemma2_oracle(((0, 0, 0), (0, 0, 2)), ((1, 0, 0), (1, 0, -2)))
    with pytest.raises(ValueError):
        lemma2_oracle(((0, 0, 0), (0, 0, 2)), ((1, 0, 0), (1, 0, 2)))
