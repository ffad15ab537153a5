"""Tests for the exact rational geometry kernel.

Oracle notes: orientation results are cross-checked against an
independent cofactor expansion (different row order) inside the tests;
segment classification examples are small enough to verify by hand.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinecover.geometry import (
    canon_line,
    canon_plane,
    canonical_plane_through_segment,
    integerize,
    line_contains_point,
    orient,
    plane_contains_point,
    point_on_segment,
    point_strictly_inside_segment,
    qpoint,
    segments_intersect,
)


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def det2_oracle(a, b, c):
    """2x2 determinant by explicit cofactor expansion along the second row."""
    m = [[b[0] - a[0], b[1] - a[1]], [c[0] - a[0], c[1] - a[1]]]
    val = -m[1][0] * m[0][1] + m[1][1] * m[0][0]
    return (val > 0) - (val < 0)


def det3_oracle(a, b, c, d):
    """3x3 determinant by cofactor expansion along the third column."""
    rows = [
        [b[0] - a[0], b[1] - a[1], b[2] - a[2]],
        [c[0] - a[0], c[1] - a[1], c[2] - a[2]],
        [d[0] - a[0], d[1] - a[1], d[2] - a[2]],
    ]

    def minor(i):
        rs = [rows[j] for j in range(3) if j != i]
        return rs[0][0] * rs[1][1] - rs[0][1] * rs[1][0]

    val = rows[0][2] * minor(0) - rows[1][2] * minor(1) + rows[2][2] * minor(2)
    return (val > 0) - (val < 0)


# ---------------------------------------------------------------------------
# orient
# ---------------------------------------------------------------------------


def test_orient_2d_examples():
    assert orient(qpoint(0, 0), qpoint(1, 0), qpoint(0, 1)) == 1
    assert orient(qpoint(0, 0), qpoint(1, 1), qpoint(2, 2)) == 0
    assert orient(qpoint(0, 0), qpoint(0, 1), qpoint(1, 0)) == -1


def test_orient_3d_examples():
    assert orient(qpoint(0, 0, 0), qpoint(1, 0, 0), qpoint(0, 1, 0), qpoint(0, 0, 1)) == 1
    assert orient(qpoint(0, 0, 0), qpoint(1, 0, 0), qpoint(2, 0, 0), qpoint(3, 0, 0)) == 0
    assert orient(qpoint(0, 0, 0), qpoint(1, 0, 0), qpoint(0, 1, 0), qpoint(1, 1, 0)) == 0


def test_orient_dimension_mismatch():
    with pytest.raises(ValueError):
        orient(qpoint(0, 0), qpoint(1, 0, 0), qpoint(0, 1))
    with pytest.raises(ValueError):
        orient(qpoint(0, 0), qpoint(1, 0))  # wrong arity for dimension


def test_orient_agrees_with_independent_expansion_bulk():
    rng = random.Random(12345)

    def rnd():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 9))

    for _ in range(30000):
        a, b, c = (qpoint(rnd(), rnd()) for _ in range(3))
        assert orient(a, b, c) == det2_oracle(a, b, c)
    for _ in range(20000):
        a, b, c, d = (qpoint(rnd(), rnd(), rnd()) for _ in range(4))
        assert orient(a, b, c, d) == det3_oracle(a, b, c, d)


@given(st.lists(st.integers(-8, 8), min_size=6, max_size=6))
def test_orient_antisymmetry_2d(v):
    a, b, c = qpoint(v[0], v[1]), qpoint(v[2], v[3]), qpoint(v[4], v[5])
    assert orient(a, b, c) == -orient(b, a, c) == -orient(a, c, b)


# ---------------------------------------------------------------------------
# segments_intersect
# ---------------------------------------------------------------------------


def seg(*pts):
    return tuple(qpoint(*p) for p in pts)


def test_segments_proper_crossing_2d():
    a, b = seg((0, 0), (2, 2))
    c, d = seg((0, 2), (2, 0))
    assert segments_intersect(a, b, c, d) == "crossing"


def test_segments_shared_endpoint_2d():
    a, b = seg((0, 0), (1, 0))
    c, d = seg((1, 0), (2, 1))
    assert segments_intersect(a, b, c, d) == "shared_endpoint_only"


def test_segments_disjoint_parallel_3d():
    a, b = seg((0, 0, 0), (1, 0, 0))
    c, d = seg((0, 0, 1), (1, 0, 1))
    assert segments_intersect(a, b, c, d) == "disjoint"


def test_segments_collinear_overlap_is_crossing():
    a, b = seg((0, 0), (2, 0))
    c, d = seg((1, 0), (3, 0))
    assert segments_intersect(a, b, c, d) == "crossing"


def test_segments_collinear_touching_endpoints():
    a, b = seg((0, 0), (1, 0))
    c, d = seg((1, 0), (2, 0))
    assert segments_intersect(a, b, c, d) == "shared_endpoint_only"


def test_segments_endpoint_in_interior_is_crossing():
    a, b = seg((0, 0), (2, 0))
    c, d = seg((1, 0), (1, 5))
    assert segments_intersect(a, b, c, d) == "crossing"


def test_segments_interior_touch_t_shape_3d():
    a, b = seg((0, 0, 0), (2, 0, 0))
    c, d = seg((1, 0, 0), (1, 1, 1))
    assert segments_intersect(a, b, c, d) == "crossing"


def test_segments_identical_is_crossing():
    a, b = seg((0, 0), (1, 1))
    assert segments_intersect(a, b, a, b) == "crossing"


def test_segments_shared_endpoint_collinear_same_direction_overlap():
    # share endpoint (0,0) but overlap with positive length
    a, b = seg((0, 0), (2, 0))
    c, d = seg((0, 0), (1, 0))
    assert segments_intersect(a, b, c, d) == "crossing"


def test_segments_skew_3d_disjoint():
    a, b = seg((0, 0, 0), (1, 0, 0))
    c, d = seg((0, 1, 1), (1, 1, 2))
    assert segments_intersect(a, b, c, d) == "disjoint"


def test_segments_coplanar_3d_crossing():
    a, b = seg((0, 0, 0), (2, 2, 2))
    c, d = seg((0, 2, 1), (2, 0, 1))
    assert segments_intersect(a, b, c, d) == "crossing"


def test_segments_degenerate_rejected():
    p = qpoint(1, 1)
    q = qpoint(2, 2)
    with pytest.raises(ValueError):
        segments_intersect(p, p, p, q)


def test_segments_rational_near_miss_exact():
    # endpoint at (1/3, 1/3) exactly on the diagonal => crossing;
    # moving it by 1/10^12 off the line => shared nothing, disjoint.
    a, b = seg((0, 0), (1, 1))
    c = qpoint(Fraction(1, 3), Fraction(1, 3))
    d = qpoint(1, 0)
    assert segments_intersect(a, b, c, d) == "crossing"
    eps = Fraction(1, 10**12)
    c2 = qpoint(Fraction(1, 3) + eps, Fraction(1, 3))
    assert segments_intersect(a, b, c2, d) == "disjoint"


@given(st.lists(st.integers(-6, 6), min_size=8, max_size=8))
@settings(max_examples=400)
def test_segments_symmetry_2d(v):
    a, b = qpoint(v[0], v[1]), qpoint(v[2], v[3])
    c, d = qpoint(v[4], v[5]), qpoint(v[6], v[7])
    if a == b or c == d:
        return
    r = segments_intersect(a, b, c, d)
    assert r == segments_intersect(c, d, a, b)
    assert r == segments_intersect(b, a, c, d)
    assert r == segments_intersect(a, b, d, c)


@given(st.lists(st.integers(-4, 4), min_size=12, max_size=12))
@settings(max_examples=400)
def test_segments_symmetry_3d(v):
    a, b = qpoint(*v[0:3]), qpoint(*v[3:6])
    c, d = qpoint(*v[6:9]), qpoint(*v[9:12])
    if a == b or c == d:
        return
    r = segments_intersect(a, b, c, d)
    assert r == segments_intersect(c, d, a, b)
    assert r == segments_intersect(b, a, d, c)


# ---------------------------------------------------------------------------
# canonical lines and planes
# ---------------------------------------------------------------------------


def test_canon_line_same_line_examples():
    assert canon_line(qpoint(0, 0), qpoint(2, 0)) == canon_line(qpoint(5, 0), qpoint(-1, 0))
    l1 = canon_line(qpoint(0, 0, 0), qpoint(1, 2, 3))
    l2 = canon_line(qpoint(2, 4, 6), qpoint(3, 6, 9))
    assert l1 == l2


def test_canon_line_collinear_triple_subpairs_equal():
    a, b, c = qpoint(0, 1), qpoint(2, 2), qpoint(4, 3)
    assert canon_line(a, b) == canon_line(b, c) == canon_line(a, c) == canon_line(c, a)


def test_canon_line_distinct_lines_differ():
    assert canon_line(qpoint(0, 0), qpoint(1, 0)) != canon_line(qpoint(0, 1), qpoint(1, 1))
    assert canon_line(qpoint(0, 0), qpoint(1, 0)) != canon_line(qpoint(0, 0), qpoint(0, 1))


def test_canon_line_direction_is_primitive_and_lex_positive():
    line = canon_line(qpoint(0, 0), qpoint(-4, -6))
    assert line.direction == (2, 3)
    line2 = canon_line(qpoint(Fraction(1, 2), 0), qpoint(0, Fraction(1, 3)))
    # direction (−1/2, 1/3) → primitive integer (3, −2) after sign fix
    assert line2.direction == (3, -2)


def test_canon_plane_examples():
    p1 = canon_plane(qpoint(0, 0, 0), qpoint(1, 0, 0), qpoint(0, 1, 0))
    p2 = canon_plane(qpoint(3, 4, 0), qpoint(7, -2, 0), qpoint(1, 1, 0))
    assert p1 == p2
    assert p1.normal == (0, 0, 1)
    assert p1.offset == 0


def test_canon_plane_permutation_invariant():
    pts = [qpoint(1, 0, 0), qpoint(0, 2, 0), qpoint(0, 0, 3)]
    base = canon_plane(*pts)
    import itertools

    for perm in itertools.permutations(pts):
        assert canon_plane(*perm) == base


def test_canon_plane_degenerate_rejected():
    with pytest.raises(ValueError):
        canon_plane(qpoint(0, 0, 0), qpoint(1, 1, 1), qpoint(2, 2, 2))


def test_canon_scaling_invariance():
    # The canonical record must not depend on which points of the object
    # define it, nor on the scale of the defining direction vector.
    rng = random.Random(7)
    for _ in range(200):
        p = qpoint(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        q = qpoint(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        if p == q:
            continue
        s = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        # q2 = p + s*(q-p) lies on line(p,q) with a rescaled direction
        q2 = qpoint(*(pc + s * (qc - pc) for pc, qc in zip(p, q)))
        assert canon_line(p, q) == canon_line(p, q2) == canon_line(q2, p)


def test_line_and_plane_membership():
    line = canon_line(qpoint(0, 0), qpoint(2, 1))
    assert line_contains_point(line, qpoint(4, 2))
    assert line_contains_point(line, qpoint(Fraction(1), Fraction(1, 2)))
    assert not line_contains_point(line, qpoint(1, 1))

    plane = canon_plane(qpoint(0, 0, 0), qpoint(1, 0, 0), qpoint(0, 1, 0))
    assert plane_contains_point(plane, qpoint(5, -7, 0))
    assert not plane_contains_point(plane, qpoint(0, 0, Fraction(1, 10**9)))


def test_canonical_plane_through_segment():
    a, b = qpoint(0, 0, 0), qpoint(1, 0, 0)
    plane = canonical_plane_through_segment(a, b)
    assert plane_contains_point(plane, a)
    assert plane_contains_point(plane, b)
    # determinism
    assert plane == canonical_plane_through_segment(a, b)


# ---------------------------------------------------------------------------
# betweenness and integerization
# ---------------------------------------------------------------------------


def test_point_on_segment():
    a, b = qpoint(0, 0), qpoint(4, 2)
    assert point_on_segment(qpoint(2, 1), a, b)
    assert point_on_segment(a, a, b)
    assert not point_on_segment(qpoint(6, 3), a, b)
    assert point_strictly_inside_segment(qpoint(2, 1), a, b)
    assert not point_strictly_inside_segment(a, a, b)
    assert not point_strictly_inside_segment(qpoint(1, 1), a, b)


def test_integerize_preserves_predicates():
    pts = [
        qpoint(Fraction(1, 3), Fraction(1, 2)),
        qpoint(Fraction(2, 3), Fraction(3, 2)),
        qpoint(Fraction(1, 6), 1),
    ]
    ints, scale = integerize(pts)
    assert scale > 0
    assert all(isinstance(x, int) for p in ints for x in p)
    assert orient(*pts) == orient(*[qpoint(*p) for p in ints])
    for p, ip in zip(pts, ints):
        assert [x * scale for x in p] == list(ip)
