"""Exact rational geometry kernel.

Points are tuples of ``fractions.Fraction`` in dimension 2 or 3.  Every
predicate here is exact: orientation signs, segment intersection
classification, and membership in lines/planes are decided with integer
and rational arithmetic only, no epsilons.  Crossing-freeness and
"edge lies on this line/plane" are equality statements, so floating
point could not certify them.

Canonical forms let covering objects be deduplicated: any two point
pairs spanning the same line map to the identical :class:`CanonLine`
record, and any two non-collinear triples spanning the same plane map
to the identical :class:`CanonPlane` record.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

QPoint = tuple  # tuple of Fraction, length 2 or 3

DISJOINT = "disjoint"
SHARED_ENDPOINT_ONLY = "shared_endpoint_only"
CROSSING = "crossing"


def qpoint(*coords) -> QPoint:
    """Build an exact rational point from ints/Fractions/strings."""
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    if len(coords) not in (2, 3):
        raise ValueError(f"points must have dimension 2 or 3, got {len(coords)}")
    return tuple(Fraction(c) for c in coords)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _check_common_dimension(points: Sequence[QPoint]) -> int:
    dim = len(points[0])
    if any(len(p) != dim for p in points):
        raise ValueError("dimension mismatch between points")
    return dim


def orient(*points: QPoint) -> int:
    """Sign of the orientation determinant of 3 points (2D) or 4 points (3D).

    Returns 0 iff the points are collinear (2D) / coplanar (3D).
    """
    dim = _check_common_dimension(points)
    if dim == 2:
        if len(points) != 3:
            raise ValueError("orient in 2D takes exactly 3 points")
        a, b, c = points
        return _sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    if len(points) != 4:
        raise ValueError("orient in 3D takes exactly 4 points")
    a, b, c, d = points
    ux, uy, uz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    vx, vy, vz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    wx, wy, wz = d[0] - a[0], d[1] - a[1], d[2] - a[2]
    det = (
        ux * (vy * wz - vz * wy)
        - uy * (vx * wz - vz * wx)
        + uz * (vx * wy - vy * wx)
    )
    return _sign(det)


def _sub(a: QPoint, b: QPoint):
    return tuple(x - y for x, y in zip(a, b))


def _cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _is_zero(v) -> bool:
    return all(x == 0 for x in v)


def _collinear(a: QPoint, b: QPoint, c: QPoint) -> bool:
    """True iff the three points (2D or 3D) lie on one line."""
    if len(a) == 2:
        return orient(a, b, c) == 0
    return _is_zero(_cross3(_sub(b, a), _sub(c, a)))


def point_on_segment(p: QPoint, a: QPoint, b: QPoint) -> bool:
    """Exact: p lies on the closed segment [a, b]."""
    if not _collinear(a, b, p):
        return False
    # compare along the dominant axis of the direction
    d = _sub(b, a)
    axis = max(range(len(d)), key=lambda i: abs(d[i]))
    lo, hi = sorted((a[axis], b[axis]))
    return lo <= p[axis] <= hi


def point_strictly_inside_segment(p: QPoint, a: QPoint, b: QPoint) -> bool:
    """Exact: p lies on segment [a, b] but is neither endpoint."""
    if not _collinear(a, b, p):
        return False
    d = _sub(b, a)
    axis = max(range(len(d)), key=lambda i: abs(d[i]))
    lo, hi = sorted((a[axis], b[axis]))
    return lo < p[axis] < hi


def _collinear_segments_relation(a, b, c, d) -> str:
    """All four points on one line: classify by 1D interval overlap."""
    dirv = _sub(b, a)
    axis = max(range(len(dirv)), key=lambda i: abs(dirv[i]))
    a1, a2 = sorted((a[axis], b[axis]))
    b1, b2 = sorted((c[axis], d[axis]))
    lo, hi = max(a1, b1), min(a2, b2)
    if lo > hi:
        return DISJOINT
    if lo < hi:
        return CROSSING  # overlap of positive length
    # single shared coordinate value: for proper segments this is an
    # endpoint of both segments
    return SHARED_ENDPOINT_ONLY


def _segments_intersect_2d(a, b, c, d) -> str:
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return CROSSING  # proper interior crossing
    if d1 == 0 and d2 == 0:
        return _collinear_segments_relation(a, b, c, d)
    touch = None
    if d1 == 0 and point_on_segment(a, c, d):
        touch = a
    elif d2 == 0 and point_on_segment(b, c, d):
        touch = b
    elif d3 == 0 and point_on_segment(c, a, b):
        touch = c
    elif d4 == 0 and point_on_segment(d, a, b):
        touch = d
    if touch is None:
        return DISJOINT
    if touch in (a, b) and touch in (c, d):
        return SHARED_ENDPOINT_ONLY
    return CROSSING  # an endpoint interior to the other segment


def _segments_intersect_3d(a, b, c, d) -> str:
    if orient(a, b, c, d) != 0:
        return DISJOINT  # bounding lines are skew: no common point at all
    # coplanar: reduce to 2D by dropping the dominant axis of a plane normal
    u = _sub(b, a)
    v = _sub(d, c)
    n = _cross3(u, v)
    if _is_zero(n):
        n = _cross3(u, _sub(c, a))
    if _is_zero(n):
        return _collinear_segments_relation(a, b, c, d)
    drop = max(range(3), key=lambda i: abs(n[i]))
    keep = [i for i in range(3) if i != drop]
    proj = lambda p: (p[keep[0]], p[keep[1]])  # noqa: E731
    return _segments_intersect_2d(proj(a), proj(b), proj(c), proj(d))


def segments_intersect(a: QPoint, b: QPoint, c: QPoint, d: QPoint) -> str:
    """Classify how segments [a,b] and [c,d] meet.

    Returns one of ``"disjoint"``, ``"shared_endpoint_only"``,
    ``"crossing"``.  Sharing exactly one point that is an endpoint of
    both segments is the only contact that counts as
    ``shared_endpoint_only``; every other nonempty intersection
    (interior crossing, collinear overlap of positive length, interior
    touch, endpoint inside the other segment, identical segments) is
    ``crossing``.
    """
    dim = _check_common_dimension((a, b, c, d))
    if a == b or c == d:
        raise ValueError("degenerate (zero-length) segment")
    if dim == 2:
        return _segments_intersect_2d(a, b, c, d)
    return _segments_intersect_3d(a, b, c, d)


# ---------------------------------------------------------------------------
# canonical lines and planes
# ---------------------------------------------------------------------------


class CanonLine(NamedTuple):
    """Canonical record of an affine line in 2D or 3D.

    ``direction`` is the primitive integer direction vector with the
    first nonzero component positive; ``base`` is the unique point of
    the line whose coordinate at the direction's pivot axis is zero.
    """

    dim: int
    direction: tuple
    base: tuple


class CanonPlane(NamedTuple):
    """Canonical record of an affine plane in 3D.

    ``normal`` is the primitive integer normal with the first nonzero
    component positive; the plane is {p : normal · p = offset}.
    """

    normal: tuple
    offset: Fraction


def _primitive_int_vector(v: Sequence[Fraction]) -> tuple:
    """Scale a nonzero rational vector to a primitive (gcd 1) integer
    vector whose first nonzero component is positive."""
    denoms = [x.denominator for x in v]
    scale = math.lcm(*denoms)
    ints = [int(x * scale) for x in v]
    g = math.gcd(*(abs(x) for x in ints))
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def canon_line(p: QPoint, q: QPoint) -> CanonLine:
    """Canonical form of the line through two distinct points."""
    dim = _check_common_dimension((p, q))
    if p == q:
        raise ValueError("degenerate line: identical points")
    d = _primitive_int_vector([Fraction(x) for x in _sub(q, p)])
    pivot = next(i for i in range(dim) if d[i] != 0)
    t = Fraction(p[pivot], d[pivot])
    base = tuple(Fraction(p[i]) - t * d[i] for i in range(dim))
    return CanonLine(dim, d, base)


def canon_plane(p: QPoint, q: QPoint, r: QPoint) -> CanonPlane:
    """Canonical form of the plane through three non-collinear 3D points."""
    dim = _check_common_dimension((p, q, r))
    if dim != 3:
        raise ValueError("planes exist only in dimension 3")
    n = _cross3(_sub(q, p), _sub(r, p))
    if _is_zero(n):
        raise ValueError("degenerate plane: collinear points")
    n = _primitive_int_vector([Fraction(x) for x in n])
    offset = sum(Fraction(ni) * Fraction(pi) for ni, pi in zip(n, p))
    return CanonPlane(n, offset)


def line_contains_point(line: CanonLine, p: QPoint) -> bool:
    if len(p) != line.dim:
        raise ValueError("dimension mismatch")
    rel = _sub(p, line.base)
    d = line.direction
    if line.dim == 2:
        return rel[0] * d[1] - rel[1] * d[0] == 0
    return _is_zero(_cross3(rel, d))


def plane_contains_point(plane: CanonPlane, p: QPoint) -> bool:
    if len(p) != 3:
        raise ValueError("dimension mismatch")
    return sum(n * x for n, x in zip(plane.normal, p)) == plane.offset


def plane_contains_segment(plane: CanonPlane, a: QPoint, b: QPoint) -> bool:
    return plane_contains_point(plane, a) and plane_contains_point(plane, b)


def canonical_plane_through_segment(a: QPoint, b: QPoint) -> CanonPlane:
    """A deterministic plane containing segment [a, b] in 3D.

    Used when a covering plane must be spanned by a single edge: the
    third spanning point is a + e_i for the first coordinate axis e_i
    not parallel to the segment.
    """
    d = _sub(b, a)
    for i in range(3):
        e = tuple(Fraction(1) if j == i else Fraction(0) for j in range(3))
        if not _is_zero(_cross3(d, e)):
            third = tuple(x + y for x, y in zip(a, e))
            return canon_plane(a, b, third)
    raise ValueError("degenerate segment")


def integerize(points: Iterable[QPoint]) -> tuple[list[tuple], int]:
    """Scale a point set by the common denominator so all coordinates are int.

    Returns ``(int_points, scale)`` with every coordinate multiplied by
    the positive integer ``scale``.  Uniform positive scaling preserves
    every incidence and ordering predicate, so verification can run in
    pure integer arithmetic.
    """
    pts = [tuple(Fraction(c) for c in p) for p in points]
    scale = 1
    for p in pts:
        for c in p:
            scale = math.lcm(scale, c.denominator)
    return [tuple(int(c * scale) for c in p) for p in pts], scale
