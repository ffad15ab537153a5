"""Drawings, the exact crossing-free verifier, and drawing measurements.

A :class:`Drawing` pairs a graph with exact rational vertex points in
2D or 3D.  ``verify_crossing_free`` certifies that the straight-line
drawing has no forbidden contact between edges or between a vertex and
a non-incident edge; every measurement (line/plane covers, segments,
slopes) requires a verified drawing.

Measuring the lines of a drawing needs no search (each edge forces its
supporting line); vertex line covers and edge plane covers are genuine
set-cover problems, solved exactly within budget and greedily above it,
with the result flagged accordingly.

Every successfully verified 3D drawing is appended to a module-level
audit log together with its exact edge-separator arithmetic checks, so
a test sweep can assert the invariants over everything the test session
ever verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple, Sequence

from .geometry import (
    CanonLine,
    CanonPlane,
    canon_line,
    canon_plane,
    canonical_plane_through_segment,
    integerize,
    line_contains_point,
    plane_contains_point,
    qpoint,
)
from .geometry import (
    _collinear,
    _segments_intersect_2d,
    _segments_intersect_3d,
    point_strictly_inside_segment,
)
from .graphs import Graph, es_count

WITNESS_KINDS = (
    "lines_for_edges",
    "lines_for_vertices",
    "planes_for_edges",
    "planes_for_vertices",
    "parallel_lines",
)

_VERTEX_KINDS = ("lines_for_vertices", "planes_for_vertices", "parallel_lines")
_LINE_KINDS = ("lines_for_edges", "lines_for_vertices", "parallel_lines")


class DrawingViolation(Exception):
    """Crossing-freeness failure; ``violation`` is the first offending
    pair: ("edge_edge", e, f) or ("vertex_edge", v, e)."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"drawing violation: {violation}")


class WitnessViolation(ValueError):
    """A cover witness does not certify what it claims."""


@dataclass(frozen=True)
class Drawing:
    """A straight-line drawing: graph plus one exact point per vertex."""

    graph: Graph
    points: tuple
    meta: dict = field(default_factory=dict)
    verified: bool = False

    def __post_init__(self):
        g, pts = self.graph, self.points
        if g.n < 1:
            raise ValueError("drawings need at least one vertex")
        if len(pts) != g.n:
            raise ValueError(f"{g.n} vertices but {len(pts)} points")
        pts = tuple(qpoint(*p) for p in pts)
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("all points must share one dimension")
        if len(set(pts)) != len(pts):
            seen = {}
            for v, p in enumerate(pts):
                if p in seen:
                    raise ValueError(f"vertices {seen[p]} and {v} share point {p}")
                seen[p] = v
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True)
class CoverWitness:
    """A geometric cover: objects plus an item-to-object assignment.

    ``kind`` decides the items: edge tuples for *_for_edges kinds,
    vertex indices for *_for_vertices and parallel_lines.  ``exact`` is
    False when the count came from a greedy fallback rather than an
    exact search.
    """

    kind: str
    objects: tuple
    assignment: dict
    exact: bool = True

    @property
    def count(self) -> int:
        return len(self.objects)


class EssRecord(NamedTuple):
    """Audit entry: exact edge-separator arithmetic on a 3D drawing."""

    label: str
    n: int
    m: int
    es: int
    line_count: int
    ok_a: bool
    ok_b: bool

    @property
    def ok(self) -> bool:
        return self.ok_a and self.ok_b


_ESS_AUDIT: list = []


def ess_audit_log() -> tuple:
    return tuple(_ESS_AUDIT)


def reset_ess_audit() -> None:
    _ESS_AUDIT.clear()


def _distinct_edge_lines(d: Drawing) -> dict:
    """Map canonical line -> sorted list of edges lying on it."""
    lines = {}
    for e in sorted(d.graph.edges):
        u, v = e
        lines.setdefault(canon_line(d.points[u], d.points[v]), []).append(e)
    return lines


def _ess_checks(d: Drawing) -> EssRecord:
    g = d.graph
    es = es_count(g)
    count = len(_distinct_edge_lines(d))
    ok_a = 2 * es <= count * (count - 1)
    if g.m >= g.n >= 1:
        ok_b = g.n * count * count > g.m * (g.m - g.n)
    else:
        ok_b = True
    label = str(d.meta.get("label", d.meta.get("construction", "")))
    return EssRecord(label, g.n, g.m, es, count, ok_a, ok_b)


# ---------------------------------------------------------------------------
# verifier
# ---------------------------------------------------------------------------


def verify_crossing_free(d: Drawing) -> Drawing:
    """Certify crossing-freeness; returns a copy with the verified flag.

    Checks, in deterministic order: every pair of distinct edges
    (lexicographic) classifies as disjoint (no shared vertex) or
    shared_endpoint_only (adjacent edges); then no vertex point lies
    strictly inside any non-incident edge (vertex-major order).  Raises
    :class:`DrawingViolation` carrying the first offending pair.
    """
    g = d.graph
    ipts, _ = integerize(d.points)
    dim = d.dim
    intersect = _segments_intersect_2d if dim == 2 else _segments_intersect_3d
    edges = sorted(g.edges)
    boxes = []
    for u, v in edges:
        p, q = ipts[u], ipts[v]
        boxes.append(tuple((min(a, b), max(a, b)) for a, b in zip(p, q)))
    for i in range(len(edges)):
        e = edges[i]
        be = boxes[i]
        for j in range(i + 1, len(edges)):
            f = edges[j]
            shared = len(set(e) & set(f))
            if shared == 0:
                bf = boxes[j]
                if any(be[k][1] < bf[k][0] or bf[k][1] < be[k][0] for k in range(dim)):
                    continue
            rel = intersect(ipts[e[0]], ipts[e[1]], ipts[f[0]], ipts[f[1]])
            expected = "shared_endpoint_only" if shared else "disjoint"
            if rel != expected:
                raise DrawingViolation(("edge_edge", e, f))
    for v in range(g.n):
        p = ipts[v]
        for i, e in enumerate(edges):
            if v in e:
                continue
            be = boxes[i]
            if any(p[k] < be[k][0] or p[k] > be[k][1] for k in range(dim)):
                continue
            if point_strictly_inside_segment(p, ipts[e[0]], ipts[e[1]]):
                raise DrawingViolation(("vertex_edge", v, e))
    out = replace(d, verified=True)
    if dim == 3:
        _ESS_AUDIT.append(_ess_checks(out))
    return out


def _require_verified(d: Drawing) -> None:
    if not d.verified:
        raise ValueError("measurement requires a verified drawing")


# ---------------------------------------------------------------------------
# measurements
# ---------------------------------------------------------------------------


def edge_line_count(d: Drawing) -> tuple:
    """Number of distinct supporting lines over all edges, plus witness.

    This is the exact minimum line cover of the edges of this drawing:
    each edge forces its supporting line, so no search is involved.
    """
    _require_verified(d)
    lines = _distinct_edge_lines(d)
    objects = tuple(lines.keys())
    index = {line: i for i, line in enumerate(objects)}
    assignment = {e: index[line] for line, es in lines.items() for e in es}
    return len(objects), CoverWitness("lines_for_edges", objects, assignment)


def greedy_set_cover(masks: Sequence[int], full: int) -> list:
    """Greedy cover of the bitmask universe; deterministic tie-breaks."""
    chosen = []
    uncovered = full
    while uncovered:
        best, best_gain = -1, 0
        for i, mk in enumerate(masks):
            gain = (mk & uncovered).bit_count()
            if gain > best_gain:
                best, best_gain = i, gain
        if best < 0:
            raise ValueError("universe not coverable by the candidate sets")
        chosen.append(best)
        uncovered &= ~masks[best]
    return chosen


def exact_set_cover(masks: Sequence[int], full: int, node_cap: int = 2_000_000) -> tuple:
    """Exact minimum set cover by branch and bound over bitmasks.

    Returns (chosen_indices, exact_flag); when the node cap is
    exhausted the incumbent (a valid cover) is returned flagged.
    """
    keep = []
    for i, mk in enumerate(masks):
        dominated = False
        for j, other in enumerate(masks):
            if i == j:
                continue
            if mk & ~other == 0 and (mk != other or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    incumbent = [keep[k] for k in greedy_set_cover([masks[i] for i in keep], full)]
    best = {"cover": incumbent, "size": len(incumbent)}
    nodes = {"count": 0, "capped": False}

    def dfs(uncovered: int, chosen: list) -> None:
        if nodes["capped"]:
            return
        nodes["count"] += 1
        if nodes["count"] > node_cap:
            nodes["capped"] = True
            return
        if not uncovered:
            if len(chosen) < best["size"]:
                best["cover"] = list(chosen)
                best["size"] = len(chosen)
            return
        if len(chosen) + 1 >= best["size"]:
            max_gain = 0
            for i in keep:
                gain = (masks[i] & uncovered).bit_count()
                if gain > max_gain:
                    max_gain = gain
            if max_gain == 0 or len(chosen) + -(-uncovered.bit_count() // max_gain) >= best["size"]:
                return
        else:
            max_gain = max((masks[i] & uncovered).bit_count() for i in keep)
            if len(chosen) + -(-uncovered.bit_count() // max_gain) >= best["size"]:
                return
        pivot = uncovered & -uncovered  # lowest uncovered element
        branches = sorted(
            (i for i in keep if masks[i] & pivot),
            key=lambda i: (-(masks[i] & uncovered).bit_count(), i),
        )
        for i in branches:
            chosen.append(i)
            dfs(uncovered & ~masks[i], chosen)
            chosen.pop()

    dfs(full, [])
    return best["cover"], not nodes["capped"]


def _cover_witness(kind: str, objects: Sequence, object_items: Sequence[set], chosen: list,
                   exact: bool) -> CoverWitness:
    picked = sorted(chosen)
    out_objects = tuple(objects[i] for i in picked)
    assignment = {}
    for new_idx, i in enumerate(picked):
        for item in sorted(object_items[i]):
            assignment.setdefault(item, new_idx)
    return CoverWitness(kind, out_objects, assignment, exact)


def min_vertex_line_cover(d: Drawing, budget_n: int = 40) -> tuple:
    """Exact minimum number of lines through all vertex points.

    Candidates are the lines through all vertex pairs (complete for
    n >= 2); a single vertex gets a line in the first basis direction.
    Above the vertex budget the greedy bound is returned, flagged.
    """
    _require_verified(d)
    g = d.graph
    if g.n == 1:
        p = d.points[0]
        e1 = tuple(1 if i == 0 else 0 for i in range(d.dim))
        line = canon_line(p, qpoint(*(a + b for a, b in zip(p, e1))))
        return 1, CoverWitness("lines_for_vertices", (line,), {0: 0})
    members: dict = {}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            line = canon_line(d.points[u], d.points[v])
            members.setdefault(line, set()).update((u, v))
    objects = sorted(members.keys())
    sets = [members[line] for line in objects]
    masks = [sum(1 << v for v in s) for s in sets]
    full = (1 << g.n) - 1
    if g.n <= budget_n:
        chosen, exact = exact_set_cover(masks, full)
    else:
        chosen, exact = greedy_set_cover(masks, full), False
    w = _cover_witness("lines_for_vertices", objects, sets, chosen, exact)
    return w.count, w


def min_edge_plane_cover(d: Drawing, budget_m: int = 60) -> tuple:
    """Exact minimum number of planes containing all edge segments.

    Candidate planes are spanned by an edge plus a third vertex (a
    plane covering two or more edges always contains such a triple);
    an edge all other vertices are collinear with gets one canonical
    plane of its own.  Above the edge budget: greedy, flagged.
    """
    _require_verified(d)
    if d.dim != 3:
        raise ValueError("edge plane covers exist only for 3D drawings")
    g = d.graph
    edges = sorted(g.edges)
    if not edges:
        return 0, CoverWitness("planes_for_edges", (), {})
    candidates = {}
    for u, v in edges:
        spanned = False
        for w in range(g.n):
            if w in (u, v):
                continue
            if _collinear(d.points[u], d.points[v], d.points[w]):
                continue
            spanned = True
            candidates.setdefault(canon_plane(d.points[u], d.points[v], d.points[w]), set())
        if not spanned:
            candidates.setdefault(canonical_plane_through_segment(d.points[u], d.points[v]), set())
    for plane, covered in candidates.items():
        for e in edges:
            if plane_contains_point(plane, d.points[e[0]]) and plane_contains_point(
                plane, d.points[e[1]]
            ):
                covered.add(e)
    objects = sorted(candidates.keys())
    sets = [candidates[pl] for pl in objects]
    eidx = {e: i for i, e in enumerate(edges)}
    masks = [sum(1 << eidx[e] for e in s) for s in sets]
    full = (1 << len(edges)) - 1
    if g.m <= budget_m:
        chosen, exact = exact_set_cover(masks, full)
    else:
        chosen, exact = greedy_set_cover(masks, full), False
    w = _cover_witness("planes_for_edges", objects, sets, chosen, exact)
    return w.count, w


def segment_slope_count(d: Drawing) -> tuple:
    """(segments, slopes): maximal collinear connected edge paths and
    distinct edge directions of a verified 2D drawing."""
    _require_verified(d)
    if d.dim != 2:
        raise ValueError("segments/slopes are 2D measurements")
    lines = _distinct_edge_lines(d)
    segments = 0
    for es in lines.values():
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in es:
            parent[e] = e
        by_vertex: dict = {}
        for e in es:
            for v in e:
                other = by_vertex.setdefault(v, e)
                ra, rb = find(other), find(e)
                if ra != rb:
                    parent[ra] = rb
        segments += len({find(e) for e in es})
    slopes = {line.direction for line in lines}
    return segments, len(slopes)


@dataclass(frozen=True)
class KnReport:
    ok: bool
    violations: tuple


def _strictly_inside_triangle(x, a, b, c, normal) -> bool:
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    from .geometry import orient

    pa, pb, pc, px = (tuple(p[k] for k in keep) for p in (a, b, c, x))
    s1 = orient(pa, pb, px)
    s2 = orient(pb, pc, px)
    s3 = orient(pc, pa, px)
    return s1 != 0 and s1 == s2 == s3


def kn_structural_checks(d: Drawing, w: CoverWitness) -> KnReport:
    """Structural sanity of a plane cover of a complete graph drawing.

    Every plane with exactly four assigned vertices must hold one point
    strictly inside the triangle of the other three; no two four-vertex
    planes may share three or more vertices; no plane may geometrically
    contain five or more vertex points.  A violation on a verified
    drawing indicates a kernel bug.
    """
    _require_verified(d)
    g = d.graph
    if g.m != g.n * (g.n - 1) // 2:
        raise ValueError("structural checks apply to complete graphs only")
    if w.kind != "planes_for_edges":
        raise ValueError("expected a planes_for_edges witness")
    assigned: dict = {i: set() for i in range(len(w.objects))}
    for e, i in w.assignment.items():
        assigned[i].update(e)
    violations = []
    four_planes = {}
    for i, verts in assigned.items():
        if len(verts) == 4:
            four_planes[i] = verts
            pts = [d.points[v] for v in sorted(verts)]
            normal = w.objects[i].normal
            inside = [
                v
                for k, v in enumerate(sorted(verts))
                if _strictly_inside_triangle(
                    pts[k], *(pts[j] for j in range(4) if j != k), normal
                )
            ]
            if len(inside) != 1:
                violations.append((i, tuple(sorted(verts)), "no unique interior point"))
    for i in four_planes:
        for j in four_planes:
            if i < j and len(four_planes[i] & four_planes[j]) >= 3:
                violations.append(
                    (i, tuple(sorted(four_planes[i] & four_planes[j])), f"shares 3+ vertices with plane {j}")
                )
    for i, plane in enumerate(w.objects):
        on_plane = [v for v in range(g.n) if plane_contains_point(plane, d.points[v])]
        if len(on_plane) >= 5:
            violations.append((i, tuple(on_plane), "plane contains 5+ vertex points"))
    return KnReport(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# witness validation
# ---------------------------------------------------------------------------


def verify_cover_witness(d: Drawing, w: CoverWitness) -> None:
    """Check a cover witness against a verified drawing; raise on failure."""
    _require_verified(d)
    if w.kind not in WITNESS_KINDS:
        raise WitnessViolation(f"unknown witness kind {w.kind!r}")
    g = d.graph
    want_line = w.kind in _LINE_KINDS
    for obj in w.objects:
        if want_line and not isinstance(obj, CanonLine):
            raise WitnessViolation("line witness holds a non-line object")
        if not want_line and not isinstance(obj, CanonPlane):
            raise WitnessViolation("plane witness holds a non-plane object")
        if want_line and obj.dim != d.dim:
            raise WitnessViolation("line dimension does not match drawing")
    if not want_line and d.dim != 3:
        raise WitnessViolation("plane witness on a 2D drawing")
    items = set(g.edges) if w.kind.endswith("for_edges") else set(range(g.n))
    if set(w.assignment.keys()) != items:
        raise WitnessViolation("assignment does not cover every item exactly")
    for item, idx in w.assignment.items():
        if not 0 <= idx < len(w.objects):
            raise WitnessViolation(f"object index {idx} out of range")
        obj = w.objects[idx]
        if w.kind.endswith("for_edges"):
            u, v = item
            pts = (d.points[u], d.points[v])
        else:
            pts = (d.points[item],)
        for p in pts:
            ok = line_contains_point(obj, p) if want_line else plane_contains_point(obj, p)
            if not ok:
                raise WitnessViolation(f"item {item} not contained in object {idx}")
    if w.kind == "parallel_lines":
        dirs = {obj.direction for obj in w.objects}
        if len(dirs) > 1:
            raise WitnessViolation("parallel witness uses non-parallel lines")
