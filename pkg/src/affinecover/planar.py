"""Planarity testing, straight-line grid drawings, and dual-graph bounds.

Planarity and the shift-method coordinates are obtained from networkx;
every drawing produced here is re-certified from scratch by the exact
rational verifier before being returned, so the external library is
never trusted for correctness claims.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import networkx as nx

from .drawing import Drawing, verify_crossing_free
from .graphs import Graph, bfs_layers, to_networkx

__all__ = [
    "PlaneEmbedding",
    "TrackAssignment",
    "DualBoundResult",
    "planarity_test",
    "validate_embedding",
    "grid_drawing",
    "dual_circumference_bound",
    "tree_tracks",
    "DUAL_BUDGET_N",
]

DUAL_BUDGET_N = 14


@dataclass(frozen=True)
class PlaneEmbedding:
    """Combinatorial plane embedding.

    Attributes
    ----------
    rotation : tuple of tuples
        ``rotation[v]`` lists the neighbours of ``v`` in clockwise order.
    faces : tuple of tuples
        Each face is a vertex cycle ``(v0, v1, ..., vk-1)`` standing for
        the directed boundary edges ``(v0,v1), ..., (vk-1,v0)``.
    outer_face : int
        Index into ``faces`` of the designated unbounded face.
    """

    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]
    outer_face: int


@dataclass(frozen=True)
class TrackAssignment:
    """Assignment of vertices to integer tracks (levels)."""

    track_of: tuple[int, ...]


class DualBoundResult(NamedTuple):
    """Lower bound derived from the circumference of the dual graph."""

    lower_bound: int
    c_dual: int
    exact: bool
    cycle: tuple[int, ...]
    dual_adj: tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# planarity
# ---------------------------------------------------------------------------


def _faces_from_nx(g: Graph, emb: nx.PlanarEmbedding) -> list[tuple[int, ...]]:
    marked: set[tuple[int, int]] = set()
    faces: list[tuple[int, ...]] = []
    for v in range(g.n):
        for w in sorted(g.adj[v]):
            if (v, w) not in marked:
                face = emb.traverse_face(v, w, mark_half_edges=marked)
                faces.append(tuple(face))
    return faces


def planarity_test(g: Graph) -> PlaneEmbedding | None:
    """Return a plane embedding of ``g``, or ``None`` if none exists."""
    ok, emb = nx.check_planarity(to_networkx(g), counterexample=False)
    if not ok:
        return None
    rotation = tuple(
        tuple(emb.neighbors_cw_order(v)) if g.degree(v) > 0 else ()
        for v in range(g.n)
    )
    faces = _faces_from_nx(g, emb)
    if faces:
        outer = max(range(len(faces)), key=lambda i: (len(faces[i]), faces[i]))
    else:
        outer = 0
    embedding = PlaneEmbedding(rotation=rotation, faces=tuple(faces), outer_face=outer)
    validate_embedding(g, embedding)
    return embedding


def validate_embedding(g: Graph, emb: PlaneEmbedding) -> None:
    """Check structural sanity of an embedding; raise ``ValueError`` if bad.

    Validates that every rotation is a permutation of the neighbourhood,
    that every directed edge lies on exactly one face boundary, and that
    each connected component satisfies ``n - m + f = 2`` with the outer
    face counted.
    """
    if len(emb.rotation) != g.n:
        raise ValueError("rotation system has wrong length")
    for v in range(g.n):
        if set(emb.rotation[v]) != set(g.adj[v]) or len(emb.rotation[v]) != len(g.adj[v]):
            raise ValueError(f"rotation at vertex {v} is not a permutation of its neighbours")
    seen: dict[tuple[int, int], int] = {}
    for idx, face in enumerate(emb.faces):
        k = len(face)
        for i in range(k):
            e = (face[i], face[(i + 1) % k])
            if not g.has_edge(*e):
                raise ValueError(f"face {idx} uses non-edge {e}")
            if e in seen:
                raise ValueError(f"directed edge {e} appears on two faces")
            seen[e] = idx
    expected = {(u, v) for u, v in g.edges} | {(v, u) for u, v in g.edges}
    if set(seen) != expected:
        raise ValueError("some directed edge lies on no face")
    if not (0 <= emb.outer_face < max(1, len(emb.faces))):
        raise ValueError("outer face index out of range")
    comp_of = {}
    comps = g.components()
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    face_count = [0] * len(comps)
    for face in emb.faces:
        face_count[comp_of[face[0]]] += 1
    for ci, comp in enumerate(comps):
        n_c = len(comp)
        m_c = sum(1 for u, v in g.edges if comp_of[u] == ci)
        f_c = face_count[ci] if m_c > 0 else 1
        if n_c - m_c + f_c != 2:
            raise ValueError(f"Euler relation fails on component {ci}")


# ---------------------------------------------------------------------------
# grid drawing (shift method)
# ---------------------------------------------------------------------------


def grid_drawing(g: Graph) -> Drawing:
    """Crossing-free straight-line drawing on the integer grid.

    Coordinates lie in ``[0, 2n-4] x [0, n-2]`` for ``n >= 4``.  The
    graph must be planar; the embedding is triangulated internally and
    the extra edges are discarded afterwards.  The returned drawing has
    been certified crossing-free by the exact verifier.
    """
    ok, emb = nx.check_planarity(to_networkx(g), counterexample=False)
    if not ok:
        raise ValueError("graph is not planar")
    pos = nx.combinatorial_embedding_to_pos(emb, fully_triangulate=True)
    points = [
        (Fraction(int(pos[v][0])), Fraction(int(pos[v][1]))) for v in range(g.n)
    ]
    d = Drawing(graph=g, points=tuple(points), meta={"construction": "grid_drawing"})
    return verify_crossing_free(d)


# ---------------------------------------------------------------------------
# dual circumference bound
# ---------------------------------------------------------------------------


def _circumference(adj: list[list[int]]) -> tuple[int, list[int]]:
    """Exact longest-cycle length in a small graph, with a witness cycle.

    Anchored DFS: cycles are enumerated at their minimum vertex, with a
    reachability prune and early exit on a Hamiltonian cycle.
    """
    n = len(adj)
    best = 0
    best_cycle: list[int] = []
    onpath = [False] * n

    def reach_and_closable(w: int, s: int) -> tuple[int, bool]:
        # BFS from w over vertices not on the path; count them and check
        # whether the anchor s stays adjacent to the reachable region.
        seen = {w}
        queue = [w]
        closable = s in adj[w]
        while queue:
            u = queue.pop()
            for x in adj[u]:
                if x == s:
                    closable = True
                elif x > s and not onpath[x] and x not in seen:
                    seen.add(x)
                    queue.append(x)
        return len(seen), closable

    path: list[int] = []

    def dfs(u: int, s: int) -> None:
        nonlocal best, best_cycle
        if best == n:
            return
        for w in adj[u]:
            if w == s:
                if len(path) >= 3 and len(path) > best:
                    best = len(path)
                    best_cycle = path.copy()
            elif w > s and not onpath[w]:
                free, closable = reach_and_closable(w, s)
                if closable and len(path) + free > best:
                    onpath[w] = True
                    path.append(w)
                    dfs(w, s)
                    path.pop()
                    onpath[w] = False

    for s in range(n):
        if best == n:
            break
        onpath[s] = True
        path.append(s)
        dfs(s, s)
        path.pop()
        onpath[s] = False
    return best, best_cycle


def dual_circumference_bound(g: Graph) -> DualBoundResult:
    """Bound from the dual of a triangulation: ``ceil((2n-4)/c(dual))``.

    Requires a planar triangulation (``n >= 4`` and ``m = 3n-6``).  For
    ``n`` beyond the search budget the circumference is replaced by its
    trivial upper bound ``2n-4`` and the result is flagged inexact.
    """
    if g.n < 4 or g.m != 3 * g.n - 6:
        raise ValueError("graph is not a planar triangulation")
    emb = planarity_test(g)
    if emb is None:
        raise ValueError("graph is not a planar triangulation")
    num_faces = 2 * g.n - 4
    if g.n > DUAL_BUDGET_N:
        return DualBoundResult(
            lower_bound=1, c_dual=num_faces, exact=False, cycle=(), dual_adj=()
        )
    faces = emb.faces
    if len(faces) != num_faces or any(len(f) != 3 for f in faces):
        raise ValueError("embedding faces are not all triangles")
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for idx, face in enumerate(faces):
        for i in range(3):
            u, v = face[i], face[(i + 1) % 3]
            edge_faces.setdefault((min(u, v), max(u, v)), []).append(idx)
    dual_adj: list[list[int]] = [[] for _ in faces]
    for e, fs in edge_faces.items():
        if len(fs) != 2:
            raise ValueError(f"edge {e} does not lie on exactly two faces")
        a, b = fs
        dual_adj[a].append(b)
        dual_adj[b].append(a)
    for row in dual_adj:
        if len(row) != 3 or len(set(row)) != 3:
            raise ValueError("dual graph is not simple cubic")
        row.sort()
    c, cycle = _circumference(dual_adj)
    lower = -(-num_faces // c)
    return DualBoundResult(
        lower_bound=lower,
        c_dual=c,
        exact=True,
        cycle=tuple(cycle),
        dual_adj=tuple(tuple(r) for r in dual_adj),
    )


# ---------------------------------------------------------------------------
# tree tracks
# ---------------------------------------------------------------------------


def tree_tracks(g: Graph, root: int) -> TrackAssignment:
    """Assign each vertex of a tree its distance from ``root``.

    Every edge then spans two adjacent tracks.  Raises ``ValueError``
    for graphs that are not trees (cyclic or disconnected).
    """
    if not 0 <= root < g.n:
        raise ValueError("root out of range")
    if g.m != g.n - 1 or not g.is_connected():
        raise ValueError("input graph is not a tree")
    dist = bfs_layers(g, root)
    track_of = tuple(dist)
    for u, v in g.edges:
        if abs(track_of[u] - track_of[v]) != 1:
            raise AssertionError("tree edge must span adjacent tracks")
    return TrackAssignment(track_of=track_of)
