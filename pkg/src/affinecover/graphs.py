"""Graph representation, named graph families, and structural predicates.

Vertices are dense 0-based indices; edges are stored as sorted pairs.
Family constructors document their vertex numbering so that drawings
built on top of them are reproducible byte-for-byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

FAMILY_KINDS = (
    "complete",
    "complete_bipartite",
    "cycle",
    "path",
    "nested_triangles",
    "nested_squares",
    "c4_prism_stack",
    "complete_binary_tree",
    "caterpillar",
    "balanced_multipartite",
)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        norm = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) endpoint out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list:
        seen = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def induced(self, part: Iterable[int]) -> "Graph":
        """Induced subgraph re-indexed densely in sorted vertex order."""
        verts = sorted(set(part))
        idx = {v: i for i, v in enumerate(verts)}
        edges = [
            (idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx
        ]
        return Graph(len(verts), edges)


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family instance: kind plus integer parameters."""

    kind: str
    params: tuple

    def __init__(self, kind: str, params: Sequence[int]):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", tuple(int(p) for p in params))


# ---------------------------------------------------------------------------
# family constructors
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(p: int, q: int) -> Graph:
    """K_{p,q} with the size-p class on vertices 0..p-1, requires p <= q."""
    if p < 1 or q < 1:
        raise ValueError("complete bipartite needs p, q >= 1")
    if p > q:
        raise ValueError("complete bipartite requires p <= q")
    return Graph(p + q, ((i, p + j) for i in range(p) for j in range(q)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex (u, v) maps to index u*h.n + v."""
    edges = []
    for u in range(g.n):
        for a, b in h.edges:
            edges.append((u * h.n + a, u * h.n + b))
    for v in range(h.n):
        for a, b in g.edges:
            edges.append((a * h.n + v, b * h.n + v))
    return Graph(g.n * h.n, edges)


def nested_triangles(k: int) -> Graph:
    """k nested triangles (product of a k-path with a triangle).

    Ring-major numbering: ring i occupies vertices 3i..3i+2.
    """
    if k < 1:
        raise ValueError("nested_triangles needs k >= 1")
    return cartesian_product(path_graph(k), cycle_graph(3))


def nested_squares(k: int) -> Graph:
    """k nested 4-cycles joined by centrally-symmetric diagonal connectors.

    Ring-major numbering: ring i occupies vertices 4i..4i+3, corners
    counterclockwise starting from the (+,+) corner.  Consecutive rings
    are joined at corners {0,2} when the inner ring index is even and
    at corners {1,3} when it is odd, so every vertex has degree <= 3.
    """
    if k < 1:
        raise ValueError("nested_squares needs k >= 1")
    edges = []
    for i in range(k):
        for c in range(4):
            edges.append((4 * i + c, 4 * i + (c + 1) % 4))
    for i in range(k - 1):
        corners = (0, 2) if i % 2 == 0 else (1, 3)
        for c in corners:
            edges.append((4 * i + c, 4 * (i + 1) + c))
    return Graph(4 * k, edges)


def c4_prism_stack(k: int) -> Graph:
    """Product of a k-path with a 4-cycle; ring-major numbering."""
    if k < 1:
        raise ValueError("c4_prism_stack needs k >= 1")
    return cartesian_product(path_graph(k), cycle_graph(4))


def complete_binary_tree(h: int) -> Graph:
    """Complete binary tree of height h in heap order (children 2v+1, 2v+2)."""
    if h < 0:
        raise ValueError("complete_binary_tree needs height h >= 0")
    n = 2 ** (h + 1) - 1
    return Graph(n, [(v, c) for v in range(n) for c in (2 * v + 1, 2 * v + 2) if c < n])


def caterpillar(spine: int, leaf_counts: Sequence[int]) -> Graph:
    """Spine path 0..spine-1; leaves appended in spine order."""
    if spine < 1 or len(leaf_counts) != spine or any(c < 0 for c in leaf_counts):
        raise ValueError("caterpillar needs spine >= 1 and one leaf count per spine vertex")
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i, cnt in enumerate(leaf_counts):
        for _ in range(cnt):
            edges.append((i, nxt))
            nxt += 1
    return Graph(nxt, edges)


def balanced_multipartite(r: int, n: int) -> Graph:
    """Complete r-partite graph on n vertices, class sizes as equal as
    possible; class-major numbering with the larger classes first."""
    if r < 1 or n < r:
        raise ValueError("balanced_multipartite needs 1 <= r <= n")
    base, extra = divmod(n, r)
    sizes = [base + 1] * extra + [base] * (r - extra)
    starts = [sum(sizes[:i]) for i in range(r)]
    classes = [range(starts[i], starts[i] + sizes[i]) for i in range(r)]
    edges = []
    for i, j in itertools.combinations(range(r), 2):
        edges.extend((u, v) for u in classes[i] for v in classes[j])
    return Graph(n, edges)


def multipartite_classes(r: int, n: int) -> list:
    """The vertex classes matching balanced_multipartite's numbering."""
    base, extra = divmod(n, r)
    sizes = [base + 1] * extra + [base] * (r - extra)
    out = []
    at = 0
    for s in sizes:
        out.append(list(range(at, at + s)))
        at += s
    return out


def triangulated_square_wheel() -> Graph:
    """9-vertex planar triangulation: hub 0 joined to an 8-cycle rim.

    Rim vertices 1..8 in cyclic order (odd indices are the corners of a
    square, even indices its edge midpoints); the four corner chords and
    one corner diagonal triangulate the outside of the wheel.  A planar
    triangulation that needs three linear-forest classes.
    """
    rim = [(i, i % 8 + 1) for i in range(1, 9)]
    hub = [(0, i) for i in range(1, 9)]
    chords = [(1, 3), (3, 5), (5, 7), (1, 7), (3, 7)]
    return Graph(9, rim + hub + chords)


def build_family(spec: FamilySpec) -> Graph:
    kind, params = spec.kind, spec.params
    try:
        if kind == "complete":
            return complete_graph(*params)
        if kind == "complete_bipartite":
            return complete_bipartite(*params)
        if kind == "cycle":
            return cycle_graph(*params)
        if kind == "path":
            return path_graph(*params)
        if kind == "nested_triangles":
            return nested_triangles(*params)
        if kind == "nested_squares":
            return nested_squares(*params)
        if kind == "c4_prism_stack":
            return c4_prism_stack(*params)
        if kind == "complete_binary_tree":
            return complete_binary_tree(*params)
        if kind == "caterpillar":
            return caterpillar(params[0], params[1:])
        if kind == "balanced_multipartite":
            return balanced_multipartite(*params)
    except TypeError as exc:
        raise ValueError(f"bad parameter count for family {kind!r}: {params}") from exc
    raise ValueError(f"unknown family kind {kind!r}")


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------


def essential_vertices(g: Graph) -> frozenset:
    """Vertices of degree >= 3 or belonging to a triangle."""
    ess = {v for v in range(g.n) if g.degree(v) >= 3}
    for u, v in g.edges:
        if u in ess and v in ess:
            continue
        if g.adj[u] & g.adj[v]:
            ess.add(u)
            ess.add(v)
    return frozenset(ess)


def es_count(g: Graph) -> int:
    return len(essential_vertices(g))


def is_linear_forest(g: Graph, part: Iterable[int]) -> bool:
    """True iff the subgraph induced by ``part`` is a union of paths."""
    part = set(part)
    if not part <= set(range(g.n)):
        raise ValueError("part contains vertices outside the graph")
    deg = {v: 0 for v in part}
    edges = []
    for u, v in g.edges:
        if u in part and v in part:
            deg[u] += 1
            deg[v] += 1
            if deg[u] > 2 or deg[v] > 2:
                return False
            edges.append((u, v))
    # acyclicity by union-find
    parent = {v: v for v in part}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def bfs_layers(g: Graph, root: int) -> list:
    """Distance from root for each vertex in root's component (-1 outside)."""
    dist = [-1] * g.n
    dist[root] = 0
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def brute_force_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test, intended for graphs with <= 8 vertices."""
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    n = g.n
    mapping = [-1] * n
    used = [False] * n

    def extend(u: int) -> bool:
        if u == n:
            return True
        for w in range(n):
            if used[w] or h.degree(w) != g.degree(u):
                continue
            ok = True
            for x in g.adj[u]:
                if x < u and not h.has_edge(mapping[x], w):
                    ok = False
                    break
            if ok:
                for x in range(u):
                    if not g.has_edge(x, u) and h.has_edge(mapping[x], w):
                        ok = False
                        break
            if ok:
                mapping[u] = w
                used[w] = True
                if extend(u + 1):
                    return True
                used[w] = False
                mapping[u] = -1
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# parsing and encoding
# ---------------------------------------------------------------------------


def to_networkx(g: Graph) -> "nx.Graph":
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges)
    return ng


def from_networkx(ng: "nx.Graph") -> Graph:
    nodes = sorted(ng.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), ((idx[u], idx[v]) for u, v in ng.edges()))


def to_graph6(g: Graph) -> bytes:
    return nx.to_graph6_bytes(to_networkx(g), header=False).strip()


def _parse_edge_list(text: bytes) -> Graph:
    edges = []
    seen = set()
    max_v = -1
    for lineno, raw in enumerate(text.decode("utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u == v:
            raise ValueError(f"line {lineno}: self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: negative vertex index")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
        max_v = max(max_v, u, v)
    return Graph(max_v + 1 if max_v >= 0 else 0, edges)


def parse_graph(text: bytes, format: str) -> Graph:
    """Parse graph6 or edge-list bytes into a Graph."""
    if isinstance(text, str):
        text = text.encode("utf-8")
    if format == "graph6":
        try:
            ng = nx.from_graph6_bytes(text.strip())
        except Exception as exc:
            raise ValueError(f"malformed graph6 input: {exc}") from exc
        return from_networkx(ng)
    if format == "edge_list":
        return _parse_edge_list(text)
    raise ValueError(f"unknown graph format {format!r}")
