"""Tests for the exact combinatorial solvers.

Derived-value oracles are independent brute-force enumerations written
inline here (full elimination-order sweeps, full bipartition sweeps,
direct colorability checks) so that solver answers are cross-checked
against a second route, not against themselves.
"""

from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinecover.graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    from_networkx,
    is_linear_forest,
    path_graph,
    triangulated_square_wheel,
)
from affinecover.planar import planarity_test
from affinecover.solvers import (
    bisection_width_exact,
    chromatic_number,
    clique_cover_exact,
    lva_exact,
    steiner_bounds,
    treewidth_exact,
    validate_partition,
    vertex_thickness_exact,
)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def brute_colorable(g: Graph, k: int) -> bool:
    for assign in itertools.product(range(k), repeat=g.n):
        if all(assign[u] != assign[v] for u, v in g.edges):
            return True
    return False


def brute_chromatic(g: Graph) -> int:
    for k in range(1, g.n + 1):
        if brute_colorable(g, k):
            return k
    return g.n


def brute_lva(g: Graph) -> int:
    for k in range(1, g.n + 1):
        for assign in itertools.product(range(k), repeat=g.n):
            classes = [[v for v in range(g.n) if assign[v] == c] for c in range(k)]
            if all(is_linear_forest(g, cls) for cls in classes):
                return k
    return g.n


def brute_treewidth(g: Graph) -> int:
    """Minimum over all elimination orders of the maximum fill degree."""
    best = g.n - 1
    for order in itertools.permutations(range(g.n)):
        adj = {v: set(g.adj[v]) for v in range(g.n)}
        width = 0
        for v in order:
            nbrs = adj[v]
            width = max(width, len(nbrs))
            if width >= best:
                break
            for a, b in itertools.combinations(nbrs, 2):
                adj[a].add(b)
                adj[b].add(a)
            for u in nbrs:
                adj[u].discard(v)
            del adj[v]
        best = min(best, width)
    return best


def brute_bisection(g: Graph) -> int:
    half = g.n // 2
    best = g.m
    for side in itertools.combinations(range(g.n), half):
        s = set(side)
        cut = sum(1 for u, v in g.edges if (u in s) != (v in s))
        best = min(best, cut)
    return best


def small_graph_strategy(max_n=6):
    def build(n, mask):
        pairs = list(itertools.combinations(range(n), 2))
        edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
        return Graph(n, edges)

    return st.integers(2, max_n).flatmap(
        lambda n: st.builds(
            build, st.just(n), st.integers(0, 2 ** (n * (n - 1) // 2) - 1)
        )
    )


# ---------------------------------------------------------------------------
# chromatic_number
# ---------------------------------------------------------------------------


def test_chromatic_examples():
    assert chromatic_number(complete_graph(4)).value == 4
    assert chromatic_number(cycle_graph(5)).value == 3
    petersen = from_networkx(nx.petersen_graph())
    res = chromatic_number(petersen)
    assert res.value == 3 and res.exact
    # derived oracle: no proper 2-coloring of the Petersen graph exists
    assert not brute_colorable(petersen, 2)
    validate_partition(petersen, res.partition)


def test_chromatic_budget_fallback():
    res = chromatic_number(cycle_graph(5), budget_n=3)
    assert not res.exact
    assert res.value >= 3
    validate_partition(cycle_graph(5), res.partition)


@settings(max_examples=40, deadline=None)
@given(small_graph_strategy())
def test_chromatic_matches_brute_force(g):
    res = chromatic_number(g)
    assert res.exact and res.value == brute_chromatic(g)
    validate_partition(g, res.partition)


# ---------------------------------------------------------------------------
# lva_exact
# ---------------------------------------------------------------------------


def test_lva_examples():
    assert lva_exact(cycle_graph(5)).value == 2
    assert lva_exact(path_graph(7)).value == 1
    res = lva_exact(triangulated_square_wheel())
    assert res.value == 3 and res.exact
    validate_partition(triangulated_square_wheel(), res.partition)


def test_lva_complete_graphs():
    # every class of 3+ vertices of a complete graph contains a triangle
    for n in range(2, 9):
        assert lva_exact(complete_graph(n)).value == (n + 1) // 2


def test_lva_budget_fallback_is_coloring():
    res = lva_exact(complete_graph(5), budget_n=3)
    assert not res.exact
    validate_partition(complete_graph(5), res.partition)
    assert res.value >= 3  # true optimum


@settings(max_examples=25, deadline=None)
@given(small_graph_strategy(5))
def test_lva_matches_brute_force(g):
    res = lva_exact(g)
    assert res.exact and res.value == brute_lva(g)
    validate_partition(g, res.partition)


# ---------------------------------------------------------------------------
# vertex_thickness_exact
# ---------------------------------------------------------------------------


def test_vertex_thickness_examples():
    assert vertex_thickness_exact(complete_graph(4)).value == 1
    res9 = vertex_thickness_exact(complete_graph(9))
    assert res9.value == 3 and res9.exact
    validate_partition(complete_graph(9), res9.partition)
    res5 = vertex_thickness_exact(complete_graph(5))
    assert res5.value == 2
    # derived: K5 is non-planar, so one class cannot work
    assert planarity_test(complete_graph(5)) is None


def test_vertex_thickness_complete():
    for n in range(1, 13):
        assert vertex_thickness_exact(complete_graph(n)).value == -(-n // 4)


def test_vertex_thickness_budget_fallback():
    res = vertex_thickness_exact(complete_graph(9), budget_n=4)
    assert not res.exact and res.value == 3
    validate_partition(complete_graph(9), res.partition)


# ---------------------------------------------------------------------------
# treewidth_exact
# ---------------------------------------------------------------------------


def test_treewidth_examples():
    assert treewidth_exact(complete_graph(5)).value == 4
    assert treewidth_exact(path_graph(5)).value == 1
    assert treewidth_exact(complete_bipartite(1, 4)).value == 1
    res = treewidth_exact(cycle_graph(6))
    assert res.value == 2 and res.exact
    assert brute_treewidth(cycle_graph(6)) == 2


def test_treewidth_budget_pair():
    # 6x6 grid: degeneracy 2 but actual treewidth 6, so over budget the
    # solver must report an honest (lower, upper) pair, not an exact value
    from affinecover.graphs import cartesian_product

    g = cartesian_product(path_graph(6), path_graph(6))
    res = treewidth_exact(g)
    assert not res.exact
    assert 2 <= res.lower <= res.upper


@settings(max_examples=25, deadline=None)
@given(small_graph_strategy(5))
def test_treewidth_matches_brute_force(g):
    res = treewidth_exact(g)
    assert res.exact and res.value == brute_treewidth(g)


# ---------------------------------------------------------------------------
# bisection_width_exact
# ---------------------------------------------------------------------------


def test_bisection_examples():
    assert bisection_width_exact(complete_graph(4)).value == 4
    assert bisection_width_exact(path_graph(6)).value == 1
    assert bisection_width_exact(complete_bipartite(3, 3)).value == 5
    assert brute_bisection(complete_graph(4)) == 4
    assert brute_bisection(complete_bipartite(3, 3)) == 5


@settings(max_examples=30, deadline=None)
@given(small_graph_strategy())
def test_bisection_matches_brute_force(g):
    res = bisection_width_exact(g)
    assert res.exact and res.value == brute_bisection(g)


def test_bisection_budget_flag():
    res = bisection_width_exact(complete_bipartite(3, 3), budget_n=4)
    assert not res.exact and res.value >= 5


# ---------------------------------------------------------------------------
# clique_cover_exact
# ---------------------------------------------------------------------------


def check_cover(n, s, cover):
    assert all(len(b) <= s for b in cover.blocks)
    covered = set()
    for b in cover.blocks:
        covered |= set(itertools.combinations(sorted(b), 2))
    assert covered == set(itertools.combinations(range(n), 2))


def test_clique_cover_k5_k4():
    res = clique_cover_exact(5, 4)
    assert res.exact and res.lower == res.upper == 3
    check_cover(5, 4, res.cover)


def test_clique_cover_k6_k4():
    res = clique_cover_exact(6, 4)
    assert res.exact and res.lower == res.upper == 3
    check_cover(6, 4, res.cover)


def test_clique_cover_k7_k3():
    res = clique_cover_exact(7, 3)
    assert res.exact and res.lower == res.upper == 7
    check_cover(7, 3, res.cover)


def test_clique_cover_k9_k3_steiner():
    res = clique_cover_exact(9, 3)
    assert res.exact and res.value == 12  # resolvable triple system exists
    check_cover(9, 3, res.cover)


def test_clique_cover_k9_k4_exhausts_six():
    res = clique_cover_exact(9, 4, max_value=6)
    assert res.lower == 7 and res.lower_exhaustive
    check_cover(9, 4, res.cover)  # fallback witness is still a valid cover


def test_clique_cover_tiny():
    res = clique_cover_exact(3, 3)
    assert res.exact and res.value == 1
    # two triangles on four vertices share an edge, so they cover only
    # five of the six edges: three blocks are needed
    res = clique_cover_exact(4, 3)
    assert res.exact and res.value == 3
    check_cover(4, 3, res.cover)


def test_clique_cover_budget_rejects():
    with pytest.raises(ValueError):
        clique_cover_exact(14, 3)
    with pytest.raises(ValueError):
        clique_cover_exact(11, 4)
    with pytest.raises(ValueError):
        clique_cover_exact(6, 5)


# ---------------------------------------------------------------------------
# steiner_bounds
# ---------------------------------------------------------------------------


def test_steiner_examples():
    assert steiner_bounds(7, 3) == (7, True)
    assert steiner_bounds(9, 4) == (6, False)
    assert steiner_bounds(13, 4) == (13, True)
    assert steiner_bounds(9, 3) == (12, True)
    assert steiner_bounds(6, 4) == (3, False)
    with pytest.raises(ValueError):
        steiner_bounds(7, 5)


def test_clique_cover_meets_steiner_bound():
    for n, s in ((5, 3), (6, 3), (7, 3), (9, 3), (5, 4), (6, 4), (7, 4)):
        lower, exists = steiner_bounds(n, s)
        res = clique_cover_exact(n, s)
        assert res.lower >= lower
        if exists and res.exact:
            assert res.value == lower


# ---------------------------------------------------------------------------
# cross-parameter invariants
# ---------------------------------------------------------------------------


@settings(max_examples=25, deadline=None)
@given(small_graph_strategy())
def test_parameter_sandwich(g):
    chi = chromatic_number(g).value
    lva = lva_exact(g).value
    vt = vertex_thickness_exact(g).value
    assert chi / 2 <= lva <= chi
    assert chi / 4 <= vt <= chi
    assert vt <= -(-g.n // 4)
    if g.is_connected() and g.n >= 2:
        assert lva <= g.max_degree() // 2 + 1


def test_solvers_deterministic():
    g = from_networkx(nx.petersen_graph())
    assert chromatic_number(g) == chromatic_number(g)
    assert lva_exact(g) == lva_exact(g)
    assert treewidth_exact(g) == treewidth_exact(g)
