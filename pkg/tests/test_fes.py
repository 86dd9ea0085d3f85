import random

import pytest

from delayrobust import (
    DRPInstance,
    StaticGraph,
    TimeArc,
    build_graph,
    brute_force_solve,
    is_delay_robust,
    underlying_graph,
)
from delayrobust.fes import (
    decompose,
    enumerate_candidate_routes,
    minimum_feedback_edge_set,
    prune_degree_one,
    solve,
)
from conftest import FIG1_ROUTE
from helpers import is_forest, naive_simple_paths, random_graph


def _static(n, edges):
    return StaticGraph(n, frozenset(tuple(sorted(e)) for e in edges))


def test_prune_keeps_needed_path():
    g = _static(4, [(0, 1), (1, 2), (2, 3)])
    assert prune_degree_one(g, 0, 3).edges == g.edges


def test_prune_star():
    # star centered on 2 with leaves 0, 1, 3, 4; only the s-z legs survive
    g = _static(5, [(0, 2), (1, 2), (2, 3), (2, 4)])
    assert prune_degree_one(g, 0, 1).edges == {(0, 2), (1, 2)}


def test_prune_isolated_endpoint():
    g = _static(4, [(1, 2), (2, 3)])
    pruned = prune_degree_one(g, 0, 3)
    assert pruned.edges == frozenset()  # z's side collapses without s


def test_feedback_edges_tree_and_cycle():
    tree = _static(4, [(0, 1), (1, 2), (1, 3)])
    assert minimum_feedback_edge_set(tree) == frozenset()
    cycle = _static(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert len(minimum_feedback_edge_set(cycle)) == 1


def test_feedback_count_formula():
    rng = random.Random(31)
    for _ in range(60):
        g = underlying_graph(random_graph(rng, rng.randint(2, 8), rng.randint(0, 14)))
        f = minimum_feedback_edge_set(g)
        assert is_forest(g.edges - f)
        comp = _component_count(g)
        assert len(f) == len(g.edges) - g.vertex_count + comp


def _component_count(g: StaticGraph) -> int:
    parent = list(range(g.vertex_count))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in g.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(g.vertex_count)})


def test_candidates_on_a_path(fig1):
    dec = decompose(underlying_graph(fig1), 0, 4)
    assert list(enumerate_candidate_routes(dec, 0, 4)) == [FIG1_ROUTE]


def test_candidates_on_a_cycle():
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
    dec = decompose(_static(4, edges), 0, 2)
    found = set(enumerate_candidate_routes(dec, 0, 2))
    assert found == {(0, 1, 2), (0, 3, 2)}


def test_candidates_match_naive_enumeration():
    rng = random.Random(32)
    for _ in range(150):
        n = rng.randint(2, 8)
        g = underlying_graph(random_graph(rng, n, rng.randint(0, 14)))
        pruned = prune_degree_one(g, 0, n - 1)
        dec = decompose(pruned, 0, n - 1)
        mine = list(enumerate_candidate_routes(dec, 0, n - 1))
        assert len(mine) == len(set(mine))  # exactly once each
        assert set(mine) == naive_simple_paths(pruned.edges, 0, n - 1)


def test_solve_fig1(fig1):
    assert solve(DRPInstance(fig1, 0, 4, 1, 3)) == FIG1_ROUTE
    assert solve(DRPInstance(fig1, 0, 4, 1, 5)) is None


def test_solve_source_equals_target(fig1):
    assert solve(DRPInstance(fig1, 1, 1, 2, 2)) == (1,)


def test_pruning_never_changes_the_answer():
    # pendant trees hanging off the core are removed without harm
    rng = random.Random(33)
    for _ in range(80):
        n = rng.randint(3, 6)
        g = random_graph(rng, n, rng.randint(2, 10))
        arcs = list(g.arcs)
        # attach a pendant chain to a random core vertex
        hook = rng.randrange(n)
        arcs.append(TimeArc(hook, n, rng.randint(0, 12), rng.randint(0, 3)))
        arcs.append(TimeArc(n, n + 1, rng.randint(0, 12), rng.randint(0, 3)))
        big = build_graph(n + 2, arcs)
        inst = DRPInstance(big, 0, n - 1, rng.randint(0, 2), rng.randint(0, 3))
        mine = solve(inst)
        reference = brute_force_solve(inst)
        assert (mine is None) == (reference is None)
        if mine is not None:
            assert is_delay_robust(big, mine, inst.x, inst.delta)


def test_agrees_with_brute_force():
    rng = random.Random(34)
    for _ in range(150):
        n = rng.randint(2, 7)
        g = random_graph(rng, n, rng.randint(1, 14))
        inst = DRPInstance(g, 0, n - 1, rng.randint(0, 2), rng.randint(0, 3))
        mine = solve(inst)
        assert (mine is None) == (brute_force_solve(inst) is None)
        if mine is not None:
            assert is_delay_robust(g, mine, inst.x, inst.delta)
