"""Shared generators and independent reference routines for the tests.

Everything here is deliberately independent of the implementation under
test: naive path enumeration, arrival scans, and exhaustive searches used as
oracles for the oracles.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from delayrobust import INF, DRPInstance, TemporalGraph, TimeArc, build_graph, underlying_graph
from delayrobust.tfvs import Appearance, remove_appearances


def random_graph(
    rng: random.Random, n: int, arcs: int, tmax: int = 12, lmax: int = 3
) -> TemporalGraph:
    built = []
    for _ in range(arcs):
        u = rng.randrange(n)
        v = rng.randrange(n - 1) if n > 1 else 0
        if n > 1 and v >= u:
            v += 1
        built.append(TimeArc(u, v, rng.randint(0, tmax), rng.randint(0, lmax)))
    return build_graph(n, built)


def random_route_instance(rng: random.Random):
    """A route plus arcs living only between its consecutive vertices."""
    k = rng.randint(2, 6)
    route = tuple(range(k))
    arcs = []
    for _ in range(rng.randint(1, 12)):
        hop = rng.randrange(k - 1)
        arcs.append(TimeArc(hop, hop + 1, rng.randint(0, 10), rng.randint(0, 3)))
    g = build_graph(k, arcs)
    x = rng.randint(0, 3)
    delta = rng.randint(0, 3)
    return g, route, x, delta


def random_drp_instance(rng: random.Random) -> DRPInstance:
    n = rng.randint(2, 7)
    g = random_graph(rng, n, rng.randint(1, 14))
    return DRPInstance(g, 0, n - 1, rng.randint(0, 2), rng.randint(0, 3))


def naive_simple_paths(edges, s: int, z: int) -> set[tuple[int, ...]]:
    """All simple (s, z)-paths of an undirected edge set, by plain DFS."""
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    out: set[tuple[int, ...]] = set()

    def rec(path: list[int]) -> None:
        if path[-1] == z:
            out.add(tuple(path))
            return
        for w in sorted(adj.get(path[-1], ())):
            if w not in path:
                path.append(w)
                rec(path)
                path.pop()

    if s == z:
        return {(s,)}
    rec([s])
    return out


def earliest_arrival_scan(g: TemporalGraph, s: int, z: int):
    """Classic earliest-arrival over arcs in arrival order (walks allowed)."""
    best = [INF] * g.vertex_count
    best[s] = 0
    for arc in sorted(g.arcs, key=lambda a: (a.arrival, a.t)):
        if arc.t >= best[arc.src] and arc.arrival < best[arc.dst]:
            best[arc.dst] = arc.arrival
    return best[z]


def appearance_universe(g: TemporalGraph) -> list[Appearance]:
    apps = {(a.src, a.t) for a in g.arcs} | {(a.dst, a.t) for a in g.arcs}
    return sorted(apps)


def is_forest(edges) -> bool:
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def exhaustive_min_tfvs_size(g: TemporalGraph, cap: int = 4) -> int:
    """Smallest number of vertex appearances whose removal leaves a forest."""
    universe = appearance_universe(g)
    for size in range(cap + 1):
        for chosen in combinations(universe, size):
            h = remove_appearances(g, frozenset(chosen))
            if is_forest(underlying_graph(h).edges):
                return size
    raise AssertionError(f"no timed feedback vertex set of size <= {cap}")


def cnf_satisfiable(variables: int, clauses) -> bool:
    for bits in product((False, True), repeat=variables):
        if all(any((lit > 0) == bits[abs(lit) - 1] for lit in clause) for clause in clauses):
            return True
    return not clauses


def has_multicolored_clique(partitions, edges) -> bool:
    eset = {frozenset(e) for e in edges}
    for picks in product(*partitions):
        if all(
            frozenset((u, v)) in eset
            for u, v in combinations(picks, 2)
        ):
            return True
    return False
