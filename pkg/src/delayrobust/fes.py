"""Route search driven by the feedback edge structure of the underlying graph.

After pruning degree-one vertices, the underlying static graph minus a
minimum feedback edge set F is a forest whose edges partition into few
maximal paths with branch vertices (endpoints of F, vertices of degree >= 3,
and the query endpoints) at their ends.  Every simple (s, z)-path is an
alternation of whole maximal paths and feedback edges, so all candidate
routes can be enumerated over that condensed multigraph and each one checked
with the worst-case arrival table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .temporal_graph import DRPInstance, Route, StaticGraph, underlying_graph, build_graph
from .verifier import is_delay_robust


@dataclass(frozen=True)
class PathDecomposition:
    """Branch vertices plus the maximal forest paths and feedback edges
    connecting them; the paths partition the edges of the forest."""

    branch_vertices: frozenset[int]
    maximal_paths: tuple[Route, ...]
    feedback_edges: frozenset[tuple[int, int]]


def _adjacency(edges) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in sorted(edges):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def prune_degree_one(g_static: StaticGraph, s: int, z: int) -> StaticGraph:
    """Repeatedly drop vertices of degree <= 1 other than s and z.

    Such vertices can never lie on a simple (s, z)-path.  Returns the graph
    restricted to the surviving edges (the vertex count is unchanged).
    """
    adj = {v: set(nbrs) for v, nbrs in _adjacency(g_static.edges).items()}
    pending = [v for v, nbrs in adj.items() if len(nbrs) <= 1 and v not in (s, z)]
    while pending:
        v = pending.pop()
        if v not in adj or len(adj[v]) > 1:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1 and w not in (s, z):
                pending.append(w)
    edges = frozenset(
        (v, w) for v, nbrs in adj.items() for w in nbrs if v < w
    )
    return StaticGraph(g_static.vertex_count, edges)


def minimum_feedback_edge_set(g_static: StaticGraph) -> frozenset[tuple[int, int]]:
    """Edges outside a spanning forest; removing them leaves the forest."""
    parent = list(range(g_static.vertex_count))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    feedback = []
    for u, v in sorted(g_static.edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            feedback.append((u, v))
        else:
            parent[ru] = rv
    return frozenset(feedback)


def decompose(pruned: StaticGraph, s: int, z: int) -> PathDecomposition:
    """Split the pruned graph into feedback edges and maximal forest paths."""
    feedback = minimum_feedback_edge_set(pruned)
    forest_edges = pruned.edges - feedback
    degree: dict[int, int] = {}
    for u, v in pruned.edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    branch = {s, z}
    branch.update(v for edge in feedback for v in edge)
    branch.update(v for v, d in degree.items() if d >= 3)
    # degree-1 vertices only survive pruning when they are s or z, but the
    # decomposition stays well-defined on unpruned input by treating them as
    # path endpoints too
    branch.update(v for v, d in degree.items() if d <= 1)

    forest_adj = _adjacency(forest_edges)
    used: set[tuple[int, int]] = set()
    paths: list[Route] = []
    for b in sorted(branch):
        for n in forest_adj.get(b, ()):
            edge = (min(b, n), max(b, n))
            if edge in used:
                continue
            used.add(edge)
            walk = [b, n]
            while walk[-1] not in branch:
                nbrs = forest_adj[walk[-1]]
                (nxt,) = [w for w in nbrs if w != walk[-2]]
                used.add((min(walk[-1], nxt), max(walk[-1], nxt)))
                walk.append(nxt)
            paths.append(tuple(walk))
    assert len(used) == len(forest_edges), "maximal paths must cover the forest"
    return PathDecomposition(frozenset(branch), tuple(paths), feedback)


def enumerate_candidate_routes(
    dec: PathDecomposition, s: int, z: int
) -> Iterator[Route]:
    """Yield every simple (s, z)-path of the decomposed graph exactly once.

    DFS over the condensed multigraph whose nodes are branch vertices and
    whose edges are feedback edges and maximal paths; a visited set over the
    expanded vertices enforces simplicity.
    """
    if s == z:
        yield (s,)
        return
    # condensed edge: (neighbor branch vertex, interior vertices in order)
    condensed: dict[int, list[tuple[int, Route]]] = {}
    for u, v in sorted(dec.feedback_edges):
        condensed.setdefault(u, []).append((v, ()))
        condensed.setdefault(v, []).append((u, ()))
    for path in dec.maximal_paths:
        a, b = path[0], path[-1]
        interior = path[1:-1]
        condensed.setdefault(a, []).append((b, interior))
        if a != b or interior:
            condensed.setdefault(b, []).append((a, tuple(reversed(interior))))
    for options in condensed.values():
        options.sort()

    route = [s]
    visited = {s}

    def rec() -> Iterator[Route]:
        v = route[-1]
        if v == z:
            yield tuple(route)
            return
        for w, interior in condensed.get(v, ()):
            if w in visited or any(u in visited for u in interior):
                continue
            route.extend(interior)
            route.append(w)
            visited.update(interior)
            visited.add(w)
            yield from rec()
            for _ in range(len(interior) + 1):
                visited.discard(route.pop())

    yield from rec()


def solve(inst: DRPInstance) -> Route | None:
    """Check each candidate route with the worst-case table; first hit wins."""
    if inst.s == inst.z:
        return (inst.s,)
    static = underlying_graph(inst.graph)
    pruned = prune_degree_one(static, inst.s, inst.z)
    alive = {v for edge in pruned.edges for v in edge} | {inst.s, inst.z}
    kept = [a for a in inst.graph.arcs if a.src in alive and a.dst in alive]
    sub = build_graph(inst.graph.vertex_count, kept)
    dec = decompose(pruned, inst.s, inst.z)
    for route in enumerate_candidate_routes(dec, inst.s, inst.z):
        if is_delay_robust(sub, route, inst.x, inst.delta):
            return route
    return None
