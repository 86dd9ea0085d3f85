"""Brute-force reference implementations, used as ground truth at desk scale.

Everything here is deliberately simple and guarded by hard instance-size
limits rather than tuned for speed.  The solvers and the dynamic-programming
verifier are validated against these routines on thousands of random small
instances.

Only arcs between consecutive route vertices can influence a walk that
follows the route, so delay sets are enumerated over those *relevant* arcs
only; this is what makes exhaustive enumeration feasible.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterator

from .temporal_graph import (
    INF,
    BudgetError,
    DelaySet,
    DRPInstance,
    Route,
    STARTING,
    TemporalGraph,
    Time,
    TRAVERSAL,
    underlying_graph,
    validate_route,
)
from .verifier import ArrivalVector

# Routes with at most this many hops get their greedy result confirmed by
# exhaustive arc-sequence enumeration when the greedy pass reports a broken
# route under starting delays.
_CONFIRM_MAX_HOPS = 5


def relevant_arcs(g: TemporalGraph, r: Route) -> list[int]:
    """Arc references between consecutive route vertices, in index order."""
    route = validate_route(g, r)
    refs: list[int] = []
    for v, w in zip(route, route[1:]):
        refs.extend(g.pair_index.get((v, w), ()))
    return sorted(refs)


def _effective(g: TemporalGraph, ref: int, d: DelaySet) -> tuple[int, int]:
    # (departure, arrival) of an arc once the delay set is applied
    arc = g.arcs[ref]
    if ref in d.arcs:
        if d.kind == STARTING:
            return arc.t + d.delta, arc.t + d.delta + arc.trav
        return arc.t, arc.arrival + d.delta
    return arc.t, arc.arrival


def _greedy_arrival(g: TemporalGraph, route: Route, d: DelaySet) -> Time:
    # Earliest delayed arrival by taking, at each hop, the arc with the
    # earliest effective arrival among those departing no earlier than the
    # current time.  Exact for both delay kinds: in the delayed timetable the
    # walk is a plain temporal walk, and arriving earlier never shrinks the
    # set of usable next arcs.
    cur: Time = 0
    for v, w in zip(route, route[1:]):
        best: Time = INF
        for ref in g.pair_index.get((v, w), ()):
            dep, arr = _effective(g, ref, d)
            if dep >= cur and arr < best:
                best = arr
        if best == INF:
            return INF
        cur = best
    return cur


def _exhaustive_arrival(g: TemporalGraph, route: Route, d: DelaySet) -> Time:
    # Full enumeration over one-arc-per-hop choices; reference for the greedy
    # pass on short routes.
    def rec(hop: int, cur: Time) -> Time:
        if hop == len(route) - 1:
            return cur
        v, w = route[hop], route[hop + 1]
        best: Time = INF
        for ref in g.pair_index.get((v, w), ()):
            dep, arr = _effective(g, ref, d)
            if dep >= cur:
                sub = rec(hop + 1, arr)
                if sub < best:
                    best = sub
        return best

    return rec(0, 0)


def earliest_delayed_arrival(g: TemporalGraph, r: Route, d: DelaySet) -> Time:
    """Earliest arrival time of any walk following the route under d.

    INF means the route is broken by d.  A greedy forward pass is exact here;
    out of caution, a broken verdict under starting delays is re-checked by
    exhaustive enumeration on short routes (a finite greedy answer is its own
    witness, a broken one is not).
    """
    route = validate_route(g, r)
    value = _greedy_arrival(g, route, d)
    if (
        value == INF
        and d.kind == STARTING
        and len(route) - 1 <= _CONFIRM_MAX_HOPS
    ):
        return _exhaustive_arrival(g, route, d)
    return value


def _delay_sets(refs: list[int], x: int) -> Iterator[frozenset[int]]:
    for size in range(min(x, len(refs)) + 1):
        for combo in combinations(refs, size):
            yield frozenset(combo)


def _enumeration_count(m: int, x: int) -> int:
    return sum(comb(m, k) for k in range(min(x, m) + 1))


def brute_force_robust(
    g: TemporalGraph,
    r: Route,
    x: int,
    delta: int,
    kind: str = TRAVERSAL,
    budget: int = 10**7,
) -> bool:
    """Decide robustness by enumerating every delay set of size at most x."""
    route = validate_route(g, r)
    refs = relevant_arcs(g, route)
    count = _enumeration_count(len(refs), x)
    if count > budget:
        raise BudgetError(
            f"instance too large for oracle: {count} delay sets over "
            f"{len(refs)} relevant arcs exceeds budget {budget}"
        )
    for arcs in _delay_sets(refs, x):
        if earliest_delayed_arrival(g, route, DelaySet(arcs, kind, delta)) == INF:
            return False
    return True


def brute_force_arrival_vector(
    g: TemporalGraph,
    r: Route,
    x: int,
    delta: int,
    kind: str = TRAVERSAL,
    budget: int = 10**7,
) -> ArrivalVector:
    """Worst-case arrival per budget y <= x, by exhaustive enumeration."""
    route = validate_route(g, r)
    refs = relevant_arcs(g, route)
    count = _enumeration_count(len(refs), x)
    if count > budget:
        raise BudgetError(
            f"instance too large for oracle: {count} delay sets over "
            f"{len(refs)} relevant arcs exceeds budget {budget}"
        )
    worst_by_size: list[Time] = [-INF] * (x + 1)
    for arcs in _delay_sets(refs, x):
        value = earliest_delayed_arrival(g, route, DelaySet(arcs, kind, delta))
        size = len(arcs)
        if value > worst_by_size[size]:
            worst_by_size[size] = value
    vector: list[Time] = []
    cur: Time = -INF
    for y in range(x + 1):
        if worst_by_size[y] > cur:
            cur = worst_by_size[y]
        vector.append(cur)
    return tuple(vector)


def _simple_paths(
    adj: dict[int, list[int]], s: int, z: int, path_budget: int
) -> Iterator[Route]:
    # DFS over the undirected underlying graph, neighbors in sorted order.
    seen = 0
    path = [s]
    on_path = {s}

    def rec() -> Iterator[Route]:
        nonlocal seen
        v = path[-1]
        if v == z:
            seen += 1
            if seen > path_budget:
                raise BudgetError(
                    f"instance too large for oracle: more than {path_budget} "
                    "simple paths"
                )
            yield tuple(path)
            return
        for w in adj.get(v, ()):
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            yield from rec()
            path.pop()
            on_path.remove(w)

    yield from rec()


def brute_force_solve(
    inst: DRPInstance,
    kind: str = TRAVERSAL,
    path_budget: int = 100_000,
    set_budget: int = 10**7,
) -> Route | None:
    """Search every simple vertex path from s to z for a robust route.

    Restricting to duplicate-free routes loses nothing: whenever some route
    is robust, a duplicate-free one is too.  Returns the first robust route
    in DFS order, or None.
    """
    if inst.s == inst.z:
        return (inst.s,)
    static = underlying_graph(inst.graph)
    adj: dict[int, list[int]] = {}
    for u, v in sorted(static.edges):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for nbrs in adj.values():
        nbrs.sort()
    for route in _simple_paths(adj, inst.s, inst.z, path_budget):
        if brute_force_robust(
            inst.graph, route, inst.x, inst.delta, kind, budget=set_budget
        ):
            return route
    return None
