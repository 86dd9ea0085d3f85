"""Label-setting search over Pareto-minimal arrival-time vectors.

Each label pairs a vertex with the arrival-time vector of some robust route
from the source: entry y is the worst-case arrival for up to y delays.  A
vector dominates another when it is componentwise no larger; replacing a
route prefix by one with a dominating vector preserves robustness, so only
the Pareto front per vertex has to be kept.

Labels are expanded one hop at a time with the verifier's single-hop step,
and intermediate entries are rounded up to the next departure time of the
new vertex, which does not change robustness (nothing can leave between an
arrival and the next departure) and keeps the fronts finite.  Rounding is
skipped at the target, which need not be left again.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import count

from .temporal_graph import INF, DRPInstance, Route, TemporalGraph, Time
from .verifier import ArrivalVector, worst_case_step


@dataclass(eq=False)
class ParetoLabel:
    """A robust route prefix: end vertex, arrival vector, predecessor link."""

    vertex: int
    vector: ArrivalVector
    parent: "ParetoLabel | None" = field(default=None, repr=False)


def dominates(a: ArrivalVector, b: ArrivalVector) -> bool:
    """Componentwise <= (equal vectors dominate each other)."""
    if len(a) != len(b):
        raise ValueError(f"vector lengths differ: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def round_up(g: TemporalGraph, w: int, t: Time) -> Time:
    """Smallest departure time of w that is >= t; INF if there is none."""
    if t == INF:
        return INF
    deps = g.departures.get(w, ())
    i = bisect_left(deps, t)
    return deps[i] if i < len(deps) else INF


def extend(
    g: TemporalGraph,
    label: ParetoLabel,
    w: int,
    x: int,
    delta: int,
    round_to_departures: bool = True,
) -> ArrivalVector | None:
    """One DP step from a label to a successor vertex.

    Returns the new arrival vector, or None when the extension is not
    x-delay-robust.  ``round_to_departures`` must be False when w is the
    query target (the final arrival is reported exactly).
    """
    v = label.vertex
    vec = label.vector
    new: list[Time] = []
    for y in range(x + 1):
        best: Time = -INF
        for yp in range(y + 1):
            val = worst_case_step(g, v, w, vec[yp], y - yp, delta)
            if val > best:
                best = val
        new.append(best)
    if round_to_departures:
        new = [round_up(g, w, t) for t in new]
    if new[x] == INF:
        return None
    return tuple(new)


def _route_of(label: ParetoLabel) -> Route:
    vertices = []
    node: ParetoLabel | None = label
    while node is not None:
        vertices.append(node.vertex)
        node = node.parent
    return tuple(reversed(vertices))


def _on_route(label: ParetoLabel, w: int) -> bool:
    node: ParetoLabel | None = label
    while node is not None:
        if node.vertex == w:
            return True
        node = node.parent
    return False


def _search(
    inst: DRPInstance, prune: bool = True
) -> tuple[tuple[Route, ArrivalVector] | None, dict[int, list[ParetoLabel]]]:
    g, s, z, x, delta = inst.graph, inst.s, inst.z, inst.x, inst.delta
    zeros: ArrivalVector = (0,) * (x + 1)
    if s == z:
        root = ParetoLabel(s, zeros)
        return ((s,), zeros), {s: [root]}

    root = ParetoLabel(s, zeros)
    fronts: dict[int, list[ParetoLabel]] = {s: [root]}
    tie = count()
    queue: list[tuple[ArrivalVector, int, int, ParetoLabel]] = [
        (zeros, s, next(tie), root)
    ]

    def insert(w: int, vec: ArrivalVector, parent: ParetoLabel) -> None:
        front = fronts.setdefault(w, [])
        if prune:
            for old in front:
                if dominates(old.vector, vec):
                    return
            front[:] = [old for old in front if not dominates(vec, old.vector)]
        label = ParetoLabel(w, vec, parent)
        front.append(label)
        heapq.heappush(queue, (vec, w, next(tie), label))

    while queue:
        vec, v, _, label = heapq.heappop(queue)
        if label not in fronts.get(v, ()):  # superseded, lazy deletion
            continue
        if v == z:
            continue
        for w in g.succ.get(v, ()):
            if _on_route(label, w):
                continue
            new_vec = extend(g, label, w, x, delta, round_to_departures=(w != z))
            if new_vec is None:
                continue
            insert(w, new_vec, label)

    best_front = fronts.get(z)
    if not best_front:
        return None, fronts
    winner = min(best_front, key=lambda lab: lab.vector)
    return (_route_of(winner), winner.vector), fronts


def solve(inst: DRPInstance, prune: bool = True) -> tuple[Route, ArrivalVector] | None:
    """Find an x-delay-robust route from s to z, or None if there is none.

    The returned route is duplicate-free; the vector is a Pareto-minimal
    arrival-time vector at the target (the lexicographically smallest one of
    the front, for determinism).
    """
    result, _ = _search(inst, prune)
    return result
