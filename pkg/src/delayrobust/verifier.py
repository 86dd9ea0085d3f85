"""Worst-case arrival tables: deciding whether a fixed route survives delays.

A route (vertex sequence) is x-delay-robust when, for every set of at most x
delayed arcs, some delayed temporal path still visits its vertices in order.
Checking all delay sets directly is exponential; instead we compute, per
route prefix and per delay budget y <= x, the *worst-case arrival time*: the
maximum over all delay sets of size <= y of the earliest delayed arrival.
A prefix is robust for y delays exactly when that value is finite.

The computation works with traversal delays; the answer is the same for
starting delays (the two decision problems coincide, which the test suite
checks empirically against the brute-force oracle).

The single-hop step is: given the available arcs from v to w departing at or
after time t, sorted by arrival, with y delays left the adversary can force
arrival no later than ``min(arr_1 + delta, arr_{y+1})`` (delaying the y
earliest arcs).  The table recursion then splits the budget between the last
hop and the rest of the route.
"""

from __future__ import annotations

from dataclasses import dataclass

from .temporal_graph import INF, Route, TemporalGraph, Time, validate_route

ArrivalVector = tuple[Time, ...]


@dataclass(frozen=True)
class WorstCaseTable:
    """One arrival vector per route prefix; entry [y] is the worst-case
    arrival time of the prefix for up to y delays (INF = broken)."""

    rows: tuple[ArrivalVector, ...]
    x: int
    delta: int


def available_arcs(g: TemporalGraph, v: int, w: int, t: Time) -> list[int]:
    """Arc references from v to w departing at or after t, by arrival time."""
    return [i for i in g.pair_index.get((v, w), ()) if g.arcs[i].t >= t]


def _step(entries: list[tuple[int, int]], t: Time, y: int, delta: int) -> Time:
    # entries: (departure, arrival) pairs sorted by arrival; returns the
    # worst-case single-hop arrival starting at time t with y delays left.
    if t == INF:
        return INF
    first = INF
    seen = 0
    for dep, arr in entries:
        if dep < t:
            continue
        if seen == 0:
            if y == 0:
                return arr
            first = arr
        seen += 1
        if seen > y:
            return arr if arr < first + delta else first + delta
    if seen == 0:
        return INF
    return first + delta


def worst_case_step(g: TemporalGraph, v: int, w: int, t: Time, y: int, delta: int) -> Time:
    """Worst-case arrival at w when leaving v at time t with y delays left.

    Returns INF when t is INF or no arc from v to w departs at or after t.
    """
    if y < 0:
        raise ValueError("delay budget y must be non-negative")
    entries = [
        (g.arcs[i].t, g.arcs[i].arrival) for i in g.pair_index.get((v, w), ())
    ]
    return _step(entries, t, y, delta)


def worst_case_table(
    g: TemporalGraph, r: Route, x: int, delta: int, start: Time = 0
) -> WorstCaseTable:
    """Compute the full worst-case arrival table of a route.

    ``start`` shifts the departure of the whole route: the single-vertex
    prefix is reached at ``start`` for every budget (default 0).
    """
    route = validate_route(g, r)
    if x < 0:
        raise ValueError("delay budget x must be non-negative")
    width = x + 1
    prev: ArrivalVector = (start,) * width
    rows = [prev]
    for v, w in zip(route, route[1:]):
        entries = [
            (g.arcs[i].t, g.arcs[i].arrival) for i in g.pair_index.get((v, w), ())
        ]
        cur = []
        for y in range(width):
            best: Time = -INF
            for yp in range(y + 1):
                val = _step(entries, prev[yp], y - yp, delta)
                if val > best:
                    best = val
            cur.append(best)
        prev = tuple(cur)
        rows.append(prev)
    return WorstCaseTable(tuple(rows), x, delta)


def is_delay_robust(g: TemporalGraph, r: Route, x: int, delta: int) -> bool:
    """True iff the route survives every delay set of size at most x."""
    table = worst_case_table(g, r, x, delta)
    return table.rows[-1][x] < INF
