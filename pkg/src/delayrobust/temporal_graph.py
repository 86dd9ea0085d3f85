"""Temporal graphs and delayed-walk semantics.

A temporal graph is a vertex set plus a multiset of time arcs.  A time arc
``(src, dst, t, trav)`` is a scheduled connection that departs ``src`` at
time ``t`` and arrives at ``dst`` at time ``t + trav``.  Arcs can suffer a
delay of magnitude ``delta``: a *starting* delay pushes the departure time
back by ``delta``, a *traversal* delay stretches the traversal time by
``delta``.

Times are non-negative integers; ``INF`` (``float("inf")``) marks an
unreachable or broken state and is absorbing under ``+``, ``min`` and
``max``.  Vertices are dense integer ids ``0 .. vertex_count - 1``;
human-readable names live only in the file I/O layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

INF = float("inf")

Time = int | float  # plain int everywhere except INF
Route = tuple[int, ...]  # duplicate-free vertex sequence, length >= 1

STARTING = "starting"
TRAVERSAL = "traversal"
DELAY_KINDS = (STARTING, TRAVERSAL)


class ValidationError(ValueError):
    """Input data violates a structural contract."""


class BudgetError(RuntimeError):
    """An enumeration guard refused an oversized instance."""


@dataclass(frozen=True)
class TimeArc:
    """A scheduled connection from ``src`` to ``dst`` departing at ``t``."""

    src: int
    dst: int
    t: int
    trav: int

    def __post_init__(self) -> None:
        if self.t < 0 or self.trav < 0:
            raise ValidationError(
                f"time arc {(self.src, self.dst, self.t, self.trav)}: "
                "time label and traversal time must be non-negative"
            )

    @property
    def arrival(self) -> int:
        return self.t + self.trav


@dataclass(frozen=True)
class TemporalGraph:
    """Immutable temporal graph with per-pair and per-vertex indices.

    ``pair_index`` maps ``(src, dst)`` to arc indices sorted by arrival time
    (ties broken by departure time, then input order).  ``departures`` maps a
    vertex to the sorted distinct times at which it has outgoing arcs
    (vertices without outgoing arcs are absent).  ``succ`` maps a vertex to
    its distinct successors.  ``T`` is the maximum time label (0 if there are
    no arcs).  Parallel identical arcs are kept as distinct entries of
    ``arcs``; an "arc reference" anywhere in this package is an index into
    ``arcs``.
    """

    vertex_count: int
    arcs: tuple[TimeArc, ...]
    pair_index: Mapping[tuple[int, int], tuple[int, ...]]
    departures: Mapping[int, tuple[int, ...]]
    succ: Mapping[int, tuple[int, ...]]
    T: int


@dataclass(frozen=True)
class DelaySet:
    """A set of delayed arc references with a kind and magnitude."""

    arcs: frozenset[int]
    kind: str
    delta: int

    def __post_init__(self) -> None:
        if self.kind not in DELAY_KINDS:
            raise ValidationError(f"unknown delay kind {self.kind!r}")
        if self.delta < 0:
            raise ValidationError("delay magnitude must be non-negative")


@dataclass(frozen=True)
class StaticGraph:
    """Simple undirected graph; edges are ``(u, v)`` pairs with ``u < v``."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class DRPInstance:
    """A delay-robust route query: is there an x-delay-robust (s, z)-route?"""

    graph: TemporalGraph
    s: int
    z: int
    x: int
    delta: int

    def __post_init__(self) -> None:
        n = self.graph.vertex_count
        for name, v in (("s", self.s), ("z", self.z)):
            if not 0 <= v < n:
                raise ValidationError(f"query vertex {name}={v} out of range [0, {n})")
        if self.x < 0:
            raise ValidationError("number of delays x must be non-negative")
        if self.delta < 0:
            raise ValidationError("delay magnitude delta must be non-negative")


def build_graph(vertex_count: int, arcs: Iterable[TimeArc]) -> TemporalGraph:
    """Validate arcs and build a :class:`TemporalGraph` with its indices.

    Input arc order is preserved in ``arcs``.  Raises
    :class:`ValidationError` naming the offending arc index when an endpoint
    is out of range.
    """
    if vertex_count < 1:
        raise ValidationError("vertex_count must be positive")
    arc_tuple = tuple(arcs)
    for i, arc in enumerate(arc_tuple):
        if not (0 <= arc.src < vertex_count and 0 <= arc.dst < vertex_count):
            raise ValidationError(
                f"arc {i}: endpoint out of range [0, {vertex_count}): "
                f"({arc.src}, {arc.dst}, {arc.t}, {arc.trav})"
            )

    by_pair: dict[tuple[int, int], list[int]] = {}
    dep_times: dict[int, set[int]] = {}
    for i, arc in enumerate(arc_tuple):
        by_pair.setdefault((arc.src, arc.dst), []).append(i)
        dep_times.setdefault(arc.src, set()).add(arc.t)

    pair_index = {
        pair: tuple(sorted(ids, key=lambda i: (arc_tuple[i].arrival, arc_tuple[i].t, i)))
        for pair, ids in by_pair.items()
    }
    departures = {v: tuple(sorted(ts)) for v, ts in dep_times.items()}
    succ_sets: dict[int, set[int]] = {}
    for src, dst in pair_index:
        succ_sets.setdefault(src, set()).add(dst)
    succ = {v: tuple(sorted(ws)) for v, ws in succ_sets.items()}
    t_max = max((arc.t for arc in arc_tuple), default=0)
    return TemporalGraph(vertex_count, arc_tuple, pair_index, departures, succ, t_max)


def underlying_graph(g: TemporalGraph) -> StaticGraph:
    """Forget times and directions; collapse parallel arcs, drop self-loops."""
    edges = frozenset(
        (min(a.src, a.dst), max(a.src, a.dst)) for a in g.arcs if a.src != a.dst
    )
    return StaticGraph(g.vertex_count, edges)


def is_delayed_walk(g: TemporalGraph, walk: Sequence[int], d: DelaySet) -> bool:
    """Decide whether an arc sequence is a valid walk under the delay set.

    For traversal delays the condition is that each arc's (delayed) arrival
    is no later than the next arc's departure.  For starting delays the
    departure times of delayed arcs are shifted before applying the plain
    temporal-walk condition.  The empty walk is vacuously valid.
    """
    n_arcs = len(g.arcs)
    for ref in walk:
        if not 0 <= ref < n_arcs:
            raise ValidationError(f"arc reference {ref} out of range")
    for ref in d.arcs:
        if not 0 <= ref < n_arcs:
            raise ValidationError(f"delayed arc reference {ref} out of range")
    for a, b in zip(walk, walk[1:]):
        if g.arcs[a].dst != g.arcs[b].src:
            raise ValidationError(
                f"arc {a} ends at {g.arcs[a].dst} but arc {b} starts at {g.arcs[b].src}"
            )

    delta = d.delta
    if d.kind == TRAVERSAL:
        for a, b in zip(walk, walk[1:]):
            ea, eb = g.arcs[a], g.arcs[b]
            if ea.t + ea.trav + (delta if a in d.arcs else 0) > eb.t:
                return False
    else:
        for a, b in zip(walk, walk[1:]):
            ea, eb = g.arcs[a], g.arcs[b]
            dep_a = ea.t + (delta if a in d.arcs else 0)
            dep_b = eb.t + (delta if b in d.arcs else 0)
            if dep_a + ea.trav > dep_b:
                return False
    return True


def validate_route(g: TemporalGraph, vertices: Sequence[int]) -> Route:
    """Check a vertex sequence is a well-formed duplicate-free route."""
    route = tuple(vertices)
    if not route:
        raise ValidationError("a route must contain at least one vertex")
    for v in route:
        if not 0 <= v < g.vertex_count:
            raise ValidationError(f"route vertex {v} out of range [0, {g.vertex_count})")
    if len(set(route)) != len(route):
        raise ValidationError(f"route {route} repeats a vertex")
    return route
