"""Guess-and-check route search built on a timed feedback vertex set.

A *vertex appearance* is a pair (vertex, time label); removing it deletes
every arc that departs or arrives with that label at that vertex.  A timed
feedback vertex set X is a set of appearances whose removal makes the
underlying static graph a forest.  Between any two vertices the forest
admits at most one path, so once we guess which X-vertices a route visits,
in which order, and how it attaches to them (through surviving "forest"
edges or through fully removed "feedback" edges), the route is pinned down
segment by segment.

Candidate segments are glued together with *delay profiles*: per ordered
X-vertex, one bound per delay budget drawn from the relevant time steps
(appearance labels, shifted by the delay magnitude, plus infinity).  A
profile assignment is consistent exactly when each segment satisfies
:func:`check_route`; those equations have a unique forward solution, which
we construct directly instead of enumerating the profile space.  Every fully
assembled candidate is finally confirmed with the exact worst-case table, so
an accepted answer always carries a verified witness route.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from .temporal_graph import (
    INF,
    BudgetError,
    DRPInstance,
    Route,
    StaticGraph,
    TemporalGraph,
    Time,
    ValidationError,
    build_graph,
    underlying_graph,
)
from .verifier import is_delay_robust, worst_case_table

Appearance = tuple[int, int]  # (vertex, time label)

_FOREST = "forest"
_FEEDBACK = "feedback"


def remove_appearances(
    g: TemporalGraph, appearances: frozenset[Appearance] | set[Appearance]
) -> TemporalGraph:
    """Drop every arc whose departure or arrival endpoint matches an
    appearance; vertices are retained."""
    apps = frozenset(appearances)
    kept = [
        a for a in g.arcs if (a.src, a.t) not in apps and (a.dst, a.t) not in apps
    ]
    return build_graph(g.vertex_count, kept)


def _adjacency(edges) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in sorted(edges):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def _find_cycle(static: StaticGraph) -> list[tuple[int, int]] | None:
    """Some cycle of the static graph as a list of edges, or None."""
    adj = _adjacency(static.edges)
    visited: set[int] = set()
    for root in sorted(adj):
        if root in visited:
            continue
        visited.add(root)
        parent: dict[int, int | None] = {root: None}
        stack = [(root, iter(adj[root]))]
        while stack:
            v, neighbors = stack[-1]
            advanced = False
            for w in neighbors:
                if w == parent[v]:
                    continue
                if w in visited:
                    # in recursion-order DFS of an undirected graph this is a
                    # back edge, so w is an ancestor of v
                    path = [v]
                    while path[-1] != w:
                        path.append(parent[path[-1]])
                    edges = [(min(a, b), max(a, b)) for a, b in zip(path, path[1:])]
                    edges.append((min(v, w), max(v, w)))
                    return edges
                visited.add(w)
                parent[w] = v
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
    return None


def _tfvs_search(
    g: TemporalGraph, chosen: frozenset[Appearance], k: int
) -> frozenset[Appearance] | None:
    h = remove_appearances(g, chosen)
    cycle = _find_cycle(underlying_graph(h))
    if cycle is None:
        return chosen
    if k == 0:
        return None
    candidates: set[Appearance] = set()
    for u, v in cycle:
        refs = list(h.pair_index.get((u, v), ())) + list(h.pair_index.get((v, u), ()))
        # one representative arc per cycle edge: any solution removing this
        # edge must hit all of its arcs, in particular the representative
        arc = min((h.arcs[i] for i in refs), key=lambda a: (a.t, a.src, a.dst, a.trav))
        candidates.add((arc.src, arc.t))
        candidates.add((arc.dst, arc.t))
    for app in sorted(candidates):
        result = _tfvs_search(g, chosen | {app}, k - 1)
        if result is not None:
            return result
    return None


def compute_tfvs(g: TemporalGraph, max_size: int = 8) -> frozenset[Appearance]:
    """Exact minimum timed feedback vertex set by iterative deepening.

    Branches over the appearances that can break an arc on some cycle of the
    current underlying graph.  Raises :class:`BudgetError` beyond
    ``max_size``; callers may then supply a set explicitly to :func:`solve`.
    """
    for k in range(max_size + 1):
        result = _tfvs_search(g, frozenset(), k)
        if result is not None:
            assert _find_cycle(underlying_graph(remove_appearances(g, result))) is None
            return result
    raise BudgetError(
        f"no timed feedback vertex set of size <= {max_size} found within "
        "budget; pass one explicitly via solve(..., tfvs=...)"
    )


def _round_relevant(relevant: list[Time], t: Time) -> Time:
    for r in relevant:
        if r >= t:
            return r
    return INF


def check_route(
    g: TemporalGraph,
    r: Route,
    prof_s: tuple[Time, ...],
    prof_z: tuple[Time, ...],
    delta: int,
    relevant_times,
) -> bool:
    """Decide whether the end profile is the tight relevant bound of the
    start profile propagated along the route.

    For every j, starting the route at prof_s[i-1] with j-i delays budgeted
    (for each i <= j), prof_z[j-1] must equal the least relevant time step
    that upper-bounds all the resulting worst-case arrivals.  With empty
    profiles (x = 0) there is nothing to check.
    """
    if len(prof_s) != len(prof_z):
        raise ValidationError("delay profiles must have equal length")
    relevant = sorted(set(relevant_times) | {INF})
    x = len(prof_s)
    for j in range(1, x + 1):
        need: Time = -INF
        for i in range(1, j + 1):
            start = prof_s[i - 1]
            budget = j - i
            if start == INF:
                arr: Time = INF
            else:
                arr = worst_case_table(g, r, budget, delta, start=start).rows[-1][budget]
            if arr > need:
                need = arr
        if prof_z[j - 1] != _round_relevant(relevant, need):
            return False
    return True


def _forward_profile(
    g: TemporalGraph,
    segment: Route,
    prof_prev: tuple[Time, ...],
    delta: int,
    relevant: list[Time],
) -> tuple[Time, ...]:
    # the unique end profile that check_route accepts for this segment
    x = len(prof_prev)
    out: list[Time] = []
    for j in range(1, x + 1):
        need: Time = -INF
        for i in range(1, j + 1):
            start = prof_prev[i - 1]
            budget = j - i
            if start == INF:
                arr: Time = INF
            else:
                arr = worst_case_table(g, segment, budget, delta, start=start).rows[-1][budget]
            if arr > need:
                need = arr
        out.append(_round_relevant(relevant, need))
    return tuple(out)


def solve(
    inst: DRPInstance,
    tfvs: frozenset[Appearance] | set[Appearance] | None = None,
    max_size: int = 8,
) -> tuple[bool, Route | None]:
    """Decide the query; on a yes answer a verified witness route is returned.

    ``tfvs`` bypasses :func:`compute_tfvs` (its removal must leave the
    underlying graph cycle-free).
    """
    g, s, z, x, delta = inst.graph, inst.s, inst.z, inst.x, inst.delta
    if s == z:
        return True, (s,)
    X = frozenset(tfvs) if tfvs is not None else compute_tfvs(g, max_size)
    core = remove_appearances(g, X)
    forest = underlying_graph(core)
    if _find_cycle(forest) is not None:
        raise ValidationError("supplied appearance set does not break all cycles")
    full = underlying_graph(g)
    nonforest = full.edges - forest.edges
    forest_adj = _adjacency(forest.edges)
    xhat = sorted({v for v, _ in X})
    relevant = sorted({t for _, t in X} | {t + delta for _, t in X} | {INF})

    succ_jump: dict[int, list[int]] = {}
    pred_jump: dict[int, list[int]] = {}
    for u, v in g.pair_index:
        if u != v and (min(u, v), max(u, v)) in nonforest:
            succ_jump.setdefault(u, []).append(v)
            pred_jump.setdefault(v, []).append(u)
    for lst in succ_jump.values():
        lst.sort()
    for lst in pred_jump.values():
        lst.sort()

    def forest_path(a: int, b: int) -> Route | None:
        # unique path in a forest, if a and b share a tree
        if a == b:
            return (a,)
        prev: dict[int, int] = {a: a}
        frontier = [a]
        while frontier:
            nxt: list[int] = []
            for v in frontier:
                for w in forest_adj.get(v, ()):
                    if w not in prev:
                        prev[w] = v
                        if w == b:
                            path = [b]
                            while path[-1] != a:
                                path.append(prev[path[-1]])
                            return tuple(reversed(path))
                        nxt.append(w)
            frontier = nxt
        return None

    def segment_candidates(
        a: int, b: int, a_kinds: tuple[str, ...], b_kinds: tuple[str, ...], banned: set[int]
    ) -> list[Route]:
        found: list[Route] = []
        seen: set[Route] = set()

        def push(cand: Route | None) -> None:
            if cand is None or cand in seen:
                return
            if any(v in banned for v in cand[1:-1]):
                return
            seen.add(cand)
            found.append(cand)

        if _FOREST in a_kinds and _FOREST in b_kinds:
            push(forest_path(a, b))
        if _FEEDBACK in a_kinds and _FOREST in b_kinds:
            for u in succ_jump.get(a, ()):
                if u == b or u in banned:
                    continue
                p = forest_path(u, b)
                if p is not None:
                    push((a,) + p)
        if _FOREST in a_kinds and _FEEDBACK in b_kinds:
            for u in pred_jump.get(b, ()):
                if u == a or u in banned:
                    continue
                p = forest_path(a, u)
                if p is not None:
                    push(p + (b,))
        if _FEEDBACK in a_kinds and _FEEDBACK in b_kinds:
            if b in succ_jump.get(a, ()):
                push((a, b))
            for u in succ_jump.get(a, ()):
                if u == b or u in banned:
                    continue
                for u2 in pred_jump.get(b, ()):
                    if u2 == a or u2 in banned:
                        continue
                    p = forest_path(u, u2)
                    if p is not None:
                        push((a,) + p + (b,))
        return found

    tried: set[Route] = set()
    both_kinds = (_FOREST, _FEEDBACK)
    flag_options = tuple(product(both_kinds, repeat=2))  # (pred, succ) per vertex

    for size in range(len(xhat) + 1):
        for subset in combinations(xhat, size):
            for order in permutations(subset):
                if s in order and order[0] != s:
                    continue
                if z in order and order[-1] != z:
                    continue
                anchors: list[int] = [s]
                for v in order:
                    if v != anchors[-1]:
                        anchors.append(v)
                if anchors[-1] != z:
                    anchors.append(z)
                banned = set(anchors)
                for flag_combo in product(flag_options, repeat=len(order)):
                    flags = dict(zip(order, flag_combo))
                    per_segment: list[list[Route]] = []
                    feasible = True
                    for a, b in zip(anchors, anchors[1:]):
                        a_kinds = (flags[a][1],) if a in flags else both_kinds
                        b_kinds = (flags[b][0],) if b in flags else both_kinds
                        cands = segment_candidates(a, b, a_kinds, b_kinds, banned)
                        if not cands:
                            feasible = False
                            break
                        per_segment.append(cands)
                    if not feasible:
                        continue

                    start_profile: tuple[Time, ...] = (0,) * x

                    def assemble(
                        idx: int, acc: tuple[int, ...], used: set[int],
                        prof: tuple[Time, ...],
                    ) -> Route | None:
                        if idx == len(per_segment):
                            if acc in tried:
                                return None
                            tried.add(acc)
                            if is_delay_robust(g, acc, x, delta):
                                return acc
                            return None
                        for cand in per_segment[idx]:
                            ext = cand[1:]
                            if any(v in used for v in ext):
                                continue
                            nxt_prof = _forward_profile(g, cand, prof, delta, relevant)
                            if not check_route(g, cand, prof, nxt_prof, delta, relevant):
                                continue
                            result = assemble(
                                idx + 1, acc + ext, used | set(ext), nxt_prof
                            )
                            if result is not None:
                                return result
                        return None

                    witness = assemble(0, (s,), {s}, start_profile)
                    if witness is not None:
                        return True, witness
    return False, None
