import random

import pytest

from delayrobust import (
    INF,
    STARTING,
    TRAVERSAL,
    BudgetError,
    DelaySet,
    DRPInstance,
    TimeArc,
    build_graph,
    brute_force_robust,
    brute_force_solve,
    earliest_delayed_arrival,
)
from delayrobust.oracle import _exhaustive_arrival, _greedy_arrival, relevant_arcs
from conftest import FIG1_ROUTE
from helpers import random_graph, random_route_instance


def _delay(g, pairs, kind, delta):
    refs = frozenset(
        i for i, a in enumerate(g.arcs) if (a.src, a.dst, a.t, a.trav) in pairs
    )
    assert len(refs) == len(pairs)
    return DelaySet(refs, kind, delta)


def test_undelayed_arrival_fig1(fig1):
    d = DelaySet(frozenset(), TRAVERSAL, 0)
    assert earliest_delayed_arrival(fig1, FIG1_ROUTE, d) == 12


def test_delayed_first_arc_fig1(fig1):
    d = _delay(fig1, {(0, 1, 3, 1)}, TRAVERSAL, 3)
    assert earliest_delayed_arrival(fig1, FIG1_ROUTE, d) == 12


def test_unused_delays_change_nothing(fig1):
    rng = random.Random(0)
    route = (0, 1)  # only the first arc is relevant
    base = earliest_delayed_arrival(fig1, route, DelaySet(frozenset(), TRAVERSAL, 0))
    for _ in range(20):
        off_route = frozenset(
            i for i in rng.sample(range(6), rng.randint(1, 5)) if fig1.arcs[i].src != 0
        )
        assert earliest_delayed_arrival(
            fig1, route, DelaySet(off_route, TRAVERSAL, 4)
        ) == base


def test_relevant_arcs_are_consecutive_pairs(fig1):
    assert relevant_arcs(fig1, (0, 1, 2)) == [0, 1, 2]
    assert relevant_arcs(fig1, (1, 2)) == [1, 2]


def test_robust_fig1(fig1):
    assert brute_force_robust(fig1, FIG1_ROUTE, 1, 3)
    assert not brute_force_robust(fig1, FIG1_ROUTE, 1, 5)
    # delaying the first arc is the breaking witness at magnitude 5
    d = _delay(fig1, {(0, 1, 3, 1)}, TRAVERSAL, 5)
    assert earliest_delayed_arrival(fig1, FIG1_ROUTE, d) == INF


def test_zero_budget_is_plain_path_existence(fig1):
    assert brute_force_robust(fig1, FIG1_ROUTE, 0, 9)
    gap = build_graph(2, [TimeArc(0, 1, 1, 1)])
    assert brute_force_robust(gap, (0, 1), 0, 5)


def test_budget_guard():
    g = build_graph(2, [TimeArc(0, 1, t, 0) for t in range(40)])
    with pytest.raises(BudgetError, match="too large"):
        brute_force_robust(g, (0, 1), 3, 1, budget=100)


def test_solve_fig1(fig1):
    assert brute_force_solve(DRPInstance(fig1, 0, 4, 1, 3)) == FIG1_ROUTE
    assert brute_force_solve(DRPInstance(fig1, 0, 4, 1, 5)) is None


def test_solve_trivial_cases(fig1):
    assert brute_force_solve(DRPInstance(fig1, 2, 2, 3, 9)) == (2,)
    disconnected = build_graph(3, [TimeArc(0, 1, 1, 1)])
    assert brute_force_solve(DRPInstance(disconnected, 0, 2, 1, 1)) is None


def test_greedy_equals_exhaustive_for_both_kinds():
    rng = random.Random(9)
    for _ in range(300):
        g, route, x, delta = random_route_instance(rng)
        refs = relevant_arcs(g, route)
        delayed = frozenset(rng.sample(refs, min(len(refs), rng.randint(0, 3))))
        for kind in (TRAVERSAL, STARTING):
            d = DelaySet(delayed, kind, delta)
            assert _greedy_arrival(g, route, d) == _exhaustive_arrival(g, route, d)


def test_delay_kinds_agree_on_robustness():
    rng = random.Random(10)
    for _ in range(250):
        g, route, x, delta = random_route_instance(rng)
        assert brute_force_robust(g, route, x, delta, TRAVERSAL) == brute_force_robust(
            g, route, x, delta, STARTING
        )


def test_minimal_breaking_traversal_set_also_breaks_starting():
    # shrink a breaking delay set to a minimal one and recheck it
    rng = random.Random(11)
    found = 0
    for _ in range(400):
        g, route, x, delta = random_route_instance(rng)
        if delta == 0:
            continue
        refs = relevant_arcs(g, route)
        breaking = None
        for size in range(min(x, len(refs)) + 1):
            for _ in range(30):
                d = frozenset(rng.sample(refs, min(size, len(refs))))
                if earliest_delayed_arrival(g, route, DelaySet(d, TRAVERSAL, delta)) == INF:
                    breaking = d
                    break
            if breaking:
                break
        if breaking is None:
            continue
        shrunk = set(breaking)
        changed = True
        while changed:
            changed = False
            for ref in sorted(shrunk):
                smaller = frozenset(shrunk - {ref})
                if earliest_delayed_arrival(
                    g, route, DelaySet(smaller, TRAVERSAL, delta)
                ) == INF:
                    shrunk.discard(ref)
                    changed = True
        d = DelaySet(frozenset(shrunk), STARTING, delta)
        assert earliest_delayed_arrival(g, route, d) == INF
        found += 1
    assert found >= 20


def test_solve_agrees_with_itself_across_kinds():
    rng = random.Random(12)
    for _ in range(60):
        n = rng.randint(2, 5)
        g = random_graph(rng, n, rng.randint(1, 8))
        inst = DRPInstance(g, 0, n - 1, rng.randint(0, 2), rng.randint(0, 2))
        yes_t = brute_force_solve(inst, TRAVERSAL) is not None
        yes_s = brute_force_solve(inst, STARTING) is not None
        assert yes_t == yes_s
