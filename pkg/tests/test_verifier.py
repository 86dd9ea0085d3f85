import random

import pytest

from delayrobust import (
    INF,
    ValidationError,
    available_arcs,
    brute_force_arrival_vector,
    brute_force_robust,
    is_delay_robust,
    worst_case_step,
    worst_case_table,
)
from conftest import FIG1_ROUTE
from helpers import random_route_instance


def test_available_arcs_fig1(fig1):
    assert [fig1.arcs[i].t for i in available_arcs(fig1, 1, 2, 4)] == [4, 8]
    assert [fig1.arcs[i].t for i in available_arcs(fig1, 1, 2, 5)] == [8]
    assert available_arcs(fig1, 1, 2, fig1.T + 1) == []


def test_step_one_delay_matches_single_hop_oracle(fig1):
    # one delay with magnitude 3 on the a->b hop starting at 4
    assert worst_case_step(fig1, 1, 2, 4, 1, 3) == 8
    assert brute_force_arrival_vector(fig1, (1, 2), 1, 3)[1] == 8


def test_step_zero_delays(fig1):
    assert worst_case_step(fig1, 1, 2, 4, 0, 3) == 5


def test_step_after_last_departure(fig1):
    assert worst_case_step(fig1, 1, 2, 9, 0, 3) == INF
    assert worst_case_step(fig1, 1, 2, 9, 2, 3) == INF
    assert worst_case_step(fig1, 1, 2, INF, 1, 3) == INF


def test_table_fig1_final_rows(fig1):
    assert worst_case_table(fig1, FIG1_ROUTE, 1, 3).rows[-1] == (12, 15)
    final = worst_case_table(fig1, FIG1_ROUTE, 1, 5).rows[-1]
    assert final[0] == 12 and final[1] == INF


def test_table_single_vertex_route(fig1):
    table = worst_case_table(fig1, (2,), 3, 7)
    assert table.rows == ((0, 0, 0, 0),)


def test_table_shifted_start(fig1):
    # starting later can only push arrivals later
    assert worst_case_table(fig1, FIG1_ROUTE, 1, 3, start=3).rows[-1] == (12, 15)
    assert worst_case_table(fig1, FIG1_ROUTE, 1, 3, start=4).rows[-1][0] == INF


def test_robust_fig1(fig1):
    assert is_delay_robust(fig1, FIG1_ROUTE, 1, 3)
    assert not is_delay_robust(fig1, FIG1_ROUTE, 1, 5)


def test_robust_fig1_boundary_magnitude(fig1):
    assert brute_force_robust(fig1, FIG1_ROUTE, 1, 4)  # oracle confirms
    assert is_delay_robust(fig1, FIG1_ROUTE, 1, 4)


def test_repeated_vertex_rejected(fig1):
    with pytest.raises(ValidationError):
        is_delay_robust(fig1, (0, 1, 0), 1, 1)


def test_rows_monotone_in_budget_and_along_route():
    rng = random.Random(3)
    for _ in range(200):
        g, route, x, delta = random_route_instance(rng)
        rows = worst_case_table(g, route, x, delta).rows
        for row in rows:
            assert all(a <= b for a, b in zip(row, row[1:]))
        for above, below in zip(rows, rows[1:]):
            assert all(a <= b for a, b in zip(above, below))


def test_matches_oracle_on_sample():
    rng = random.Random(4)
    for _ in range(150):
        g, route, x, delta = random_route_instance(rng)
        table = worst_case_table(g, route, x, delta)
        assert table.rows[-1] == brute_force_arrival_vector(g, route, x, delta)
        assert is_delay_robust(g, route, x, delta) == brute_force_robust(g, route, x, delta)
