import pytest

from faultwalk.errors import BudgetExceededError, InvalidGraphError
from faultwalk.graph import (
    EMPTY,
    FaultConfiguration,
    RingScenario,
    build_complete,
    build_ring,
    from_neighbor_lists,
    ring_scenarios,
    scenario_faults,
)
from faultwalk.opt import opt_covering_walk, opt_ring

from oracles import brute_opt


@pytest.mark.parametrize(
    "n, scenario, expected",
    [
        (6, RingScenario(2, 3), 7),
        (9, RingScenario(), 8),
        (6, RingScenario(0, 5), 5),
        (6, RingScenario(0, 0), 0),
        (10, RingScenario(4, 1), 6),
    ],
)
def test_opt_ring(n, scenario, expected):
    assert opt_ring(n, scenario).cost == expected


def test_opt_ring_rejects_bad_scenario():
    with pytest.raises(InvalidGraphError):
        opt_ring(5, RingScenario(3, 2))
    with pytest.raises(InvalidGraphError):
        opt_ring(5, RingScenario(1, None))


def test_path_from_endpoint():
    path = from_neighbor_lists([[1], [0, 2], [1]])
    res = opt_covering_walk(path, EMPTY, 0)
    assert res.cost == 2 and res.witness_walk == (0, 1, 2)


def test_ring_scenario_matches_closed_form():
    g = build_ring(6)
    f = scenario_faults(g, 0, RingScenario(2, 3))
    assert opt_covering_walk(g, f, 0).cost == 7 == brute_opt(g, f, 0)


def test_k4_reduced_to_path():
    k4 = build_complete(4)
    keep = {(0, 1), (1, 2), (2, 3)}
    f = FaultConfiguration(frozenset(e for e in k4.edges if e not in keep))
    res = opt_covering_walk(k4, f, 0)
    assert res.cost == 3 == brute_opt(k4, f, 0)
    assert res.witness_walk == (0, 1, 2, 3)


def test_isolated_start():
    g = build_ring(5)
    f = scenario_faults(g, 2, RingScenario(0, 0))
    assert opt_covering_walk(g, f, 2).cost == 0


def test_witness_is_a_covering_walk():
    g = build_complete(5)
    f = FaultConfiguration.of([(0, 1), (2, 3), (1, 4)])
    res = opt_covering_walk(g, f, 0)
    walk = res.witness_walk
    assert walk[0] == 0 and len(walk) - 1 == res.cost
    assert set(walk) == set(range(5))
    assert all(g.has_edge(a, b) and not f.is_faulty(a, b) for a, b in zip(walk, walk[1:]))


def test_budget():
    with pytest.raises(BudgetExceededError):
        opt_covering_walk(build_ring(12), EMPTY, 0, budget=10)


@pytest.mark.parametrize("n", range(3, 9))
def test_ring_agreement_small(n):
    g = build_ring(n)
    for s in ring_scenarios(n):
        f = scenario_faults(g, 0, s)
        assert opt_covering_walk(g, f, 0, witness=False).cost == opt_ring(n, s).cost
