import json

import pytest

from faultwalk.errors import GraphParseError, InvalidGraphError, InvalidSizeError
from faultwalk.graph import (
    EMPTY,
    FaultConfiguration,
    RingScenario,
    build_complete,
    build_hypercube,
    build_ring,
    build_torus,
    fault_free_component,
    find_hamiltonian_cycle,
    from_neighbor_lists,
    graph_to_dict,
    is_hamiltonian_cycle,
    parse_faults,
    parse_graph,
    ring_scenario,
    ring_scenarios,
    scenario_faults,
    serialize_graph,
)


def test_ring_triangle():
    g = build_ring(3)
    assert g.n == 3
    assert all(g.degree(u) == 2 for u in range(3))


def test_ring_port_convention():
    g = build_ring(6)
    assert g.neighbor(0, 2) == (1, 1)
    assert g.neighbor(0, 1) == (5, 2)
    assert g.is_ring


def test_ring_minus_edge_is_path():
    g = build_ring(5)
    f = FaultConfiguration.of([(4, 0)])
    comp = fault_free_component(g, f, 0)
    assert comp.m == 5
    assert len(comp.free_edges) == 4


@pytest.mark.parametrize("n", [0, 1, 2])
def test_ring_too_small(n):
    with pytest.raises(InvalidSizeError):
        build_ring(n)


def test_complete_and_hypercube_sizes():
    k4 = build_complete(4)
    assert len(k4.edges) == 6
    assert all(k4.degree(u) == 3 for u in range(4))
    q3 = build_hypercube(3)
    assert q3.n == 8 and len(q3.edges) == 12


def test_generator_ports_ascend():
    q3 = build_hypercube(3)
    for u in range(q3.n):
        assert q3.neighbors(u) == sorted(q3.neighbors(u))


def test_torus():
    t = build_torus(3, 4)
    assert t.n == 12 and len(t.edges) == 24
    res = find_hamiltonian_cycle(t)
    assert res.found and is_hamiltonian_cycle(t, res.cycle)
    with pytest.raises(InvalidSizeError):
        build_torus(3, 3)
    with pytest.raises(InvalidSizeError):
        build_torus(2, 4)


@pytest.mark.parametrize("bad", [lambda: build_complete(2), lambda: build_hypercube(1)])
def test_generator_preconditions(bad):
    with pytest.raises(InvalidSizeError):
        bad()


@pytest.mark.parametrize(
    "g", [build_ring(3), build_ring(7), build_complete(5), build_hypercube(3), build_torus(4, 3)]
)
def test_round_trip(g):
    assert parse_graph(serialize_graph(g)) == g


def test_round_trip_keeps_labels():
    g = from_neighbor_lists([[1, 2], [0, 2], [0, 1]], labels=["a", "b", "c"])
    back = parse_graph(serialize_graph(g))
    assert back.labels == ("a", "b", "c")


def _doc(g):
    return graph_to_dict(g)


def test_parse_rejects_missing_reciprocal():
    doc = _doc(build_ring(4))
    doc["nodes"][1]["ports"][0]["toPort"] = 1  # node 0's port 1 leads to 3, not 1
    with pytest.raises(GraphParseError, match="node 1"):
        parse_graph(json.dumps(doc))


def test_parse_rejects_duplicate_port():
    doc = _doc(build_ring(4))
    doc["nodes"][2]["ports"][1]["port"] = 1
    with pytest.raises(GraphParseError, match="duplicate port 1"):
        parse_graph(json.dumps(doc))


def test_parse_rejects_disconnected():
    doc = {
        "n": 4,
        "nodes": [
            {"id": 0, "ports": [{"port": 1, "to": 1, "toPort": 1}]},
            {"id": 1, "ports": [{"port": 1, "to": 0, "toPort": 1}]},
            {"id": 2, "ports": [{"port": 1, "to": 3, "toPort": 1}]},
            {"id": 3, "ports": [{"port": 1, "to": 2, "toPort": 1}]},
        ],
    }
    with pytest.raises(GraphParseError, match="connected"):
        parse_graph(json.dumps(doc))


def test_parse_rejects_extra_keys():
    doc = _doc(build_ring(3))
    doc["weights"] = []
    with pytest.raises(GraphParseError):
        parse_graph(json.dumps(doc))


def test_faults_parse_and_check():
    g = build_ring(5)
    assert parse_faults('{"faulty": [[1, 0]]}', g) == FaultConfiguration.of([(0, 1)])
    with pytest.raises(GraphParseError):
        parse_faults('{"faulty": [[0, 2]]}', g)
    with pytest.raises(GraphParseError):
        parse_faults('{"faults": []}')


def test_component_examples():
    g = build_ring(6)
    assert fault_free_component(g, EMPTY, 0).nodes == frozenset(range(6))
    iso = FaultConfiguration.of([(5, 0), (0, 1)])
    assert fault_free_component(g, iso, 0).m == 1
    # x=2, y=3 is a single fault: every node stays reachable, m = x + y + 1
    f = scenario_faults(g, 0, RingScenario(2, 3))
    assert len(f) == 1
    assert fault_free_component(g, f, 0).m == 6


def test_ring_scenario_examples():
    g6 = build_ring(6)
    assert ring_scenario(g6, EMPTY, 0).is_empty
    assert ring_scenario(g6, FaultConfiguration.of([(4, 3)]), 0) == RingScenario(2, 3)
    g7 = build_ring(7)
    f = FaultConfiguration.of([(5, 4), (0, 1)])
    assert ring_scenario(g7, f, 0) == RingScenario(2, 0)
    f = FaultConfiguration.of([(5, 4), (4, 3)])
    assert ring_scenario(g7, f, 0) == RingScenario(2, 3)
    assert ring_scenario(g7, scenario_faults(g7, 0, RingScenario(2, 4)), 0) == RingScenario(2, 4)


def test_ring_scenario_rejects_non_ring():
    with pytest.raises(InvalidGraphError):
        ring_scenario(build_complete(4), EMPTY, 0)


def test_scenario_count():
    # empty plus every (x, y) with x + y <= n - 1
    n = 7
    assert len(list(ring_scenarios(n))) == 1 + n * (n + 1) // 2


def test_scenario_realisation_round_trip():
    for n in range(3, 10):
        g = build_ring(n)
        for s in ring_scenarios(n):
            for v in (0, n // 2):
                assert ring_scenario(g, scenario_faults(g, v, s), v) == s


def test_hamiltonian_examples():
    ring = build_ring(8)
    res = find_hamiltonian_cycle(ring)
    assert res.found and is_hamiltonian_cycle(ring, res.cycle)
    k5 = build_complete(5)
    res = find_hamiltonian_cycle(k5)
    assert res.found and len(res.cycle) == 5 and is_hamiltonian_cycle(k5, res.cycle)
    star = from_neighbor_lists([[1, 2, 3], [0], [0], [0]])
    assert find_hamiltonian_cycle(star).status == "none"


def test_hamiltonian_budget_is_explicit():
    big = build_complete(25)
    assert find_hamiltonian_cycle(big).status == "undecided"
    petersen = from_neighbor_lists(
        [[1, 4, 5], [0, 2, 6], [1, 3, 7], [2, 4, 8], [0, 3, 9],
         [0, 7, 8], [1, 8, 9], [2, 5, 9], [3, 5, 6], [4, 6, 7]]
    )
    assert find_hamiltonian_cycle(petersen).status == "none"
    assert find_hamiltonian_cycle(petersen, max_steps=3).status == "undecided"


@pytest.mark.parametrize("g", [build_ring(9), build_complete(6), build_hypercube(4), build_torus(3, 4)])
def test_generators_are_hamiltonian(g):
    assert find_hamiltonian_cycle(g).found
