from fractions import Fraction as F

import pytest

from faultwalk import closed_forms as cf
from faultwalk.engine import (
    ClassA0,
    DfsAlpha,
    Direction,
    GeneralAk,
    GoFirm,
    IStepA1,
    RingAlgorithm,
    execute,
    increasing_alpha,
)
from faultwalk.errors import BudgetExceededError, InvalidGraphError, InvalidStrategyError
from faultwalk.graph import (
    FaultConfiguration,
    build_complete,
    build_hypercube,
    build_ring,
    from_neighbor_lists,
)
from faultwalk.opt import opt_covering_walk
from faultwalk.overhead import (
    ExplicitList,
    FullPowerset,
    RingScenarios,
    adversarial_complete,
    dfs_bound_check,
    evaluate,
    overhead,
    ratio_report,
    tightness_path,
)

from oracles import brute_opt

L, R = Direction.LEFT, Direction.RIGHT


@pytest.mark.parametrize(
    "n, spec, value",
    [
        (10, RingAlgorithm(), F(18, 11)),
        (24, RingAlgorithm(), F(47, 26)),
        (7, ClassA0(L), F(11, 7)),
        (7, ClassA0(R), F(11, 7)),
        (30, RingAlgorithm(), F(59, 32)),
    ],
)
def test_ring_overheads(n, spec, value):
    rep = overhead(build_ring(n), 0, spec, RingScenarios())
    assert rep.overhead == value
    again = evaluate(build_ring(n), 0, spec, rep.witness)
    assert again.ratio == value


def test_witness_and_per_config():
    rep = overhead(build_ring(9), 0, RingAlgorithm(), keep_configs=True)
    assert rep.family == "ring"
    assert all(r.ratio <= rep.overhead for r in rep.per_config)
    assert any(r.faults == rep.witness and r.ratio == rep.overhead for r in rep.per_config)
    assert min(r.ratio for r in rep.per_config) >= 1
    data = rep.to_dict()
    assert data["overhead"] == {"num": "8", "den": "5"}
    assert len(data["perConfig"]) == rep.configurations


def test_powerset_budget():
    with pytest.raises(BudgetExceededError):
        overhead(build_complete(8), 0, DfsAlpha(), FullPowerset())


def test_ring_family_needs_ring():
    with pytest.raises(InvalidGraphError):
        overhead(build_complete(4), 0, DfsAlpha(), RingScenarios())


def test_incomplete_strategy_rejected():
    with pytest.raises(InvalidStrategyError):
        overhead(build_ring(6), 0, GoFirm(L))


def test_explicit_list():
    g = build_ring(8)
    configs = (FaultConfiguration(), FaultConfiguration.of([(6, 5)]))
    rep = overhead(g, 0, RingAlgorithm(), ExplicitList(configs))
    assert rep.family == "list" and rep.configurations == 2
    # x=2 with the lone fault: cost 2 + 2*5 + 2 = 14, opt 2*2 + 5 = 9
    assert rep.overhead == F(14, 9)


def test_workers_do_not_change_result():
    g = build_complete(6)
    one = overhead(g, 0, DfsAlpha(), FullPowerset(), workers=1)
    many = overhead(g, 0, DfsAlpha(), FullPowerset(), workers=3)
    assert (one.overhead, one.witness) == (many.overhead, many.witness)


def test_ring_scenarios_suffice_small():
    for n in range(3, 9):
        g = build_ring(n)
        specs = [RingAlgorithm(), ClassA0(L), ClassA0(R), DfsAlpha()]
        specs += [IStepA1(i, d) for i in range(1, n - 1) for d in (L, R)]
        if n >= 5:
            specs.append(GeneralAk((1, 2), R))
        for spec in specs:
            a = overhead(g, 0, spec, RingScenarios()).overhead
            b = overhead(g, 0, spec, FullPowerset(), opt_method="search").overhead
            assert a == b, (n, spec)


# -- complete graph tightness ------------------------------------------------------


def test_construction_n5():
    k5 = build_complete(5)
    path = tightness_path(k5, increasing_alpha(k5), 0)
    # v_1 = 0, w = 1, u' = 2, u'' = 3, remaining node 4 in the middle
    assert path == [0, 4, 2, 1, 3]
    f = adversarial_complete(k5)
    assert len(f) == 10 - 5
    assert execute(k5, f, 0, DfsAlpha()).cost == 6
    assert opt_covering_walk(k5, f, 0).cost == 4 == brute_opt(k5, f, 0)


def test_construction_other_start_and_alpha():
    k6 = build_complete(6)
    alpha = tuple(tuple(reversed(p)) for p in increasing_alpha(k6))
    f = adversarial_complete(k6, alpha, 3)
    assert execute(k6, f, 3, DfsAlpha(alpha)).cost == 2 * 6 - 4
    assert brute_opt(k6, f, 3) == 5


def test_construction_rejects():
    with pytest.raises(InvalidGraphError):
        adversarial_complete(build_ring(5))
    with pytest.raises(InvalidGraphError):
        adversarial_complete(build_complete(3))


# -- DFS bound ----------------------------------------------------------------


@pytest.mark.parametrize("n", [4, 5])
def test_dfs_bound_complete_exact(n):
    rep = dfs_bound_check(build_complete(n), 0)
    assert rep.holds and rep.max_overhead == cf.dfs_bound(n)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_dfs_bound_ring(n):
    g = build_ring(n)
    alphas = [None, ((2, 1),) * n]
    rep = dfs_bound_check(g, 0, alphas)
    assert rep.overheads == [cf.class_a0(n)] * 2
    assert rep.max_overhead < rep.bound


def test_dfs_bound_hypercube():
    rep = dfs_bound_check(build_hypercube(3), 0)
    assert rep.holds
    assert rep.max_overhead <= F(12, 7)
    # value observed by the exhaustive run over all 4096 configurations
    assert rep.max_overhead == F(5, 3)


def test_dfs_bound_non_hamiltonian():
    star = from_neighbor_lists([[1, 2, 3], [0], [0], [0]])
    with pytest.raises(InvalidGraphError):
        dfs_bound_check(star, 0)


# -- ratio table ------------------------------------------------------------------


def test_ratio_rows():
    rows = {r.n: r for r in ratio_report(range(3, 61))}
    assert rows[6].quotient == F(16, 15)
    assert rows[7].quotient == F(10, 9)
    assert rows[5].quotient == F(15, 14)
    assert rows[8].quotient == F(54, 49)
    assert rows[23].quotient == F(35, 33)
    assert rows[24].quotient == F(1144, 1081)
    assert rows[3].quotient == 1
    assert all(r.ok for r in rows.values())
