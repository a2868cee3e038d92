"""Exact worst-case overheads by enumeration, plus the DFS tightness construction."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import closed_forms
from .engine import (
    DfsAlpha,
    StrategySpec,
    check_alpha,
    describe,
    execute,
    increasing_alpha,
    strategy_to_dict,
)
from .errors import BudgetExceededError, InvalidGraphError, InvalidStrategyError
from .graph import (
    FaultConfiguration,
    PortLabeledGraph,
    all_fault_configurations,
    edge_key,
    find_hamiltonian_cycle,
    ring_scenario,
    ring_scenarios,
    scenario_faults,
)
from .opt import opt_covering_walk, opt_ring

DEFAULT_EDGE_BUDGET = 22
DEFAULT_ORACLE_BUDGET = 20


@dataclass(frozen=True)
class FullPowerset:
    name = "powerset"


@dataclass(frozen=True)
class RingScenarios:
    name = "ring"


@dataclass(frozen=True)
class ExplicitList:
    configs: tuple[FaultConfiguration, ...]
    name = "list"


ScenarioFamily = FullPowerset | RingScenarios | ExplicitList


@dataclass(frozen=True)
class ConfigResult:
    faults: FaultConfiguration
    cost: int
    opt: int
    ratio: Fraction


@dataclass
class OverheadReport:
    strategy: StrategySpec
    graph: str
    start: int
    family: str
    overhead: Fraction
    witness: FaultConfiguration
    configurations: int
    per_config: list[ConfigResult] | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        out = {
            "strategy": strategy_to_dict(self.strategy),
            "graph": self.graph,
            "start": self.start,
            "family": self.family,
            "configurations": self.configurations,
            "overhead": ratio_dict(self.overhead),
            "witness": self.witness.to_dict(),
        }
        if self.per_config is not None:
            out["perConfig"] = [
                {
                    "faulty": [list(e) for e in r.faults],
                    "cost": r.cost,
                    "opt": r.opt,
                    "ratio": ratio_dict(r.ratio),
                }
                for r in self.per_config
            ]
        return out


def ratio_dict(r: Fraction) -> dict:
    return {"num": str(r.numerator), "den": str(r.denominator)}


def fmt(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def ratio(cost: int, opt: int) -> Fraction:
    # opt == 0 only for an isolated start, where cost is 0 as well
    if opt == 0:
        if cost != 0:
            raise AssertionError(f"cost {cost} with zero optimum")
        return Fraction(1)
    return Fraction(cost, opt)


def describe_graph(g: PortLabeledGraph) -> str:
    if g.is_ring:
        return f"ring(n={g.n})"
    return f"graph(n={g.n},m={len(g.edges)})"


def evaluate(
    g: PortLabeledGraph,
    v: int,
    spec: StrategySpec,
    f: FaultConfiguration,
    *,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
    opt_method: str = "auto",
) -> ConfigResult:
    trace = execute(g, f, v, spec)
    if not trace.completed:
        raise InvalidStrategyError(f"{describe(spec)} stopped before covering the component")
    if opt_method == "ring" or (opt_method == "auto" and g.is_ring):
        opt = opt_ring(g.n, ring_scenario(g, f, v)).cost
    else:
        opt = opt_covering_walk(g, f, v, budget=oracle_budget, witness=False).cost
    return ConfigResult(f, trace.cost, opt, ratio(trace.cost, opt))


def _evaluate_chunk(args):
    g, v, spec, configs, oracle_budget, opt_method = args
    return [
        evaluate(g, v, spec, f, oracle_budget=oracle_budget, opt_method=opt_method)
        for f in configs
    ]


def family_configs(g: PortLabeledGraph, v: int, family: ScenarioFamily, edge_budget: int):
    if isinstance(family, FullPowerset):
        if len(g.edges) > edge_budget:
            raise BudgetExceededError(
                f"powerset over {len(g.edges)} edges exceeds budget {edge_budget}; "
                "use the ring or list family"
            )
        return list(all_fault_configurations(g))
    if isinstance(family, RingScenarios):
        if not g.is_ring:
            raise InvalidGraphError("ring scenarios need a ring")
        return [scenario_faults(g, v, s) for s in ring_scenarios(g.n)]
    if isinstance(family, ExplicitList):
        for f in family.configs:
            f.check_against(g)
        return list(family.configs)
    raise TypeError(f"unknown family {family!r}")


def overhead(
    g: PortLabeledGraph,
    v: int,
    spec: StrategySpec,
    family: ScenarioFamily | None = None,
    *,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
    opt_method: str = "auto",
    keep_configs: bool = False,
    workers: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> OverheadReport:
    """Maximum of cost/opt over a family of fault configurations.

    Ties keep the first configuration in enumeration order, so the witness
    does not depend on ``workers``.
    """
    if family is None:
        family = RingScenarios() if g.is_ring else FullPowerset()
    configs = family_configs(g, v, family, edge_budget)
    if not configs:
        raise InvalidGraphError("empty scenario family")
    results: list[ConfigResult] = []
    chunk = max(1, min(4096, len(configs) // (4 * max(workers, 1)) or 1))
    jobs = [
        (g, v, spec, configs[k : k + chunk], oracle_budget, opt_method)
        for k in range(0, len(configs), chunk)
    ]
    if workers > 1 and len(configs) >= 2048:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_evaluate_chunk, jobs):
                results.extend(part)
                if progress:
                    progress(len(results), len(configs))
    else:
        for job in jobs:
            results.extend(_evaluate_chunk(job))
            if progress:
                progress(len(results), len(configs))
    best = results[0]
    for r in results[1:]:
        if r.ratio > best.ratio:
            best = r
    return OverheadReport(
        strategy=spec,
        graph=describe_graph(g),
        start=v,
        family=family.name,
        overhead=best.ratio,
        witness=best.faults,
        configurations=len(results),
        per_config=results if keep_configs else None,
    )


def default_workers() -> int:
    return os.cpu_count() or 1


# -- complete-graph tightness -------------------------------------------------


def tightness_path(g: PortLabeledGraph, alpha, v: int) -> list[int]:
    """The node order ``v_1..v_n`` of the adversarial construction on ``K_n``."""
    n = g.n
    if any(g.degree(u) != n - 1 for u in range(n)):
        raise InvalidGraphError("adversarial construction needs a complete graph")
    if n < 4:
        raise InvalidGraphError("adversarial construction needs n >= 4")
    check_alpha(g, alpha)
    w = g.neighbor(v, alpha[v][0])[0]
    sigma_w = alpha[w]
    back = g.port_to(w, v)
    k = sigma_w.index(back)  # 0-based position of the port leading back to v
    rest = [idx for idx in range(n - 1) if idx != k]
    a, b = rest[0], rest[1]
    u1 = g.neighbor(w, sigma_w[a])[0]
    u2 = g.neighbor(w, sigma_w[b])[0]
    middle = sorted(set(range(n)) - {v, w, u1, u2})
    return [v, *middle, u1, w, u2]


def adversarial_complete(g: PortLabeledGraph, alpha=None, v: int = 0) -> FaultConfiguration:
    """Faults leaving only the path ``v_1..v_n`` plus the edge ``{v_1, v_{n-1}}``."""
    if alpha is None:
        alpha = increasing_alpha(g)
    path = tightness_path(g, alpha, v)
    keep = {edge_key(path[0], path[-2])}
    keep.update(edge_key(a, b) for a, b in zip(path, path[1:]))
    return FaultConfiguration(frozenset(e for e in g.edges if e not in keep))


# -- DFS bound -----------------------------------------------------------------


@dataclass
class DfsBoundReport:
    graph: str
    start: int
    bound: Fraction
    overheads: list[Fraction]
    max_overhead: Fraction
    witness_alpha: int
    witness: FaultConfiguration

    @property
    def holds(self) -> bool:
        return self.max_overhead <= self.bound


def dfs_bound_check(
    g: PortLabeledGraph,
    v: int,
    alphas: Sequence | None = None,
    family: ScenarioFamily | None = None,
    **kwargs,
) -> DfsBoundReport:
    ham = find_hamiltonian_cycle(g)
    if not ham.found:
        raise InvalidGraphError(f"DFS bound applies to Hamiltonian graphs; search says {ham.status}")
    if alphas is None:
        alphas = [None]
    reports = [overhead(g, v, DfsAlpha(a), family or FullPowerset(), **kwargs) for a in alphas]
    idx = max(range(len(reports)), key=lambda k: (reports[k].overhead, -k))
    return DfsBoundReport(
        graph=describe_graph(g),
        start=v,
        bound=closed_forms.dfs_bound(g.n),
        overheads=[r.overhead for r in reports],
        max_overhead=reports[idx].overhead,
        witness_alpha=idx,
        witness=reports[idx].witness,
    )


# -- ratio table ------------------------------------------------------------------

TEN_NINTHS = Fraction(10, 9)
SIX_PERCENT = Fraction(106, 100)


@dataclass(frozen=True)
class RatioRow:
    n: int
    dfs_bound: Fraction
    lower_bound: Fraction
    quotient: Fraction

    @property
    def ok(self) -> bool:
        if self.quotient > TEN_NINTHS:
            return False
        return self.n < 24 or self.quotient < SIX_PERCENT


def ratio_report(ns: Iterable[int]) -> list[RatioRow]:
    rows = []
    for n in ns:
        d, lb = closed_forms.dfs_bound(n), closed_forms.lower_bound(n)
        rows.append(RatioRow(n, d, lb, d / lb))
    return rows
