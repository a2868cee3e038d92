"""Exact competitive analysis of mobile-agent exploration with faulty edges."""

__version__ = "0.1.0"

from .closed_forms import class_a0, dfs_bound, istep_a1, lower_bound, ring_overhead
from .engine import (
    AgentView,
    ClassA0,
    DfsAlpha,
    Direction,
    ExplorationTrace,
    GeneralAk,
    GoFirm,
    IStepA1,
    RingAlgorithm,
    execute,
    validate_trace,
)
from .game import minimax_lower_bound
from .graph import (
    EMPTY,
    FaultConfiguration,
    PortLabeledGraph,
    RingScenario,
    build_complete,
    build_hypercube,
    build_ring,
    build_torus,
    fault_free_component,
    find_hamiltonian_cycle,
    parse_graph,
    ring_scenario,
    serialize_graph,
)
from .opt import opt_covering_walk, opt_ring
from .overhead import (
    ExplicitList,
    FullPowerset,
    RingScenarios,
    adversarial_complete,
    dfs_bound_check,
    overhead,
    ratio_report,
)
