"""Offline optimum: cheapest exploration by an agent that knows the faults."""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceededError, InvalidGraphError
from .graph import FaultConfiguration, PortLabeledGraph, RingScenario, fault_free_component


@dataclass(frozen=True)
class OptResult:
    cost: int
    witness_walk: tuple[int, ...] | None = None


def opt_ring(n: int, scenario: RingScenario) -> OptResult:
    scenario.check(n)
    if scenario.is_empty:
        return OptResult(n - 1)
    x, y = scenario.x, scenario.y
    return OptResult(min(2 * x + y, 2 * y + x))


def opt_covering_walk(
    g: PortLabeledGraph,
    f: FaultConfiguration,
    v: int,
    *,
    budget: int = 20,
    witness: bool = True,
) -> OptResult:
    """Shortest walk from ``v`` over free edges that visits the whole component.

    Breadth-first search over ``(node, visited set)`` states; every move costs
    one traversal, so the first state with full coverage is optimal.
    """
    comp = fault_free_component(g, f, v)
    m = comp.m
    if m > budget:
        raise BudgetExceededError(f"component has {m} nodes, oracle budget is {budget}")
    if m == 1:
        return OptResult(0, (v,) if witness else None)
    nodes = sorted(comp.nodes)
    index = {u: k for k, u in enumerate(nodes)}
    adj = [[] for _ in range(m)]
    for a, b in comp.free_edges:
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])
    full = (1 << m) - 1
    s0 = index[v]
    start = (1 << s0) * m + s0
    seen = bytearray((full + 1) * m)
    seen[start] = 1
    parent = array("l", [-1]) * ((full + 1) * m) if witness else None
    queue = deque([(start, 0)])
    while queue:
        state, dist = queue.popleft()
        mask, u = divmod(state, m)
        if mask == full:
            walk = None
            if witness:
                seq = []
                while state != -1:
                    seq.append(nodes[state % m])
                    state = parent[state]
                walk = tuple(reversed(seq))
            return OptResult(dist, walk)
        for w in adj[u]:
            nxt = (mask | (1 << w)) * m + w
            if not seen[nxt]:
                seen[nxt] = 1
                if witness:
                    parent[nxt] = state
                queue.append((nxt, dist + 1))
    raise InvalidGraphError("component is not connected")  # unreachable for a real component
