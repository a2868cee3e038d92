"""Strategy execution under the faulty-edge observation model.

A strategy is a generator function taking an :class:`AgentView` and yielding
port numbers.  The executor performs each move, reveals the fault status of
newly visited nodes, and stops the run at the first move that completes
coverage of the fault-free component.  The view refuses to report fault
status at nodes the agent has not visited.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Generator, Iterator, NamedTuple, Sequence

from .errors import InvalidStrategyError, ObservationError, TraceError
from .graph import (
    LEFT_PORT,
    RIGHT_PORT,
    FaultConfiguration,
    PortLabeledGraph,
    component_nodes,
    fault_free_component,
)


class Direction(str, enum.Enum):
    LEFT = "l"
    RIGHT = "r"

    @property
    def port(self) -> int:
        return LEFT_PORT if self is Direction.LEFT else RIGHT_PORT

    @property
    def opposite(self) -> "Direction":
        return Direction.RIGHT if self is Direction.LEFT else Direction.LEFT


# -- strategy specs ------------------------------------------------------------


@dataclass(frozen=True)
class RingAlgorithm:
    kind = "ring"


@dataclass(frozen=True)
class GoFirm:
    """A single GO-FIRM phase; may stop before the component is covered."""

    direction: Direction = Direction.LEFT
    kind = "go-firm"


@dataclass(frozen=True)
class ClassA0:
    direction: Direction = Direction.LEFT
    kind = "class-a0"


@dataclass(frozen=True)
class IStepA1:
    i: int
    direction: Direction = Direction.LEFT
    kind = "istep-a1"


@dataclass(frozen=True)
class GeneralAk:
    zs: tuple[int, ...]
    direction: Direction = Direction.LEFT
    kind = "general-ak"


@dataclass(frozen=True)
class DfsAlpha:
    """DFS with per-node port orders; ``alpha=None`` means increasing order everywhere."""

    alpha: tuple[tuple[int, ...], ...] | None = None
    kind = "dfs"


StrategySpec = RingAlgorithm | GoFirm | ClassA0 | IStepA1 | GeneralAk | DfsAlpha
RING_KINDS = (RingAlgorithm, GoFirm, ClassA0, IStepA1, GeneralAk)


def increasing_alpha(g: PortLabeledGraph) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(range(1, g.degree(u) + 1)) for u in range(g.n))


def strategy_to_dict(spec: StrategySpec) -> dict:
    out: dict = {"kind": spec.kind}
    if isinstance(spec, (GoFirm, ClassA0, IStepA1, GeneralAk)):
        out["direction"] = spec.direction.value
    if isinstance(spec, IStepA1):
        out["i"] = spec.i
    if isinstance(spec, GeneralAk):
        out["zs"] = list(spec.zs)
    if isinstance(spec, DfsAlpha):
        out["alpha"] = "increasing" if spec.alpha is None else [list(s) for s in spec.alpha]
    return out


def strategy_from_dict(data) -> StrategySpec:
    if isinstance(data, str):
        data = {"kind": data}
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidStrategyError("strategy must be an object with a 'kind' field")
    kind = data["kind"]
    try:
        direction = Direction(data.get("direction", "l"))
    except ValueError:
        raise InvalidStrategyError(f"direction must be 'l' or 'r', got {data.get('direction')!r}")
    if kind == "ring":
        return RingAlgorithm()
    if kind == "go-firm":
        return GoFirm(direction)
    if kind == "class-a0":
        return ClassA0(direction)
    if kind == "istep-a1":
        i = data.get("i")
        if not isinstance(i, int) or isinstance(i, bool):
            raise InvalidStrategyError("istep-a1 needs an integer 'i'")
        return IStepA1(i, direction)
    if kind == "general-ak":
        zs = data.get("zs")
        if not isinstance(zs, list) or not all(isinstance(z, int) for z in zs):
            raise InvalidStrategyError("general-ak needs an integer list 'zs'")
        return GeneralAk(tuple(zs), direction)
    if kind == "dfs":
        alpha = data.get("alpha", "increasing")
        if alpha == "increasing":
            return DfsAlpha()
        if not isinstance(alpha, list):
            raise InvalidStrategyError("dfs 'alpha' must be 'increasing' or a list of port lists")
        return DfsAlpha(tuple(tuple(s) for s in alpha))
    raise InvalidStrategyError(f"unknown strategy kind {kind!r}")


def describe(spec: StrategySpec) -> str:
    if isinstance(spec, RingAlgorithm):
        return "ring"
    if isinstance(spec, IStepA1):
        return f"istep-a1(i={spec.i},{spec.direction.value})"
    if isinstance(spec, GeneralAk):
        return f"general-ak(zs={','.join(map(str, spec.zs))},{spec.direction.value})"
    if isinstance(spec, DfsAlpha):
        return "dfs(increasing)" if spec.alpha is None else "dfs(custom)"
    return f"{spec.kind}({spec.direction.value})"


# -- agent view ----------------------------------------------------------------


class AgentView:
    """The agent's knowledge: the map, its start, and what it has observed."""

    __slots__ = ("graph", "start", "position", "_blocked", "_visited")

    def __init__(self, graph: PortLabeledGraph, faults: FaultConfiguration, start: int):
        self.graph = graph
        self.start = start
        self.position = start
        self._blocked = _directed(faults)
        self._visited = {start}

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def visited_count(self) -> int:
        return len(self._visited)

    def is_visited(self, node: int) -> bool:
        return node in self._visited

    def neighbor(self, port: int, node: int | None = None) -> int:
        return self.graph.neighbor(self.position if node is None else node, port)[0]

    def is_free(self, port: int, node: int | None = None) -> bool:
        node = self.position if node is None else node
        if node not in self._visited:
            raise ObservationError(f"fault status at unvisited node {node} is not revealed")
        return (node, self.graph.ports[node][port - 1][0]) not in self._blocked

    def _arrive(self, node: int) -> bool:
        self.position = node
        if node in self._visited:
            return False
        self._visited.add(node)
        return True


Strategy = Callable[[AgentView], Iterator[int]]


def _directed(f: FaultConfiguration) -> frozenset[tuple[int, int]]:
    return frozenset(f.faulty) | frozenset((w, u) for u, w in f.faulty)


# -- ring procedures -----------------------------------------------------------


def go_at_distance(view: AgentView, s: int, d: Direction) -> Generator[int, None, bool]:
    """Walk at most ``s`` edges in direction ``d``; return whether port ``d`` is free at the end."""
    port, walked = d.port, 0
    while view.is_free(port) and walked < s:
        yield port
        walked += 1
    return view.is_free(port)


def go_firm(view: AgentView, d: Direction) -> Generator[int, None, None]:
    port, n = d.port, view.n
    while view.is_free(port) and view.visited_count < n:
        yield port


def ring_algorithm(view: AgentView):
    L, R = Direction.LEFT, Direction.RIGHT
    if not view.is_free(L.port):
        yield from go_firm(view, R)
    elif not view.is_free(R.port):
        yield from go_firm(view, L)
    elif view.n <= 5:
        yield from go_firm(view, L)
        yield from go_firm(view, R)
    else:
        b = yield from go_at_distance(view, 1 if view.n <= 19 else 2, L)
        if b:
            yield from go_firm(view, R)
            yield from go_firm(view, L)
        else:
            yield from go_firm(view, R)


def class_a0(d: Direction) -> Strategy:
    def run(view: AgentView):
        yield from go_firm(view, d)
        yield from go_firm(view, d.opposite)

    return run


def z_sequence(zs: Sequence[int], d: Direction) -> Strategy:
    """Scripted turns at distances ``zs`` (alternating sides, starting with ``d``).

    A fault seen at either port of the start settles the whole run.  When a
    phase ends in front of a fault, that side is finished and the agent goes
    firm toward the other side.  Once every scripted phase has completed it
    returns and goes firm, then returns and goes firm again.
    """

    def run(view: AgentView):
        if not view.is_free(d.port):
            yield from go_firm(view, d.opposite)
            return
        if not view.is_free(d.opposite.port):
            yield from go_firm(view, d)
            return
        side, back = d, 0
        for j, z in enumerate(zs):
            side = d if j % 2 == 0 else d.opposite
            b = yield from go_at_distance(view, back + z, side)
            if not b:
                yield from go_firm(view, side.opposite)
                return
            back = z
        yield from go_firm(view, side.opposite)
        yield from go_firm(view, side)

    return run


def dfs_alpha(alpha: Sequence[Sequence[int]]) -> Strategy:
    def run(view: AgentView):
        def explore(w):
            for p in alpha[w]:
                if not view.is_free(p, w):
                    continue
                u = view.neighbor(p, w)
                if view.is_visited(u):
                    continue
                yield p
                yield from explore(u)
                yield view.graph.neighbor(w, p)[1]

        yield from explore(view.start)

    return run


def check_zs(zs: Sequence[int], n: int):
    if not zs:
        raise InvalidStrategyError("z-sequence must be non-empty")
    if any(not isinstance(z, int) or z < 1 for z in zs):
        raise InvalidStrategyError(f"z-values must be positive integers, got {list(zs)}")
    for a, b in zip(zs, zs[2:]):
        if not a < b:
            raise InvalidStrategyError(f"same-side z-values must increase, got {list(zs)}")
    reach = zs[-1] + (zs[-2] if len(zs) > 1 else 0)
    if reach > n - 2:
        raise InvalidStrategyError(f"scripted extents {list(zs)} exceed n-2 on a ring of {n}")


def make_strategy(g: PortLabeledGraph, spec: StrategySpec | Strategy) -> Strategy:
    """Validate ``spec`` against ``g`` and return its generator function.

    A bare generator function is accepted as-is; the executor still enforces
    the observation rules on it.
    """
    if callable(spec) and not isinstance(spec, type):
        return spec
    if isinstance(spec, RING_KINDS) and not g.is_ring:
        raise InvalidStrategyError(f"{describe(spec)} needs a ring")
    if isinstance(spec, RingAlgorithm):
        return ring_algorithm
    if isinstance(spec, GoFirm):
        d = spec.direction

        def firm(view):
            yield from go_firm(view, d)

        return firm
    if isinstance(spec, ClassA0):
        return class_a0(spec.direction)
    if isinstance(spec, IStepA1):
        if spec.i < 1:
            raise InvalidStrategyError("an i-step strategy needs i >= 1")
        if spec.i >= g.n - 1:
            return class_a0(spec.direction)
        return z_sequence((spec.i,), spec.direction)
    if isinstance(spec, GeneralAk):
        check_zs(spec.zs, g.n)
        return z_sequence(spec.zs, spec.direction)
    if isinstance(spec, DfsAlpha):
        alpha = increasing_alpha(g) if spec.alpha is None else spec.alpha
        check_alpha(g, alpha)
        return dfs_alpha(alpha)
    raise InvalidStrategyError(f"unsupported strategy {spec!r}")


def check_alpha(g: PortLabeledGraph, alpha):
    if len(alpha) != g.n:
        raise InvalidStrategyError(f"alpha must give a permutation for each of {g.n} nodes")
    for u, perm in enumerate(alpha):
        if sorted(perm) != list(range(1, g.degree(u) + 1)):
            raise InvalidStrategyError(f"alpha at node {u} is not a permutation of its ports")


# -- traces ------------------------------------------------------------------


class Move(NamedTuple):
    src: int
    port: int
    dst: int


@dataclass(frozen=True)
class ExplorationTrace:
    start: int
    moves: tuple[Move, ...]
    visit_order: tuple[int, ...]
    completed: bool

    @property
    def cost(self) -> int:
        return len(self.moves)

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "moves": [{"from": m.src, "port": m.port, "to": m.dst} for m in self.moves],
            "cost": self.cost,
            "completed": self.completed,
        }

    @classmethod
    def from_dict(cls, data) -> "ExplorationTrace":
        moves = tuple(Move(m["from"], m["port"], m["to"]) for m in data["moves"])
        order = [data["start"]]
        for m in moves:
            if m.dst not in order:
                order.append(m.dst)
        return cls(data["start"], moves, tuple(order), bool(data["completed"]))


def execute(
    g: PortLabeledGraph,
    f: FaultConfiguration,
    v: int,
    spec: StrategySpec,
    *,
    max_moves: int | None = None,
) -> ExplorationTrace:
    strategy = make_strategy(g, spec)
    target = len(component_nodes(g, f, v))
    if max_moves is None:
        max_moves = 4 * g.n * max(len(g.edges), 1) + 16
    view = AgentView(g, f, v)
    moves: list[Move] = []
    order = [v]
    if target == 1:
        return ExplorationTrace(v, (), (v,), True)
    walk = strategy(view)
    completed = False
    ports, blocked = g.ports, view._blocked
    try:
        for port in walk:
            u = view.position
            if not 1 <= port <= len(ports[u]):
                raise InvalidStrategyError(f"node {u} has no port {port}")
            w = ports[u][port - 1][0]
            if (u, w) in blocked:
                raise InvalidStrategyError(f"strategy tried faulty port {port} at node {u}")
            moves.append(Move(u, port, w))
            if view._arrive(w):
                order.append(w)
                if len(order) == target:
                    completed = True
                    break
            if len(moves) > max_moves:
                raise InvalidStrategyError(f"strategy exceeded {max_moves} moves without finishing")
    finally:
        walk.close()
    return ExplorationTrace(v, tuple(moves), tuple(order), completed)


def validate_trace(
    g: PortLabeledGraph,
    f: FaultConfiguration,
    trace: ExplorationTrace,
    spec: StrategySpec | None = None,
):
    """Independently re-check a trace; raise :class:`TraceError` on the first defect.

    With ``spec`` given, the run is repeated on a configuration that flips
    every edge not touching a visited node.  Such edges can never be observed,
    so the moves must come out identical.
    """
    comp = fault_free_component(g, f, trace.start).nodes
    pos = trace.start
    seen = {pos}
    for t, mv in enumerate(trace.moves):
        if mv.src != pos:
            raise TraceError(f"move {t} starts at {mv.src}, agent is at {pos}")
        if not 1 <= mv.port <= g.degree(pos) or g.neighbor(pos, mv.port)[0] != mv.dst:
            raise TraceError(f"move {t}: port {mv.port} at {pos} does not lead to {mv.dst}")
        if f.is_faulty(pos, mv.dst):
            raise TraceError(f"move {t} crosses faulty edge {pos}-{mv.dst}")
        if seen == comp:
            raise TraceError(f"move {t} happens after coverage was already complete")
        pos = mv.dst
        seen.add(pos)
    if trace.completed != (seen == comp):
        raise TraceError(f"completed={trace.completed} but coverage is {len(seen)}/{len(comp)}")
    order = [trace.start]
    for mv in trace.moves:
        if mv.dst not in order:
            order.append(mv.dst)
    if tuple(order) != trace.visit_order:
        raise TraceError("visit order does not match the moves")
    if spec is not None:
        masked = FaultConfiguration(
            frozenset(
                e
                for e in g.edges
                if (e in f.faulty) != (e[0] not in seen and e[1] not in seen)
            )
        )
        replay = execute(g, masked, trace.start, spec)
        if replay.moves != trace.moves:
            raise TraceError("decisions changed when unobservable faults were altered")
