"""Port-labeled graphs, fault configurations and ring fault geometry.

Nodes are the integers ``0..n-1``.  At a node of degree ``d`` the ports are
numbered ``1..d``; ``graph.ports[u][p - 1]`` is the pair
``(neighbor, reciprocal_port)``.

Ring convention: port 1 leads to the predecessor (direction ``l``) and port 2
to the successor (direction ``r``) at every node.  Standard generators number
ports by ascending neighbor index.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import GraphParseError, InvalidGraphError, InvalidSizeError

LEFT_PORT = 1
RIGHT_PORT = 2

Edge = tuple[int, int]


def edge_key(u: int, w: int) -> Edge:
    return (u, w) if u < w else (w, u)


@dataclass(frozen=True)
class PortLabeledGraph:
    ports: tuple[tuple[tuple[int, int], ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.ports)
        if n < 1:
            raise InvalidGraphError("graph must have at least one node")
        if self.labels is not None and len(self.labels) != n:
            raise InvalidGraphError("labels must name every node")
        for u, row in enumerate(self.ports):
            seen = set()
            for p, (w, q) in enumerate(row, start=1):
                if not 0 <= w < n:
                    raise InvalidGraphError(f"node {u} port {p}: neighbor {w} out of range")
                if w == u:
                    raise InvalidGraphError(f"node {u} port {p}: self-loop")
                if w in seen:
                    raise InvalidGraphError(f"node {u} port {p}: parallel edge to {w}")
                seen.add(w)
                back = self.ports[w]
                if not 1 <= q <= len(back) or back[q - 1] != (u, p):
                    raise InvalidGraphError(
                        f"node {u} port {p}: reciprocal port {q} at node {w} does not lead back"
                    )
        if len(self._reachable(0)) != n:
            raise InvalidGraphError("graph is not connected")

    def _reachable(self, start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w, _ in self.ports[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    @property
    def n(self) -> int:
        return len(self.ports)

    def degree(self, u: int) -> int:
        return len(self.ports[u])

    def neighbor(self, u: int, port: int) -> tuple[int, int]:
        """Return ``(w, q)``: the node behind ``port`` at ``u`` and the port back."""
        return self.ports[u][port - 1]

    def neighbors(self, u: int) -> list[int]:
        return [w for w, _ in self.ports[u]]

    @cached_property
    def _port_index(self) -> dict[Edge, int]:
        return {(u, w): p for u, row in enumerate(self.ports) for p, (w, _) in enumerate(row, 1)}

    def port_to(self, u: int, w: int) -> int:
        return self._port_index[(u, w)]

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted({edge_key(u, w) for u, row in enumerate(self.ports) for w, _ in row}))

    def has_edge(self, u: int, w: int) -> bool:
        return (u, w) in self._port_index

    @cached_property
    def is_ring(self) -> bool:
        """True when the graph is a cycle oriented consistently by ports 1 and 2.

        Following port 2 must always arrive through port 1 of the next node;
        this is what makes ``l``/``r`` meaningful directions.
        """
        if self.n < 3 or any(len(row) != 2 for row in self.ports):
            return False
        return all(self.ports[u][RIGHT_PORT - 1][1] == LEFT_PORT for u in range(self.n))

    def label(self, u: int) -> str:
        if self.labels is not None:
            return self.labels[u]
        return str(u)


def from_neighbor_lists(neighbors: Sequence[Sequence[int]], labels=None) -> PortLabeledGraph:
    """Build a graph whose port ``p`` at ``u`` leads to ``neighbors[u][p-1]``."""
    position = {}
    for u, row in enumerate(neighbors):
        for p, w in enumerate(row, start=1):
            position[(u, w)] = p
    ports = []
    for u, row in enumerate(neighbors):
        entry = []
        for w in row:
            if (w, u) not in position:
                raise InvalidGraphError(f"edge {u}-{w} is not listed at node {w}")
            entry.append((w, position[(w, u)]))
        ports.append(tuple(entry))
    return PortLabeledGraph(tuple(ports), None if labels is None else tuple(labels))


def build_ring(n: int) -> PortLabeledGraph:
    if n < 3:
        raise InvalidSizeError(f"a ring needs n >= 3, got {n}")
    return from_neighbor_lists([[(u - 1) % n, (u + 1) % n] for u in range(n)])


def build_complete(n: int) -> PortLabeledGraph:
    if n < 3:
        raise InvalidSizeError(f"complete graph needs n >= 3, got {n}")
    return from_neighbor_lists([[w for w in range(n) if w != u] for u in range(n)])


def build_hypercube(d: int) -> PortLabeledGraph:
    if d < 2:
        raise InvalidSizeError(f"hypercube needs dimension >= 2, got {d}")
    n = 1 << d
    return from_neighbor_lists([sorted(u ^ (1 << k) for k in range(d)) for u in range(n)])


def build_torus(rows: int, cols: int) -> PortLabeledGraph:
    if rows < 3 or cols < 3:
        raise InvalidSizeError(f"torus needs rows, cols >= 3, got {rows}x{cols}")
    if rows % 2 and cols % 2:
        raise InvalidSizeError(f"torus {rows}x{cols} has no even dimension")
    nbrs = []
    for r in range(rows):
        for c in range(cols):
            around = {
                ((r - 1) % rows) * cols + c,
                ((r + 1) % rows) * cols + c,
                r * cols + (c - 1) % cols,
                r * cols + (c + 1) % cols,
            }
            nbrs.append(sorted(around))
    return from_neighbor_lists(nbrs)


# -- serialization -----------------------------------------------------------


def graph_to_dict(g: PortLabeledGraph) -> dict:
    nodes = []
    for u, row in enumerate(g.ports):
        node = {"id": u}
        if g.labels is not None:
            node["label"] = g.labels[u]
        node["ports"] = [{"port": p, "to": w, "toPort": q} for p, (w, q) in enumerate(row, 1)]
        nodes.append(node)
    return {"n": g.n, "nodes": nodes}


def serialize_graph(g: PortLabeledGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=1)


def _expect(cond: bool, msg: str):
    if not cond:
        raise GraphParseError(msg)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def graph_from_dict(data) -> PortLabeledGraph:
    _expect(isinstance(data, dict), "graph document must be a JSON object")
    _expect(set(data) <= {"n", "nodes"}, f"unexpected keys {sorted(set(data) - {'n', 'nodes'})}")
    n = data.get("n")
    _expect(_is_int(n) and n >= 1, "'n' must be a positive integer")
    nodes = data.get("nodes")
    _expect(isinstance(nodes, list) and len(nodes) == n, f"'nodes' must list exactly {n} nodes")
    rows: list = [None] * n
    labels: list = [None] * n
    for node in nodes:
        _expect(isinstance(node, dict), "each node must be an object")
        _expect(set(node) <= {"id", "label", "ports"}, f"unexpected node keys in {node}")
        u = node.get("id")
        _expect(_is_int(u) and 0 <= u < n, f"node id {u!r} out of range")
        _expect(rows[u] is None, f"node {u} listed twice")
        if "label" in node:
            _expect(isinstance(node["label"], str), f"node {u}: label must be a string")
            labels[u] = node["label"]
        ports = node.get("ports")
        _expect(isinstance(ports, list), f"node {u}: 'ports' must be a list")
        by_port = {}
        for entry in ports:
            _expect(
                isinstance(entry, dict) and set(entry) == {"port", "to", "toPort"},
                f"node {u}: port entries need exactly port/to/toPort",
            )
            p, w, q = entry["port"], entry["to"], entry["toPort"]
            _expect(all(_is_int(x) for x in (p, w, q)), f"node {u}: port fields must be integers")
            _expect(p not in by_port, f"node {u}: duplicate port {p}")
            by_port[p] = (w, q)
        _expect(
            set(by_port) == set(range(1, len(by_port) + 1)),
            f"node {u}: ports must be numbered 1..{len(by_port)}, got {sorted(by_port)}",
        )
        rows[u] = tuple(by_port[p] for p in range(1, len(by_port) + 1))
    if any(lab is not None for lab in labels):
        _expect(all(lab is not None for lab in labels), "either all nodes carry labels or none")
        label_tuple = tuple(labels)
    else:
        label_tuple = None
    try:
        return PortLabeledGraph(tuple(rows), label_tuple)
    except InvalidGraphError as exc:
        raise GraphParseError(str(exc)) from exc


def parse_graph(text: str) -> PortLabeledGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)


# -- faults ------------------------------------------------------------------


@dataclass(frozen=True)
class FaultConfiguration:
    faulty: frozenset[Edge] = frozenset()

    @classmethod
    def of(cls, edges: Iterable[Sequence[int]]) -> "FaultConfiguration":
        return cls(frozenset(edge_key(int(u), int(w)) for u, w in edges))

    def is_faulty(self, u: int, w: int) -> bool:
        return edge_key(u, w) in self.faulty

    def __len__(self):
        return len(self.faulty)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.faulty))

    def check_against(self, g: PortLabeledGraph) -> "FaultConfiguration":
        for u, w in self.faulty:
            if not g.has_edge(u, w):
                raise InvalidGraphError(f"faulty pair {u}-{w} is not an edge of the graph")
        return self

    def to_dict(self) -> dict:
        return {"faulty": [list(e) for e in self]}


EMPTY = FaultConfiguration()


def faults_from_dict(data) -> FaultConfiguration:
    if not isinstance(data, dict) or set(data) != {"faulty"} or not isinstance(data["faulty"], list):
        raise GraphParseError('fault document must be {"faulty": [[u, v], ...]}')
    edges = []
    for pair in data["faulty"]:
        if not (isinstance(pair, list) and len(pair) == 2 and all(_is_int(x) for x in pair)):
            raise GraphParseError(f"bad faulty edge entry {pair!r}")
        edges.append(pair)
    return FaultConfiguration.of(edges)


def parse_faults(text: str, g: PortLabeledGraph | None = None) -> FaultConfiguration:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from exc
    f = faults_from_dict(data)
    if g is not None:
        try:
            f.check_against(g)
        except InvalidGraphError as exc:
            raise GraphParseError(str(exc)) from exc
    return f


@dataclass(frozen=True)
class FaultFreeComponent:
    start: int
    nodes: frozenset[int]
    free_edges: frozenset[Edge]

    @property
    def m(self) -> int:
        return len(self.nodes)


def component_nodes(g: PortLabeledGraph, f: FaultConfiguration, v: int) -> set[int]:
    if not 0 <= v < g.n:
        raise InvalidGraphError(f"start node {v} is not in the graph")
    bad = f.faulty
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w, _ in g.ports[u]:
            if w not in seen and (u, w) not in bad and (w, u) not in bad:
                seen.add(w)
                queue.append(w)
    return seen


def fault_free_component(g: PortLabeledGraph, f: FaultConfiguration, v: int) -> FaultFreeComponent:
    seen = component_nodes(g, f, v)
    free = frozenset(
        e for e in g.edges if e[0] in seen and e[1] in seen and e not in f.faulty
    )
    return FaultFreeComponent(v, frozenset(seen), free)


def all_fault_configurations(g: PortLabeledGraph) -> Iterator[FaultConfiguration]:
    """Every subset of the edge set, in binary-counter order starting from the empty set."""
    edges = g.edges
    for mask in range(1 << len(edges)):
        yield FaultConfiguration(frozenset(e for k, e in enumerate(edges) if mask >> k & 1))


# -- ring geometry -----------------------------------------------------------


@dataclass(frozen=True)
class RingScenario:
    """Fault geometry seen from the start of a ring.

    ``x``/``y`` count the free edges walked via ``l``/``r`` before the first
    fault; both are ``None`` for the fault-free ring.
    """

    x: int | None = None
    y: int | None = None

    @property
    def is_empty(self) -> bool:
        return self.x is None

    def check(self, n: int) -> "RingScenario":
        if (self.x is None) != (self.y is None):
            raise InvalidGraphError("ring scenario needs both x and y, or neither")
        if not self.is_empty and not (self.x >= 0 and self.y >= 0 and self.x + self.y <= n - 1):
            raise InvalidGraphError(f"invalid ring scenario x={self.x}, y={self.y} for n={n}")
        return self

    def __str__(self):
        return "empty" if self.is_empty else f"x={self.x},y={self.y}"


def _require_ring(g: PortLabeledGraph):
    if not g.is_ring:
        raise InvalidGraphError("operation requires a ring (degree 2, ports 1=l and 2=r)")


def ring_scenario(g: PortLabeledGraph, f: FaultConfiguration, v: int) -> RingScenario:
    _require_ring(g)
    if not f.faulty:
        return RingScenario()

    def walk(port):
        u, steps = v, 0
        while True:
            w, _ = g.neighbor(u, port)
            if f.is_faulty(u, w):
                return steps
            u, steps = w, steps + 1

    return RingScenario(walk(LEFT_PORT), walk(RIGHT_PORT))


def ring_scenarios(n: int) -> Iterator[RingScenario]:
    """The empty scenario followed by every valid ``(x, y)``."""
    yield RingScenario()
    for x in range(n):
        for y in range(n - x):
            yield RingScenario(x, y)


def scenario_faults(g: PortLabeledGraph, v: int, scenario: RingScenario) -> FaultConfiguration:
    """A minimal fault configuration realising ``scenario`` from ``v``."""
    _require_ring(g)
    scenario.check(g.n)
    if scenario.is_empty:
        return FaultConfiguration()
    out = []
    for port, dist in ((LEFT_PORT, scenario.x), (RIGHT_PORT, scenario.y)):
        u = v
        for _ in range(dist):
            u = g.neighbor(u, port)[0]
        out.append((u, g.neighbor(u, port)[0]))
    return FaultConfiguration.of(out)


# -- hamiltonicity -----------------------------------------------------------


@dataclass(frozen=True)
class HamiltonianResult:
    status: str  # "found" | "none" | "undecided"
    cycle: tuple[int, ...] | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def find_hamiltonian_cycle(
    g: PortLabeledGraph, *, max_nodes: int = 20, max_steps: int = 2_000_000
) -> HamiltonianResult:
    """Backtracking search for a Hamiltonian cycle.

    Consistently oriented rings are answered directly.  Otherwise graphs with
    more than ``max_nodes`` nodes, or searches that expand more than
    ``max_steps`` partial paths, come back ``undecided`` rather than ``none``.
    """
    n = g.n
    if n < 3:
        return HamiltonianResult("none")
    if g.is_ring:
        cycle, u = [0], 0
        for _ in range(n - 1):
            u = g.neighbor(u, RIGHT_PORT)[0]
            cycle.append(u)
        return HamiltonianResult("found", tuple(cycle))
    if any(g.degree(u) < 2 for u in range(n)):
        return HamiltonianResult("none")
    if n > max_nodes:
        return HamiltonianResult("undecided")

    adj = [set(g.neighbors(u)) for u in range(n)]
    path = [0]
    on_path = [False] * n
    on_path[0] = True
    steps = 0

    def extend(u: int) -> bool:
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise _Timeout
        if len(path) == n:
            return 0 in adj[u]
        # fewest onward options first
        options = sorted(
            (w for w in adj[u] if not on_path[w]),
            key=lambda w: sum(1 for z in adj[w] if not on_path[z]),
        )
        for w in options:
            path.append(w)
            on_path[w] = True
            if extend(w):
                return True
            path.pop()
            on_path[w] = False
        return False

    try:
        ok = extend(0)
    except _Timeout:
        return HamiltonianResult("undecided")
    return HamiltonianResult("found", tuple(path)) if ok else HamiltonianResult("none")


class _Timeout(Exception):
    pass


def is_hamiltonian_cycle(g: PortLabeledGraph, cycle: Sequence[int]) -> bool:
    if sorted(cycle) != list(range(g.n)):
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % g.n]) for i in range(g.n))
