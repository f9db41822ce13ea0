import logging
import threading
from collections import deque
from typing import Iterable, Literal

from pydantic import BaseModel, ConfigDict

from cutsmith.exceptions import (
    ArgumentError,
    InvariantViolationError,
    NoSeparatorExistsError,
)
from cutsmith.graph import Graph

logger = logging.getLogger(__name__)

SOURCE = 0
SINK = 1


class LedgerSnapshot(BaseModel):
    """
    Frozen copy of a FlowLedger's counters.
    """

    model_config = ConfigDict(frozen=True)

    calls: int = 0
    total_instance_edges: int = 0
    total_instance_nodes: int = 0

    def __sub__(self, other: "LedgerSnapshot") -> "LedgerSnapshot":
        return LedgerSnapshot(
            calls=self.calls - other.calls,
            total_instance_edges=self.total_instance_edges - other.total_instance_edges,
            total_instance_nodes=self.total_instance_nodes - other.total_instance_nodes,
        )


class FlowLedger:
    """
    Counts max-flow invocations and the summed size of their networks. Increments
    are serialized by a lock so concurrent flows never lose counts.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._calls = 0
        self._edges = 0
        self._nodes = 0

    def record(self, nodes: int, edges: int) -> None:
        with self._lock:
            self._calls += 1
            self._nodes += nodes
            self._edges += edges

    def snapshot(self) -> LedgerSnapshot:
        with self._lock:
            return LedgerSnapshot(
                calls=self._calls,
                total_instance_edges=self._edges,
                total_instance_nodes=self._nodes,
            )

    def reset(self) -> None:
        with self._lock:
            self._calls = 0
            self._edges = 0
            self._nodes = 0

    @property
    def calls(self) -> int:
        return self._calls

    @property
    def total_instance_edges(self) -> int:
        return self._edges

    @property
    def total_instance_nodes(self) -> int:
        return self._nodes


class MinSeparator(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["separator"] = "separator"
    separator: frozenset[int]


class FlowAtLeast(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["at_least"] = "at_least"
    bound: int


SeparatorResult = MinSeparator | FlowAtLeast


class FlowNetwork:
    """
    Unit-vertex-capacity split network for separating a source set A from a sink set
    B in an undirected graph.

    A and B are each merged into one node (0 and 1). Every other vertex v becomes an
    arc in(v) -> out(v) of capacity 1 and every edge {u, v} becomes the arcs
    out(u) -> in(v) and out(v) -> in(u) of capacity n+1, which no minimum cut can
    use. Arcs are stored in pairs so arc e and e ^ 1 are residual twins.
    """

    def __init__(self, graph: Graph, sources: frozenset[int], sinks: frozenset[int]):
        self.infinity = graph.n + 1
        self.inner = [v for v in graph.vertices if v not in sources and v not in sinks]
        position = {v: i for i, v in enumerate(self.inner)}

        self.node_count = 2 + 2 * len(self.inner)
        self._head: list[list[int]] = [[] for _ in range(self.node_count)]
        self._to: list[int] = []
        self._cap: list[int] = []

        for i in range(len(self.inner)):
            self._add_arc(2 + 2 * i, 3 + 2 * i, 1)

        def tail(v: int) -> int:
            return SOURCE if v in sources else 3 + 2 * position[v]

        def head(v: int) -> int:
            return SINK if v in sinks else 2 + 2 * position[v]

        for u, v in graph.edges():
            if (u in sources and v in sinks) or (u in sinks and v in sources):
                raise NoSeparatorExistsError((u, v))
            for x, y in ((u, v), (v, u)):
                # flow never leaves B nor enters A
                if x in sinks or y in sources:
                    continue
                self._add_arc(tail(x), head(y), self.infinity)

    def _add_arc(self, u: int, v: int, capacity: int) -> None:
        self._head[u].append(len(self._to))
        self._to.append(v)
        self._cap.append(capacity)
        self._head[v].append(len(self._to))
        self._to.append(u)
        self._cap.append(0)

    @property
    def arc_count(self) -> int:
        return len(self._to) // 2

    def max_flow(self, cap: int | None = None) -> int:
        """
        Blocking-flow (Dinic) max-flow from node 0 to node 1. Every augmenting path
        crosses a split arc, so each augmentation carries exactly one unit.

        :param cap: Stop as soon as the flow value reaches cap.
        :return: The flow value, at most cap when cap is given.
        """
        flow = 0
        while cap is None or flow < cap:
            level = self._levels()
            if level[SINK] < 0:
                break
            pointer = [0] * self.node_count
            while (cap is None or flow < cap) and self._augment(level, pointer):
                flow += 1
        return flow

    def _levels(self) -> list[int]:
        level = [-1] * self.node_count
        level[SOURCE] = 0
        queue = deque([SOURCE])
        while queue:
            u = queue.popleft()
            for e in self._head[u]:
                v = self._to[e]
                if self._cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _augment(self, level: list[int], pointer: list[int]) -> bool:
        head, to, cap = self._head, self._to, self._cap
        stack = [SOURCE]
        path: list[int] = []
        while stack:
            u = stack[-1]
            if u == SINK:
                for e in path:
                    cap[e] -= 1
                    cap[e ^ 1] += 1
                return True

            arcs = head[u]
            while pointer[u] < len(arcs):
                e = arcs[pointer[u]]
                v = to[e]
                if cap[e] > 0 and level[v] == level[u] + 1:
                    stack.append(v)
                    path.append(e)
                    break
                pointer[u] += 1
            else:
                # dead end: prune u from this phase and advance the parent's arc
                level[u] = -1
                stack.pop()
                if path:
                    path.pop()
                    pointer[stack[-1]] += 1
        return False

    def source_side(self) -> list[bool]:
        """
        Nodes reachable from the source in the residual network.
        """
        reached = [False] * self.node_count
        reached[SOURCE] = True
        queue = deque([SOURCE])
        while queue:
            u = queue.popleft()
            for e in self._head[u]:
                v = self._to[e]
                if self._cap[e] > 0 and not reached[v]:
                    reached[v] = True
                    queue.append(v)
        return reached

    def separator(self) -> frozenset[int]:
        """
        The minimum separator nearest to the source: vertices whose in-node is
        residually reachable but whose out-node is not.
        """
        reached = self.source_side()
        return frozenset(
            v
            for i, v in enumerate(self.inner)
            if reached[2 + 2 * i] and not reached[3 + 2 * i]
        )


def separates(
    graph: Graph,
    separator: Iterable[int],
    sources: Iterable[int],
    sinks: Iterable[int],
) -> bool:
    """
    True iff no source vertex shares a component of G - S with a sink vertex.
    """
    removed = set(separator)
    label = {}
    for index, component in enumerate(graph.components(removed)):
        for v in component:
            label[v] = index
    source_labels = {label[v] for v in sources if v in label}
    return not any(label.get(v) in source_labels for v in sinks if v in label)


def min_vertex_separator(
    graph: Graph,
    sources: Iterable[int],
    sinks: Iterable[int],
    cap: int | None = None,
    *,
    ledger: FlowLedger | None = None,
) -> SeparatorResult:
    """
    Minimum vertex set S, disjoint from A and B, whose removal disconnects every
    A-vertex from every B-vertex.

    :param graph: The graph.
    :param sources: The source set A.
    :param sinks: The sink set B.
    :param cap: If the flow reaches cap, return FlowAtLeast(cap) without extracting
                a separator.
    :param ledger: Ledger charged with this call.
    :raises NoSeparatorExistsError: If some A-vertex is adjacent to some B-vertex.
    """
    a, b = frozenset(sources), frozenset(sinks)
    if not a or not b:
        raise ArgumentError("source and sink sets must be non-empty")
    if a & b:
        raise ArgumentError(f"source and sink sets overlap on {sorted(a & b)}")

    network = FlowNetwork(graph, a, b)
    if ledger is not None:
        ledger.record(network.node_count, network.arc_count)

    value = network.max_flow(cap)
    if cap is not None and value >= cap:
        return FlowAtLeast(bound=cap)

    separator = network.separator()
    if __debug__:
        if len(separator) != value:
            raise InvariantViolationError(
                f"separator size {len(separator)} differs from flow value {value}"
            )
        if not separates(graph, separator, a, b):
            raise InvariantViolationError(f"{sorted(separator)} does not separate")

    return MinSeparator(separator=separator)


def kappa_pair(
    graph: Graph, u: int, v: int, *, ledger: FlowLedger | None = None
) -> int:
    """
    Local vertex connectivity: the minimum number of vertices separating u from v,
    or n-1 if they are adjacent.
    """
    if u == v:
        raise ArgumentError("kappa_pair needs two distinct vertices")
    if graph.has_edge(u, v):
        return graph.n - 1

    result = min_vertex_separator(graph, [u], [v], ledger=ledger)
    assert isinstance(result, MinSeparator)
    return len(result.separator)
