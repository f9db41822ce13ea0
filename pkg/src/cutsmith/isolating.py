import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from pydantic import BaseModel, ConfigDict

from cutsmith.enums import IsolationMode
from cutsmith.exceptions import ArgumentError, NotIndependentError
from cutsmith.flow import FlowLedger, MinSeparator, min_vertex_separator
from cutsmith.graph import Graph
from cutsmith.utilities import ceil_log2

logger = logging.getLogger(__name__)

R = TypeVar("R")


class IsolatingCutsResult(BaseModel):
    """
    Minimum ({v}, I - {v}) separators for the members of an independent set I.

    When the cuts were computed under a flow cap, members whose minimum separator
    reaches the cap are listed in capped instead of separators.
    """

    model_config = ConfigDict(frozen=True)

    separators: dict[int, frozenset[int]]
    capped: frozenset[int] = frozenset()
    cap: int | None = None

    def smallest(self) -> tuple[int, frozenset[int]] | None:
        """
        The member with the smallest separator, ties broken by the smallest id.
        """
        if not self.separators:
            return None
        vertex = min(self.separators, key=lambda v: (len(self.separators[v]), v))
        return vertex, self.separators[vertex]


def maximal_independent_set(graph: Graph, candidates: Iterable[int]) -> frozenset[int]:
    """
    Greedy maximal independent subset of the candidates, scanned by ascending id.
    """
    ordered = sorted(set(candidates))
    if not ordered:
        raise ArgumentError("maximal independent set needs a non-empty candidate set")

    chosen: list[int] = []
    blocked: set[int] = set()
    for v in ordered:
        if v in blocked:
            continue
        chosen.append(v)
        blocked.update(graph.neighbors(v))

    return frozenset(chosen)


def _check_independent(graph: Graph, members: list[int]) -> None:
    inside = set(members)
    for u in members:
        if u < 0 or u >= graph.n:
            raise ArgumentError(f"vertex {u} outside of vertex range [0, {graph.n})")
    for u in members:
        adjacent = graph.neighbor_set(u) & inside
        if adjacent:
            raise NotIndependentError((u, min(adjacent)))


def isolating_vertex_cuts(
    graph: Graph,
    independent: Iterable[int],
    *,
    mode: IsolationMode = IsolationMode.BINARY,
    cap: int | None = None,
    ledger: FlowLedger | None = None,
    threads: int = 1,
) -> IsolatingCutsResult:
    """
    Compute, for every v of the independent set I, a minimum vertex separator C_v
    between v and I - {v}.

    In binary mode every member gets its rank's bit code and each of the
    ceil(log2 |I|) bit positions contributes one minimum separator between the two
    classes. Removing the union U of those separators leaves each member alone in
    its region, the component of G - U holding it. A single flow from v to a sink
    joined to the region's boundary then yields C_v. Regions are vertex-disjoint so
    the region flows together cost about one flow on G.

    Naive mode runs |I| direct flows and serves as the oracle.

    :param graph: The graph.
    :param independent: The independent set I, at least two members.
    :param mode: Binary rounds or naive per-vertex flows.
    :param cap: Flow cap for the per-member flows. Members whose separator reaches
                the cap are reported in the result's capped set.
    :param ledger: Ledger charged with every flow.
    :param threads: Worker threads for the per-round and per-region flows.
    :raises NotIndependentError: If two members are adjacent.
    """
    members = sorted(set(independent))
    if len(members) < 2:
        raise ArgumentError(f"isolating cuts need at least 2 vertices, got {len(members)}")
    _check_independent(graph, members)

    if mode == IsolationMode.NAIVE:
        def isolate(v: int) -> MinSeparator | None:
            rest = [w for w in members if w != v]
            return _as_separator(
                min_vertex_separator(graph, [v], rest, cap, ledger=ledger)
            )

        return _collect(members, _map(isolate, members, threads), cap)

    if len(members) == 2:
        # the single round already separates the only two members
        u, w = members
        result = _as_separator(min_vertex_separator(graph, [u], [w], cap, ledger=ledger))
        return _collect(members, [result, result], cap)

    rounds = ceil_log2(len(members))

    def round_separator(bit: int) -> frozenset[int]:
        zeros = [v for rank, v in enumerate(members) if not (rank >> bit) & 1]
        ones = [v for rank, v in enumerate(members) if (rank >> bit) & 1]
        result = min_vertex_separator(graph, zeros, ones, ledger=ledger)
        assert isinstance(result, MinSeparator)
        return result.separator

    boundary_pool: set[int] = set()
    for separator in _map(round_separator, list(range(rounds)), threads):
        boundary_pool |= separator

    region_of: dict[int, list[int]] = {}
    for component in graph.components(boundary_pool):
        for v in component:
            region_of[v] = component

    logger.debug(
        f"Isolating cuts over |I|={len(members)}: {rounds} rounds, "
        f"|U|={len(boundary_pool)}"
    )

    def isolate_in_region(v: int) -> MinSeparator | None:
        return _region_separator(graph, v, region_of[v], cap, ledger)

    return _collect(members, _map(isolate_in_region, members, threads), cap)


def _region_separator(
    graph: Graph,
    vertex: int,
    region: list[int],
    cap: int | None,
    ledger: FlowLedger | None,
) -> MinSeparator | None:
    """
    Minimum separator between vertex and the boundary of its region, computed on
    the region plus boundary with a sink z joined to every boundary vertex. Edges
    between two boundary vertices are dropped.
    """
    boundary = graph.neighborhood(region)
    if not boundary:
        # nothing else of I is reachable
        return MinSeparator(separator=frozenset())

    originals = sorted(set(region) | boundary)
    local = {v: i for i, v in enumerate(originals)}
    sink = len(originals)
    edges = [
        (local[u], local[w])
        for u in region
        for w in graph.neighbors(u)
        if w in local and (w in boundary or u < w)
    ]
    edges.extend((local[b], sink) for b in boundary)
    auxiliary = Graph(sink + 1, edges)

    result = _as_separator(
        min_vertex_separator(auxiliary, [local[vertex]], [sink], cap, ledger=ledger)
    )
    if result is None:
        return None
    return MinSeparator(separator=frozenset(originals[i] for i in result.separator))


def _as_separator(result: object) -> MinSeparator | None:
    return result if isinstance(result, MinSeparator) else None


def _map(function: Callable[[int], R], items: list[int], threads: int) -> list[R]:
    if threads <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, items))


def _collect(
    members: list[int], results: list[MinSeparator | None], cap: int | None
) -> IsolatingCutsResult:
    separators = {
        v: result.separator for v, result in zip(members, results) if result is not None
    }
    capped = frozenset(v for v, result in zip(members, results) if result is None)
    return IsolatingCutsResult(separators=separators, capped=capped, cap=cap)
