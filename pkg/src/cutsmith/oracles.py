import logging
from itertools import combinations

from cutsmith.exceptions import ArgumentError, OracleLimitError
from cutsmith.flow import FlowLedger, MinSeparator, min_vertex_separator
from cutsmith.graph import (
    Graph,
    TerminalSet,
    VertexCut,
    cut_from_separator,
    is_separator,
)
from cutsmith.settings import RECORDED_CONSTANTS

logger = logging.getLogger(__name__)


def _check_cap(graph: Graph, cap: int) -> None:
    if graph.n > cap:
        raise OracleLimitError(f"brute force is capped at n={cap}, got n={graph.n}")


def brute_force_kappa(
    graph: Graph, *, cap: int = RECORDED_CONSTANTS.brute_force_cap
) -> tuple[int, VertexCut | None]:
    """
    Vertex connectivity by enumerating vertex subsets by ascending size,
    lexicographically within a size. The first separator found gives kappa and its
    canonical cut. Complete graphs give (n-1, None).

    :raises OracleLimitError: If n exceeds cap.
    """
    _check_cap(graph, cap)
    if graph.is_complete():
        return max(graph.n - 1, 0), None

    for size in range(graph.n - 1):
        for subset in combinations(graph.vertices, size):
            if is_separator(graph, subset):
                return size, cut_from_separator(graph, subset)

    # unreachable for non-complete graphs, whose two non-adjacent vertices are
    # separated by the rest
    raise AssertionError("non-complete graph without a separator")


def brute_force_steiner_kappa(
    graph: Graph,
    terminals: TerminalSet,
    *,
    cap: int = RECORDED_CONSTANTS.brute_force_cap,
) -> int:
    """
    Steiner connectivity kappa(T): the fewest vertices whose removal leaves two
    terminals in different components. n-1 when no such set exists, including
    |T| <= 1.
    """
    _check_cap(graph, cap)
    terminals.check_within(graph)
    members = terminals.members
    if len(members) < 2:
        return graph.n - 1

    for size in range(graph.n - 1):
        for subset in combinations(graph.vertices, size):
            removed = set(subset)
            remaining = [v for v in members if v not in removed]
            if len(remaining) < 2:
                continue
            label = {}
            for index, component in enumerate(graph.components(removed)):
                for v in component:
                    label[v] = index
            if len({label[v] for v in remaining}) > 1:
                return size

    return graph.n - 1


def allpairs_min_separator(
    graph: Graph, *, ledger: FlowLedger | None = None
) -> frozenset[int] | None:
    """
    A minimum separator of G found by a flow between every non-adjacent pair, each
    capped at the best so far. None for complete graphs.
    """
    best: frozenset[int] | None = None
    for u, v in combinations(graph.vertices, 2):
        if graph.has_edge(u, v):
            continue
        cap = None if best is None else len(best)
        if cap == 0:
            break
        result = min_vertex_separator(graph, [u], [v], cap, ledger=ledger)
        if isinstance(result, MinSeparator):
            best = result.separator
    return best


def kappa_baseline_allpairs(graph: Graph, *, ledger: FlowLedger | None = None) -> int:
    """
    Exact vertex connectivity as the minimum local connectivity over non-adjacent
    pairs; n-1 for complete graphs.
    """
    if graph.n < 2:
        raise ArgumentError(f"kappa needs at least 2 vertices, got {graph.n}")
    separator = allpairs_min_separator(graph, ledger=ledger)
    return graph.n - 1 if separator is None else len(separator)
