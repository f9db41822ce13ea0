import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from cutsmith.exceptions import ArgumentError, InvariantViolationError
from cutsmith.expanders import (
    CertifiedExpander,
    build_adaptive_mixing_graph,
    build_small_set_expander,
)
from cutsmith.flow import FlowLedger, LedgerSnapshot, MinSeparator, min_vertex_separator
from cutsmith.graph import Graph, VertexCut, is_separator, min_degree_vertex
from cutsmith.reduction import CompleteGraph, Disconnected

logger = logging.getLogger(__name__)


class ApproxConfig(BaseModel):
    """
    Parameters of the approximate vertex mincut.

    alpha_scale sets the small-set fraction eps/alpha_scale of the expander H2
    before contraction.
    """

    model_config = ConfigDict(frozen=True)

    alpha_scale: float = Field(default=10, gt=0)
    max_degree: int | None = Field(default=None, ge=3)
    max_retries: int | None = Field(default=None, ge=1)
    threads: int = Field(default=1, ge=1)


class ApproxSeparator(BaseModel):
    """
    A separator of at most (1 + eps) kappa vertices. via is "flow" when a flow
    between two expander-adjacent vertices produced it and "min_degree" when it is
    the neighborhood of a minimum-degree vertex.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["separator"] = "separator"
    separator: frozenset[int]
    via: Literal["flow", "min_degree"]


ApproxOutcome = Annotated[
    Union[ApproxSeparator, Disconnected, CompleteGraph], Field(discriminator="kind")
]


class ApproxResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    eps: float
    outcome: ApproxOutcome
    ledger: LedgerSnapshot
    mixing_edges: int = 0
    expander_edges: int = 0
    candidate_pairs: int = 0


def is_eps_balanced(cut: VertexCut, kappa: int, eps: float) -> bool:
    """
    True iff both outer sides of the cut hold at least eps * kappa vertices.
    """
    return min(len(cut.left), len(cut.right)) >= eps * kappa


def candidate_pairs(graph: Graph, *expanders: CertifiedExpander) -> list[tuple[int, int]]:
    """
    Edges of the union of the expanders whose ends are not adjacent in G, in
    lexicographic order.
    """
    pairs = {edge for expander in expanders for edge in expander.graph.edges()}
    return sorted((u, v) for u, v in pairs if not graph.has_edge(u, v))


def approx_vertex_mincut(
    graph: Graph,
    eps: float,
    config: ApproxConfig | None = None,
    *,
    ledger: FlowLedger | None = None,
) -> ApproxResult:
    """
    A vertex cut of at most floor((1 + eps) kappa) vertices.

    Two expanders are laid over the vertex ids: H2 in which small sets have many
    neighbors, and H1 in which any two large disjoint sets share an edge. Every
    H1 or H2 edge (s, t) with s, t not adjacent in G gets one flow, capped at the
    best separator so far and never above min degree + 1. The result is the best
    separator, or N(v) for a minimum-degree vertex v if the minimum degree is
    smaller.

    :param graph: The graph.
    :param eps: Approximation parameter in (0, 1].
    :param config: Expander construction parameters.
    :param ledger: Ledger charged with every flow.
    """
    if not 0 < eps <= 1:
        raise ArgumentError(f"eps must lie in (0, 1], got {eps}")
    config = config or ApproxConfig()
    ledger = ledger if ledger is not None else FlowLedger()
    start = ledger.snapshot()

    def finish(outcome: ApproxSeparator | Disconnected | CompleteGraph, **counts: int) -> ApproxResult:
        return ApproxResult(
            eps=eps, outcome=outcome, ledger=ledger.snapshot() - start, **counts
        )

    n = graph.n
    if graph.is_complete():
        return finish(CompleteGraph(kappa=max(n - 1, 0)))
    if not graph.is_connected():
        return finish(Disconnected())

    vertex, degree = min_degree_vertex(graph)

    if n < 2 / eps:
        # too small for the expander sizing, every pair is a candidate
        pairs = [(u, v) for u, v in _all_pairs(n) if not graph.has_edge(u, v)]
        counts = {"mixing_edges": 0, "expander_edges": 0}
    else:
        small_sets = build_small_set_expander(
            n,
            eps,
            alpha_scale=config.alpha_scale,
            max_degree=config.max_degree,
            max_retries=config.max_retries,
        )
        assert small_sets.alpha is not None
        mixing = build_adaptive_mixing_graph(
            n,
            eps,
            small_sets.alpha,
            max_degree=config.max_degree,
            max_retries=config.max_retries,
        )
        pairs = candidate_pairs(graph, mixing, small_sets)
        counts = {
            "mixing_edges": mixing.graph.m,
            "expander_edges": small_sets.graph.m,
        }

    logger.debug(
        f"Approximate mincut n={n} eps={eps}: {len(pairs)} candidate pairs, "
        f"min degree {degree}"
    )

    best = _sweep_pairs(graph, pairs, degree + 1, ledger, config.threads)

    if best is None or degree < len(best):
        outcome = ApproxSeparator(separator=graph.neighborhood([vertex]), via="min_degree")
    else:
        outcome = ApproxSeparator(separator=best, via="flow")

    if not is_separator(graph, outcome.separator):
        raise InvariantViolationError(
            f"approximate mincut {sorted(outcome.separator)} does not separate"
        )
    return finish(outcome, candidate_pairs=len(pairs), **counts)


def _all_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _sweep_pairs(
    graph: Graph,
    pairs: list[tuple[int, int]],
    cap: int,
    ledger: FlowLedger,
    threads: int,
) -> frozenset[int] | None:
    """
    Smallest separator below cap over the candidate pairs, first found winning ties.
    Sequential sweeps tighten the cap as they go; threaded sweeps keep it fixed.
    """
    if threads > 1:
        def separate(pair: tuple[int, int]) -> frozenset[int] | None:
            result = min_vertex_separator(graph, [pair[0]], [pair[1]], cap, ledger=ledger)
            return result.separator if isinstance(result, MinSeparator) else None

        with ThreadPoolExecutor(max_workers=threads) as executor:
            found = [s for s in executor.map(separate, pairs) if s is not None]
        return min(found, key=len, default=None)

    best: frozenset[int] | None = None
    for u, v in pairs:
        limit = cap if best is None else len(best)
        if limit <= 0:
            break
        result = min_vertex_separator(graph, [u], [v], limit, ledger=ledger)
        if isinstance(result, MinSeparator):
            best = result.separator
    return best
