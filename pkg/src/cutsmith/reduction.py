import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import Annotated, Iterable, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from cutsmith.enums import BaseCaseStrategy, FinderKind, Side
from cutsmith.exceptions import (
    ArgumentError,
    ContractViolationError,
    InvariantViolationError,
    UndefinedExpansionError,
)
from cutsmith.finders import SparseCutFinder, make_finder
from cutsmith.flow import FlowLedger, LedgerSnapshot, MinSeparator, min_vertex_separator
from cutsmith.graph import Graph, TerminalSet, VertexCut, is_separator
from cutsmith.hashing import SPLITTER_THRESHOLD_FACTOR
from cutsmith.settings import RECORDED_CONSTANTS
from cutsmith.unbalanced import unbalanced
from cutsmith.utilities import ceil_log2

logger = logging.getLogger(__name__)


def terminal_expansion(cut: VertexCut, terminals: TerminalSet) -> Fraction:
    """
    h_T(L, S, R) = |S| / min(|T & (L | S)|, |T & (R | S)|).

    :raises UndefinedExpansionError: If the smaller side holds no terminal.
    """
    members = set(terminals.members)
    smaller = min(
        len(members & (cut.left | cut.separator)),
        len(members & (cut.right | cut.separator)),
    )
    if smaller == 0:
        raise UndefinedExpansionError("one side of the cut holds no terminal")
    return Fraction(len(cut.separator), smaller)


class SideGraph(BaseModel):
    """
    G with one side of a cut replaced by a k-clique that is fully joined to S.

    Vertex ids of the side graph are local: kept vertices come first in ascending
    original order, the clique vertices follow. id_map holds the original id of
    every local vertex and None for clique vertices.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: Graph
    side: Side
    k: int
    clique_vertices: frozenset[int]
    special_terminal: int
    id_map: tuple[int | None, ...]
    replaced_representative: int

    def to_local(self, vertices: Iterable[int]) -> list[int]:
        local = {v: i for i, v in enumerate(self.id_map) if v is not None}
        return [local[v] for v in vertices]

    def to_original(self, vertex: int) -> int:
        """
        The original id of a local vertex. A clique vertex stands for the replaced
        side and maps to its smallest vertex.
        """
        original = self.id_map[vertex]
        return self.replaced_representative if original is None else original


def build_side_graph(
    graph: Graph,
    cut: VertexCut,
    k: int,
    side: Side,
    remove_s_edges: bool,
) -> SideGraph:
    """
    Build the k-left graph (side=LEFT, R replaced) or the k-right graph (side=RIGHT,
    L replaced).

    :param remove_s_edges: Drop the edges with both ends in S.
    """
    if k < 1:
        raise ArgumentError(f"k must be at least 1, got {k}")

    kept, replaced = (cut.left, cut.right) if side == Side.LEFT else (cut.right, cut.left)
    if not replaced:
        raise ArgumentError(f"the replaced side of a {side} graph must be non-empty")

    originals = sorted(kept | cut.separator)
    local = {v: i for i, v in enumerate(originals)}
    clique = list(range(len(originals), len(originals) + k))

    edges = []
    for u in originals:
        for w in graph.neighbors(u):
            if w not in local or w <= u:
                continue
            if remove_s_edges and u in cut.separator and w in cut.separator:
                continue
            edges.append((local[u], local[w]))
    edges.extend(combinations(clique, 2))
    edges.extend((local[s], c) for s in sorted(cut.separator) for c in clique)

    return SideGraph(
        graph=Graph(len(originals) + k, edges),
        side=side,
        k=k,
        clique_vertices=frozenset(clique),
        special_terminal=clique[0],
        id_map=(*originals, *([None] * k)),
        replaced_representative=min(replaced),
    )


def lift_separator(side_graph: SideGraph, separator: Iterable[int]) -> frozenset[int]:
    """
    Map a separator of size below k in the side graph back to G. Clique vertices
    are dropped; the result separates G.

    :raises ContractViolationError: If the separator has k or more vertices.
    """
    separator = frozenset(separator)
    if len(separator) >= side_graph.k:
        raise ContractViolationError(
            f"only separators below k={side_graph.k} lift, got size {len(separator)}"
        )
    return frozenset(
        original
        for original in (side_graph.id_map[v] for v in separator)
        if original is not None
    )


class ReductionConfig(BaseModel):
    """
    Parameters of the terminal reduction and the k-connectivity driver.
    """

    model_config = ConfigDict(frozen=True)

    phi: float | None = None
    phi_bar: float | None = None
    finder: FinderKind = FinderKind.AUTO
    # |T| <= base_case_factor * k / phi goes to the base case
    base_case_factor: float = Field(default=10, gt=0)
    base_case: BaseCaseStrategy = BaseCaseStrategy.ANCHORED
    splitter_threshold_factor: int = Field(default=SPLITTER_THRESHOLD_FACTOR, ge=1)
    max_rounds: int | None = Field(default=None, ge=1)
    expander_shortcut: bool = True
    brute_limit: int = Field(default=RECORDED_CONSTANTS.brute_sparse_cap, ge=1)
    threads: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_thresholds(self) -> "ReductionConfig":
        if self.phi is not None and not 0 < self.phi < 0.5:
            raise ValueError(f"phi must lie in (0, 0.5), got {self.phi}")
        if self.phi_bar is not None and not 0 < self.phi_bar < 0.5:
            raise ValueError(f"phi_bar must lie in (0, 0.5), got {self.phi_bar}")
        return self

    def thresholds(self, n: int) -> tuple[float, float]:
        """
        (phi, phi_bar) for a graph on n vertices. The defaults are
        phi = 1 / ceil(log2 n)^2 and phi_bar = 4 phi. For n <= 4, where 4 phi would
        reach 1/2, phi drops to 0.1. A configured phi without phi_bar gets
        phi_bar = min(4 phi, 0.45).
        """
        phi = self.phi
        if phi is None:
            phi = 1 / max(ceil_log2(max(n, 1)), 1) ** 2
            if 4 * phi >= 0.5:
                phi = 0.1
        phi_bar = self.phi_bar if self.phi_bar is not None else min(4 * phi, 0.45)
        if not 0 < phi < phi_bar < 0.5:
            raise ArgumentError(f"need 0 < phi < phi_bar < 0.5, got {phi}, {phi_bar}")
        return phi, phi_bar


class Separator(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["separator"] = "separator"
    separator: frozenset[int]


class NewTerminals(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["new_terminals"] = "new_terminals"
    terminals: TerminalSet


class KConnected(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["k_connected"] = "k_connected"


# a reduction that certifies G itself answers with the driver's variant
CertifiedKConnected = KConnected


class Disconnected(BaseModel):
    """G itself is disconnected; the empty set separates it."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["disconnected"] = "disconnected"
    separator: frozenset[int] = frozenset()


class CompleteGraph(BaseModel):
    """G is complete and has no separator; kappa is n-1 by convention."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["complete_graph"] = "complete_graph"
    kappa: int


ReductionOutcome = Annotated[
    Union[Separator, NewTerminals, CertifiedKConnected], Field(discriminator="kind")
]
ConnectivityOutcome = Annotated[
    Union[Separator, KConnected, Disconnected, CompleteGraph],
    Field(discriminator="kind"),
]


class ReductionTrace(BaseModel):
    max_depth: int = 0
    subproblems: int = 0
    base_cases: int = 0
    expander_leaves: int = 0
    separator_shortcuts: int = 0
    rounds: int = 0
    fallback_fired: bool = False


class ReductionResult(BaseModel):
    """A single terminal reduction together with its trace and flow accounting."""

    model_config = ConfigDict(frozen=True)

    outcome: ReductionOutcome
    trace: ReductionTrace
    ledger: LedgerSnapshot


class KConnectivityResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int
    outcome: ConnectivityOutcome
    trace: ReductionTrace
    ledger: LedgerSnapshot


class _Reducer:
    """
    Recursive terminal reduction over one top-level call. Holds the parameters,
    the ledger and the trace shared by the whole recursion tree.
    """

    def __init__(
        self,
        k: int,
        phi: float,
        phi_bar: float,
        config: ReductionConfig,
        finder: SparseCutFinder | None,
        ledger: FlowLedger,
        trace: ReductionTrace,
    ):
        self.k = k
        self.phi = phi
        self.phi_bar = phi_bar
        self.config = config
        self.finder = finder
        self.ledger = ledger
        self.trace = trace

    def finder_for(self, graph: Graph) -> SparseCutFinder:
        if self.finder is not None:
            return self.finder
        return make_finder(self.config.finder, graph.n, self.config.brute_limit)

    @property
    def base_case_limit(self) -> float:
        return self.config.base_case_factor * self.k / self.phi

    @property
    def beta(self) -> int:
        return max(2, math.ceil(self.base_case_limit), math.ceil(self.k / self.phi))

    def reduce(
        self, graph: Graph, terminals: TerminalSet, depth: int
    ) -> Separator | NewTerminals | CertifiedKConnected:
        self.trace.subproblems += 1
        self.trace.max_depth = max(self.trace.max_depth, depth)

        if len(terminals) <= self.base_case_limit:
            return self.base_case(graph, terminals)

        finder = self.finder_for(graph)
        cut = finder.find(graph, terminals, self.phi_bar)
        if cut is None:
            return self.expander_branch(graph, terminals)

        if len(cut.separator) < self.k:
            self.trace.separator_shortcuts += 1
            return Separator(separator=cut.separator)

        members = set(terminals.members)
        left_count = len(members & (cut.left | cut.separator))
        right_count = len(members & (cut.right | cut.separator))
        balanced = 3 * min(left_count, right_count) >= len(members)
        logger.debug(
            f"Depth {depth}: sparse cut |S|={len(cut.separator)}, terminal sides "
            f"{left_count}/{right_count}, balanced={balanced}"
        )

        new_terminals = set(cut.separator)
        for side, remove_s_edges, kept in (
            (Side.LEFT, True, cut.left),
            (Side.RIGHT, balanced, cut.right),
        ):
            side_graph = build_side_graph(graph, cut, self.k, side, remove_s_edges)
            local_terminals = TerminalSet.of(
                [*side_graph.to_local(sorted(members & kept)), side_graph.special_terminal]
            )

            if (
                side == Side.RIGHT
                and not balanced
                and self.config.expander_shortcut
                and self.finder_for(side_graph.graph).find(
                    side_graph.graph, local_terminals, self.phi
                )
                is None
            ):
                logger.debug(f"Depth {depth}: right side graph certified as an expander")
                self.trace.subproblems += 1
                child = self.expander_branch(side_graph.graph, local_terminals)
            else:
                child = self.reduce(side_graph.graph, local_terminals, depth + 1)

            if isinstance(child, Separator):
                lifted = lift_separator(side_graph, child.separator)
                if not is_separator(graph, lifted):
                    raise InvariantViolationError(
                        f"lifted separator {sorted(lifted)} does not separate"
                    )
                return Separator(separator=lifted)
            if isinstance(child, NewTerminals):
                new_terminals.update(
                    side_graph.to_original(v) for v in child.terminals.members
                )

        return NewTerminals(terminals=TerminalSet.of(new_terminals))

    def expander_branch(
        self, graph: Graph, terminals: TerminalSet
    ) -> Separator | NewTerminals:
        self.trace.expander_leaves += 1
        if len(terminals) < 2:
            return NewTerminals(terminals=TerminalSet())

        result = unbalanced(
            graph,
            terminals,
            self.beta,
            cap=self.k,
            ledger=self.ledger,
            threshold_factor=self.config.splitter_threshold_factor,
            threads=self.config.threads,
        )
        if result.separator is not None:
            return Separator(separator=result.separator)
        return NewTerminals(terminals=TerminalSet())

    def base_case(
        self, graph: Graph, terminals: TerminalSet
    ) -> Separator | NewTerminals | CertifiedKConnected:
        self.trace.base_cases += 1
        separator = steiner_separator_below(
            graph,
            terminals,
            self.k,
            strategy=self.config.base_case,
            ledger=self.ledger,
        )
        if separator is not None:
            return Separator(separator=separator)
        if len(terminals) == graph.n and not graph.is_complete():
            return CertifiedKConnected()
        return NewTerminals(terminals=TerminalSet())


def steiner_separator_below(
    graph: Graph,
    terminals: TerminalSet,
    k: int,
    *,
    strategy: BaseCaseStrategy = BaseCaseStrategy.ANCHORED,
    ledger: FlowLedger | None = None,
) -> frozenset[int] | None:
    """
    The smallest separator below k between two terminals, or None if every pair of
    terminals needs k or more vertices removed.

    ALL_PAIRS runs a capped flow for every non-adjacent pair of terminals. ANCHORED
    only runs the pairs touching the first min(k, |T|) terminals: a separator of
    fewer than k vertices misses one of them, which then lies on one side with some
    terminal on the other.
    """
    members = terminals.members
    if strategy == BaseCaseStrategy.ANCHORED:
        anchors = members[: min(k, len(members))]
        pairs = [
            (a, x)
            for index, a in enumerate(anchors)
            for x in members
            if x != a and not (x in anchors and anchors.index(x) < index)
        ]
    else:
        pairs = list(combinations(members, 2))

    best: frozenset[int] | None = None
    for u, v in pairs:
        if graph.has_edge(u, v):
            continue
        limit = k if best is None else len(best)
        if limit <= 0:
            break
        result = min_vertex_separator(graph, [u], [v], limit, ledger=ledger)
        if isinstance(result, MinSeparator):
            best = result.separator
    return best


def reduce_terminal_slow(
    graph: Graph,
    terminals: TerminalSet,
    k: int,
    config: ReductionConfig | None = None,
    *,
    finder: SparseCutFinder | None = None,
    ledger: FlowLedger | None = None,
) -> ReductionResult:
    """
    One terminal reduction. Either returns a separator of G with fewer than k
    vertices or a new terminal set T' such that kappa(T') < k whenever kappa(T) < k.

    Terminal sets up to base_case_factor * k / phi are settled by pairwise flows.
    Larger ones ask the finder for a terminal-sparse cut at phi_bar. Without one, G
    is treated as a terminal expander and the unbalanced sweep decides. With one,
    both side graphs are reduced recursively and the new terminals are S plus
    whatever the children return.

    :param graph: The graph.
    :param terminals: The terminal set T.
    :param k: The connectivity target, at least 1.
    :param config: Reduction parameters.
    :param finder: Sparse-cut finder. Defaults to the one the config names.
    :param ledger: Ledger charged with every flow.
    """
    if k < 1:
        raise ArgumentError(f"k must be at least 1, got {k}")
    config = config or ReductionConfig()
    terminals.check_within(graph)
    phi, phi_bar = config.thresholds(graph.n)

    ledger = ledger if ledger is not None else FlowLedger()
    start = ledger.snapshot()
    trace = ReductionTrace()

    reducer = _Reducer(k, phi, phi_bar, config, finder, ledger, trace)
    outcome = reducer.reduce(graph, terminals, 0)

    return ReductionResult(outcome=outcome, trace=trace, ledger=ledger.snapshot() - start)


def check_k_connectivity(
    graph: Graph,
    k: int,
    config: ReductionConfig | None = None,
    *,
    finder: SparseCutFinder | None = None,
    ledger: FlowLedger | None = None,
) -> KConnectivityResult:
    """
    Decide whether G is k-vertex-connected, returning a separator of fewer than k
    vertices when it is not.

    Starting from T = V the terminal reduction is applied until it yields a
    separator or an empty terminal set. A round whose new terminal set is more than
    half the old one, or running out of rounds, falls back to the base case over the
    current terminals. Every separator is re-verified before it is returned.

    :raises InvariantViolationError: If a produced separator fails verification.
    """
    if k < 1:
        raise ArgumentError(f"k must be at least 1, got {k}")
    config = config or ReductionConfig()

    ledger = ledger if ledger is not None else FlowLedger()
    start = ledger.snapshot()
    trace = ReductionTrace()

    def finish(outcome: ConnectivityOutcome) -> KConnectivityResult:
        return KConnectivityResult(
            k=k, outcome=outcome, trace=trace, ledger=ledger.snapshot() - start
        )

    n = graph.n
    if graph.is_complete():
        if k <= n - 1:
            return finish(KConnected())
        return finish(CompleteGraph(kappa=max(n - 1, 0)))
    if not graph.is_connected():
        return finish(Disconnected())

    phi, phi_bar = config.thresholds(n)
    max_rounds = config.max_rounds or 2 * ceil_log2(n) + 1
    reducer = _Reducer(k, phi, phi_bar, config, finder, ledger, trace)

    terminals = TerminalSet.all_vertices(graph)
    outcome: Separator | NewTerminals | CertifiedKConnected | None = None
    while trace.rounds < max_rounds:
        trace.rounds += 1
        outcome = reducer.reduce(graph, terminals, 0)
        if not isinstance(outcome, NewTerminals):
            break
        if not outcome.terminals.members:
            break
        if 2 * len(outcome.terminals) > len(terminals):
            logger.debug(
                f"Round {trace.rounds}: |T'|={len(outcome.terminals)} exceeds "
                f"|T|/2={len(terminals) / 2}, falling back to the base case"
            )
            trace.fallback_fired = True
            outcome = reducer.base_case(graph, terminals)
            break
        logger.debug(f"Round {trace.rounds}: |T| {len(terminals)} -> {len(outcome.terminals)}")
        terminals = outcome.terminals
    else:
        trace.fallback_fired = True
        outcome = reducer.base_case(graph, terminals)

    if isinstance(outcome, Separator):
        separator = outcome.separator
        if len(separator) >= k or not is_separator(graph, separator):
            raise InvariantViolationError(
                f"check-k produced an invalid separator {sorted(separator)} for k={k}"
            )
        return finish(outcome)

    return finish(KConnected())
