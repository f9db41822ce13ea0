import logging

from pydantic import BaseModel, ConfigDict

from cutsmith.enums import FamilyMode, IsolationMode
from cutsmith.exceptions import ArgumentError
from cutsmith.flow import FlowLedger, LedgerSnapshot
from cutsmith.graph import Graph, TerminalSet, VertexCut
from cutsmith.hashing import SPLITTER_THRESHOLD_FACTOR, build_terminal_family
from cutsmith.isolating import isolating_vertex_cuts, maximal_independent_set

logger = logging.getLogger(__name__)


class UnbalancedResult(BaseModel):
    """
    Outcome of the unbalanced-cut sweep. separator is None when no candidate
    separator was found (below the cap, if one was given).
    """

    model_config = ConfigDict(frozen=True)

    separator: frozenset[int] | None
    ledger: LedgerSnapshot
    family_mode: FamilyMode
    family_size: int

    @property
    def found(self) -> bool:
        return self.separator is not None


def is_unbalanced_cut(cut: VertexCut, terminals: TerminalSet, beta: int) -> bool:
    """
    True iff min(|T & (L | S)|, |T & (S | R)|) < beta.
    """
    members = set(terminals.members)
    left = len(members & (cut.left | cut.separator))
    right = len(members & (cut.separator | cut.right))
    return min(left, right) < beta


def unbalanced(
    graph: Graph,
    terminals: TerminalSet,
    beta: int,
    *,
    cap: int | None = None,
    ledger: FlowLedger | None = None,
    mode: IsolationMode = IsolationMode.BINARY,
    threshold_factor: int = SPLITTER_THRESHOLD_FACTOR,
    threads: int = 1,
) -> UnbalancedResult:
    """
    Sweep the splitter family of (T, beta) through isolating cuts and keep the
    smallest separator seen. If G has a (T, beta)-unbalanced vertex mincut the
    result is a minimum separator of G.

    Members whose maximal independent set is a single vertex contribute nothing.
    Once a separator is known the flow cap drops to its size, so later flows only
    report strictly smaller separators and the first one found wins ties.

    :param graph: The graph.
    :param terminals: The terminal set T, at least two terminals.
    :param beta: The unbalance bound, at least 2.
    :param cap: Connectivity target k. Only separators smaller than k are reported.
    :param ledger: Ledger charged with every flow.
    :param mode: Isolating-cuts mode.
    :param threshold_factor: The splitter's all-pairs threshold constant.
    :param threads: Worker threads for isolating cuts.
    """
    if len(terminals) < 2:
        raise ArgumentError(f"unbalanced needs at least 2 terminals, got {len(terminals)}")
    if beta < 2:
        raise ArgumentError(f"beta must be at least 2, got {beta}")
    terminals.check_within(graph)

    ledger = ledger if ledger is not None else FlowLedger()
    start = ledger.snapshot()

    family = build_terminal_family(terminals, beta, threshold_factor=threshold_factor)

    best: frozenset[int] | None = None
    for subset in family.subsets():
        independent = maximal_independent_set(graph, subset)
        if len(independent) < 2:
            continue

        limit = cap if best is None else len(best)
        if limit is not None and limit <= 0:
            break

        result = isolating_vertex_cuts(
            graph, independent, mode=mode, cap=limit, ledger=ledger, threads=threads
        )
        smallest = result.smallest()
        if smallest is not None and (best is None or len(smallest[1]) < len(best)):
            best = smallest[1]
            logger.debug(f"Unbalanced sweep: separator of size {len(best)} via {subset[:4]}")

    return UnbalancedResult(
        separator=best,
        ledger=ledger.snapshot() - start,
        family_mode=family.mode,
        family_size=len(family),
    )
