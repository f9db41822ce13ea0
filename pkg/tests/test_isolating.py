import numpy as np
import pytest

from cutsmith.enums import IsolationMode
from cutsmith.exceptions import ArgumentError, NotIndependentError
from cutsmith.flow import FlowLedger, separates
from cutsmith.generators import gnp
from cutsmith.graph import Graph
from cutsmith.isolating import isolating_vertex_cuts, maximal_independent_set
from cutsmith.settings import RECORDED_CONSTANTS
from cutsmith.utilities import ceil_log2
from tests.graphs import C4, K4, P3, P5, STAR3


@pytest.mark.parametrize(
    "graph,expected",
    [
        pytest.param(P3, {0, 2}, id="p3"),
        pytest.param(K4, {0}, id="k4"),
        pytest.param(C4, {0, 2}, id="c4"),
    ],
)
def test_maximal_independent_set(graph: Graph, expected: set[int]) -> None:
    assert maximal_independent_set(graph, graph.vertices) == frozenset(expected)


def test_maximal_independent_set_respects_candidates() -> None:
    assert maximal_independent_set(P5, [1, 2, 4]) == frozenset({1, 4})
    with pytest.raises(ArgumentError):
        maximal_independent_set(P5, [])


@pytest.mark.parametrize(
    "mode",
    [
        pytest.param(IsolationMode.BINARY, id="binary"),
        pytest.param(IsolationMode.NAIVE, id="naive"),
    ],
)
def test_star_leaves(mode: IsolationMode) -> None:
    result = isolating_vertex_cuts(STAR3, [1, 2, 3], mode=mode)
    assert result.separators == {v: frozenset({0}) for v in (1, 2, 3)}
    assert result.capped == frozenset()


def test_path_members() -> None:
    result = isolating_vertex_cuts(P5, [0, 2, 4])
    assert result.separators == {
        0: frozenset({1}),
        2: frozenset({1, 3}),
        4: frozenset({3}),
    }
    assert result.smallest() == (0, frozenset({1}))


def test_two_members_share_one_flow(ledger: FlowLedger) -> None:
    result = isolating_vertex_cuts(C4, [0, 2], ledger=ledger)
    assert result.separators == {0: frozenset({1, 3}), 2: frozenset({1, 3})}
    assert ledger.calls == 1


def test_disconnected_members_get_empty_separators() -> None:
    graph = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    result = isolating_vertex_cuts(graph, [0, 2, 5])
    assert result.separators[5] == frozenset()
    assert result.separators[0] == frozenset({1})


def test_rejects_dependent_and_tiny_sets() -> None:
    with pytest.raises(NotIndependentError) as error:
        isolating_vertex_cuts(P3, [0, 1])
    assert error.value.edge == (0, 1)
    with pytest.raises(ArgumentError):
        isolating_vertex_cuts(P3, [0])


def test_cap_reports_capped_members() -> None:
    result = isolating_vertex_cuts(STAR3, [1, 2, 3], cap=1)
    assert result.separators == {}
    assert result.capped == frozenset({1, 2, 3})
    assert result.smallest() is None

    result = isolating_vertex_cuts(P5, [0, 2, 4], cap=2)
    assert set(result.separators) == {0, 4}
    assert result.capped == frozenset({2})


def _random_instance(seed: int, n: int = 50) -> tuple[Graph, list[int]]:
    rng = np.random.default_rng(seed)
    graph = gnp(n, float(rng.uniform(0.06, 0.2)), seed)
    size = int(rng.integers(4, 17))
    candidates = [int(v) for v in rng.choice(n, size=size, replace=False)]
    return graph, sorted(maximal_independent_set(graph, candidates))


def _check_against_naive(seed: int) -> None:
    graph, members = _random_instance(seed)
    if len(members) < 2:
        return

    ledger = FlowLedger()
    binary = isolating_vertex_cuts(graph, members, ledger=ledger)
    naive = isolating_vertex_cuts(graph, members, mode=IsolationMode.NAIVE)

    for v in members:
        separator = binary.separators[v]
        assert len(separator) == len(naive.separators[v]), (seed, v)
        assert not separator & set(members)
        assert separates(graph, separator, [v], [w for w in members if w != v])

    c = RECORDED_CONSTANTS.isolating_cuts_c
    bound = c * graph.m * ceil_log2(len(members)) + c * graph.m
    assert ledger.total_instance_edges <= bound


@pytest.mark.parametrize("seed", range(12))
def test_binary_matches_naive(seed: int) -> None:
    _check_against_naive(seed)


@pytest.mark.slow
def test_binary_matches_naive_sweep() -> None:
    for seed in range(100, 200):
        _check_against_naive(seed)


def test_threads_do_not_change_the_result() -> None:
    graph, members = _random_instance(7)
    sequential = isolating_vertex_cuts(graph, members)
    threaded = isolating_vertex_cuts(graph, members, threads=4)
    assert sequential == threaded
