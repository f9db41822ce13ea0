from fractions import Fraction
from itertools import combinations

import pytest

from cutsmith.enums import FinderKind
from cutsmith.exceptions import OracleLimitError
from cutsmith.finders import BruteSparse, HeuristicSparse, make_finder
from cutsmith.graph import Graph, TerminalSet, VertexCut
from cutsmith.reduction import terminal_expansion
from tests.graphs import BOWTIE, C5, DUMBBELL, K5, PETERSEN, random_graphs


def enumerate_sparsest(graph: Graph, terminals: TerminalSet) -> Fraction | None:
    members = set(terminals.members)
    best: Fraction | None = None
    for size in range(1, graph.n):
        for left in combinations(graph.vertices, size):
            separator = graph.neighborhood(left)
            right = set(graph.vertices) - set(left) - separator
            if not right:
                continue
            smaller = min(
                len(members & (set(left) | separator)), len(members & (right | separator))
            )
            if smaller == 0:
                continue
            ratio = Fraction(len(separator), smaller)
            if best is None or ratio < best:
                best = ratio
    return best


def test_brute_sparsest_bowtie() -> None:
    found = BruteSparse().sparsest(BOWTIE, TerminalSet.all_vertices(BOWTIE))
    assert found is not None
    cut, expansion = found
    assert cut == VertexCut(
        left=frozenset({0, 1}), separator=frozenset({2}), right=frozenset({3, 4})
    )
    assert expansion == Fraction(1, 3)


def test_brute_find_respects_threshold() -> None:
    finder = BruteSparse()
    terminals = TerminalSet.all_vertices(BOWTIE)
    assert finder.find(BOWTIE, terminals, 0.5) is not None
    assert finder.find(BOWTIE, terminals, Fraction(1, 3)) is None
    assert finder.certifies


def test_brute_complete_graph_is_an_expander() -> None:
    terminals = TerminalSet.all_vertices(K5)
    assert BruteSparse().sparsest(K5, terminals) is None
    assert BruteSparse().find(K5, terminals, 0.49) is None


def test_brute_disconnected_pair() -> None:
    graph = Graph(2, [])
    found = BruteSparse().sparsest(graph, TerminalSet.all_vertices(graph))
    assert found is not None
    assert found[0].separator == frozenset()
    assert found[1] == 0


def test_brute_limit() -> None:
    with pytest.raises(OracleLimitError):
        BruteSparse(limit=4).sparsest(C5, TerminalSet.all_vertices(C5))


@pytest.mark.parametrize("seed", range(6))
def test_brute_matches_enumeration(seed: int) -> None:
    graph = random_graphs(1, 9, 0.35, first_seed=seed)[0]
    for terminals in (
        TerminalSet.all_vertices(graph),
        TerminalSet.of(range(0, graph.n, 2)),
        TerminalSet.of([1, 5, 7]),
    ):
        found = BruteSparse().sparsest(graph, terminals)
        expected = enumerate_sparsest(graph, terminals)
        if expected is None:
            assert found is None
            continue
        assert found is not None
        cut, expansion = found
        assert expansion == expected
        assert cut.is_valid_for(graph)
        assert terminal_expansion(cut, terminals) == expansion


def test_heuristic_finds_the_bridge() -> None:
    terminals = TerminalSet.all_vertices(DUMBBELL)
    cut = HeuristicSparse().find(DUMBBELL, terminals, 0.25)
    assert cut is not None
    assert cut.is_valid_for(DUMBBELL)
    assert terminal_expansion(cut, terminals) < 0.25
    assert not HeuristicSparse().certifies


def test_heuristic_complete_graph() -> None:
    assert HeuristicSparse().find(K5, TerminalSet.all_vertices(K5), 0.49) is None


def test_heuristic_never_beats_brute() -> None:
    terminals = TerminalSet.all_vertices(PETERSEN)
    found = BruteSparse().sparsest(PETERSEN, terminals)
    assert found is not None
    cut = HeuristicSparse().find(PETERSEN, terminals, 10)
    assert cut is not None
    assert terminal_expansion(cut, terminals) >= found[1]


@pytest.mark.parametrize(
    "kind,n,expected",
    [
        pytest.param(FinderKind.AUTO, 10, BruteSparse, id="auto_small"),
        pytest.param(FinderKind.AUTO, 40, HeuristicSparse, id="auto_large"),
        pytest.param(FinderKind.BRUTE, 40, BruteSparse, id="brute"),
        pytest.param(FinderKind.HEURISTIC, 10, HeuristicSparse, id="heuristic"),
    ],
)
def test_make_finder(kind: FinderKind, n: int, expected: type) -> None:
    assert isinstance(make_finder(kind, n, 18), expected)
