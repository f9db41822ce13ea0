import numpy as np
import pytest

from cutsmith.enums import FamilyMode, IsolationMode
from cutsmith.exceptions import ArgumentError
from cutsmith.generators import planted
from cutsmith.graph import TerminalSet, VertexCut, is_separator
from cutsmith.oracles import brute_force_kappa
from cutsmith.settings import RECORDED_CONSTANTS
from cutsmith.unbalanced import is_unbalanced_cut, unbalanced
from cutsmith.utilities import ceil_log2
from tests.graphs import BOWTIE, K5, PETERSEN

BOWTIE_CUT = VertexCut(
    left=frozenset({0, 1}), separator=frozenset({2}), right=frozenset({3, 4})
)


@pytest.mark.parametrize(
    "terminals,beta,expected",
    [
        pytest.param(range(5), 4, True, id="all_beta_4"),
        pytest.param(range(5), 3, False, id="all_beta_3"),
        pytest.param([], 1, True, id="no_terminals"),
        pytest.param([0, 3, 4], 2, True, id="lone_left_terminal"),
    ],
)
def test_is_unbalanced_cut(terminals: range | list[int], beta: int, expected: bool) -> None:
    assert is_unbalanced_cut(BOWTIE_CUT, TerminalSet.of(terminals), beta) is expected


def test_bowtie_cut_vertex() -> None:
    result = unbalanced(BOWTIE, TerminalSet.all_vertices(BOWTIE), 4)
    assert result.separator == frozenset({2})
    assert result.found
    assert result.family_mode == FamilyMode.ALL_PAIRS
    assert result.family_size == 10
    assert result.ledger.calls > 0


def test_complete_graph_has_nothing() -> None:
    result = unbalanced(K5, TerminalSet.all_vertices(K5), 5)
    assert result.separator is None
    assert result.ledger.calls == 0


def test_cap_hides_separators_at_or_above_it() -> None:
    terminals = TerminalSet.all_vertices(BOWTIE)
    assert unbalanced(BOWTIE, terminals, 4, cap=1).separator is None
    assert unbalanced(BOWTIE, terminals, 4, cap=2).separator == frozenset({2})


def test_naive_mode_agrees() -> None:
    terminals = TerminalSet.all_vertices(PETERSEN)
    binary = unbalanced(PETERSEN, terminals, 3)
    naive = unbalanced(PETERSEN, terminals, 3, mode=IsolationMode.NAIVE)
    assert binary.separator is not None and naive.separator is not None
    assert len(binary.separator) == len(naive.separator) == 3


def test_rejects_bad_arguments() -> None:
    with pytest.raises(ArgumentError):
        unbalanced(BOWTIE, TerminalSet.of([0]), 2)
    with pytest.raises(ArgumentError):
        unbalanced(BOWTIE, TerminalSet.all_vertices(BOWTIE), 1)


def test_planted_cut_in_sixty_vertices() -> None:
    instance = planted(2, 3, 55, seed=3)
    graph = instance.graph
    terminals = TerminalSet.all_vertices(graph)
    cut = VertexCut(left=instance.left, separator=instance.separator, right=instance.right)
    assert is_unbalanced_cut(cut, terminals, 6)

    result = unbalanced(graph, terminals, 6, cap=4)
    assert result.separator is not None
    assert len(result.separator) == 3
    assert is_separator(graph, result.separator)


def test_hash_family_sweep_finds_the_planted_cut() -> None:
    instance = planted(1, 2, 100, seed=1, density=0.1)
    graph = instance.graph
    # the lone left vertex plus 98 right vertices
    right = sorted(instance.right)[:98]
    terminals = TerminalSet.of([0, *right])
    cut = VertexCut(left=instance.left, separator=instance.separator, right=instance.right)
    assert is_unbalanced_cut(cut, terminals, 2)

    result = unbalanced(graph, terminals, 2, cap=3, threshold_factor=1)
    assert result.family_mode == FamilyMode.HASH_PREIMAGES
    assert result.separator is not None
    assert len(result.separator) == 2
    assert is_separator(graph, result.separator)


def _check_planted(seed: int) -> None:
    rng = np.random.default_rng(seed)
    left = int(rng.integers(1, 4))
    separator = int(rng.integers(1, 4))
    right = int(rng.integers(6, 20 - left - separator + 1))
    instance = planted(left, separator, right, seed=seed)
    graph = instance.graph
    terminals = TerminalSet.all_vertices(graph)
    beta = left + separator + 1
    cut = VertexCut(left=instance.left, separator=instance.separator, right=instance.right)
    assert is_unbalanced_cut(cut, terminals, beta)

    result = unbalanced(graph, terminals, beta)
    kappa, _ = brute_force_kappa(graph)
    assert result.separator is not None
    assert len(result.separator) == kappa == separator
    assert is_separator(graph, result.separator)

    c = RECORDED_CONSTANTS.unbalanced_c
    bound = c * graph.m * beta**2 * ceil_log2(len(terminals)) ** 5
    assert result.ledger.total_instance_edges <= bound


@pytest.mark.parametrize("seed", range(8))
def test_planted_unbalanced_mincuts(seed: int) -> None:
    _check_planted(seed)


@pytest.mark.slow
def test_planted_unbalanced_mincuts_sweep() -> None:
    for seed in range(100, 300):
        _check_planted(seed)
