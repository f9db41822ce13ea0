import pytest

from cutsmith.exceptions import ArgumentError, ConfigError
from cutsmith.generators import (
    barbell,
    circulant_graph,
    connect_components,
    cycle,
    generate,
    gnp,
    path,
    petersen,
    planted,
    star,
)
from cutsmith.graph import is_separator
from cutsmith.oracles import brute_force_kappa
from tests.graphs import TWO_TRIANGLES


def test_small_families() -> None:
    assert path(5).m == 4
    assert cycle(5).m == 5
    assert cycle(2) == path(2)
    assert star(3).degree(0) == 3
    assert petersen().m == 15
    graph = circulant_graph(8, [1, 2])
    assert {graph.degree(v) for v in graph.vertices} == {4}


def test_connect_components() -> None:
    joined = connect_components(TWO_TRIANGLES)
    assert joined.is_connected()
    assert joined.m == 7
    assert joined.has_edge(0, 3)


@pytest.mark.parametrize("seed", range(5))
def test_gnp_is_connected_and_seeded(seed: int) -> None:
    graph = gnp(30, 0.05, seed)
    assert graph.is_connected()
    assert graph == gnp(30, 0.05, seed)


def test_gnp_may_stay_disconnected() -> None:
    assert not gnp(10, 0.0, connected=False).is_connected()


def test_barbell() -> None:
    graph = barbell(4, 3)
    kappa, cut = brute_force_kappa(graph)
    assert kappa == 3
    assert cut is not None and cut.separator == frozenset({1, 2, 3})
    with pytest.raises(ArgumentError):
        barbell(4, 4)


@pytest.mark.parametrize(
    "sizes",
    [
        pytest.param((2, 3, 10), id="small_left"),
        pytest.param((6, 2, 3), id="small_right"),
        pytest.param((1, 1, 1), id="path_like"),
    ],
)
def test_planted_cut_is_minimum(sizes: tuple[int, int, int]) -> None:
    instance = planted(*sizes, seed=4)
    left, separator, right = sizes
    assert instance.graph.n == left + separator + right
    assert instance.separator == frozenset(range(left, left + separator))
    assert is_separator(instance.graph, instance.separator)
    kappa, _ = brute_force_kappa(instance.graph)
    assert kappa == separator
    assert instance.seed >= 4


def test_planted_large_instance_is_verified_by_flows() -> None:
    instance = planted(3, 4, 40, seed=2)
    assert instance.graph.n == 47
    assert len(instance.separator) == 4


def test_planted_rejects_every_attempt() -> None:
    # with no edges inside R, the right side falls apart for every seed
    with pytest.raises(ConfigError):
        planted(1, 1, 3, density=0.0, max_attempts=3)


def test_planted_arguments() -> None:
    with pytest.raises(ArgumentError):
        planted(0, 2, 3)


def test_generate() -> None:
    assert generate("gnp", {"n": 10, "p": 0.5}, seed=3) == gnp(10, 0.5, 3)
    # unseeded generators ignore the seed
    assert generate("cycle", {"n": 5}, seed=9) == cycle(5)
    assert generate("petersen", {}) == petersen()


def test_generate_errors() -> None:
    with pytest.raises(ConfigError):
        generate("lattice", {})
    with pytest.raises(ConfigError):
        generate("cycle", {"size": 5})
