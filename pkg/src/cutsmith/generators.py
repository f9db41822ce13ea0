import logging
from itertools import combinations
from typing import Any, Callable

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from cutsmith.exceptions import ArgumentError, ConfigError
from cutsmith.expanders import circulant, complete_graph
from cutsmith.graph import Graph, TerminalSet
from cutsmith.oracles import brute_force_kappa
from cutsmith.reduction import steiner_separator_below
from cutsmith.settings import RECORDED_CONSTANTS

logger = logging.getLogger(__name__)


def connect_components(graph: Graph) -> Graph:
    """
    Join consecutive components by an edge between their smallest vertices.
    """
    components = graph.components()
    if len(components) <= 1:
        return graph
    bridges = [(a[0], b[0]) for a, b in zip(components, components[1:])]
    return Graph(graph.n, [*graph.edges(), *bridges])


def gnp(n: int, p: float, seed: int = 0, *, connected: bool = True) -> Graph:
    """
    Erdos-Renyi G(n, p), made connected by default.
    """
    graph = Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))
    return connect_components(graph) if connected else graph


def cycle(n: int) -> Graph:
    if n < 3:
        return path(n)
    return Graph(n, [(v, (v + 1) % n) for v in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(v, v + 1) for v in range(n - 1)])


def complete(n: int) -> Graph:
    return complete_graph(n)


def star(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def bowtie() -> Graph:
    """Triangles {0, 1, 2} and {2, 3, 4} sharing vertex 2."""
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def petersen() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def circulant_graph(n: int, offsets: list[int]) -> Graph:
    return circulant(n, offsets)


def barbell(clique_size: int, bridge: int) -> Graph:
    """
    Two cliques A = [0, c) and B = [c, 2c). The last bridge vertices of A are joined
    to every vertex of B, so those vertices form the unique minimum separator.
    """
    if not 1 <= bridge < clique_size:
        raise ArgumentError(f"bridge must lie in [1, {clique_size}), got {bridge}")
    c = clique_size
    edges = [*combinations(range(c), 2), *combinations(range(c, 2 * c), 2)]
    edges.extend((a, b) for a in range(c - bridge, c) for b in range(c, 2 * c))
    return Graph(2 * c, edges)


class PlantedInstance(BaseModel):
    """
    A graph whose minimum separator is known: left, separator and right are a
    verified vertex mincut.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: Graph
    left: frozenset[int]
    separator: frozenset[int]
    right: frozenset[int]
    seed: int


class _PlantRejected(Exception):
    pass


def planted(
    left_size: int,
    separator_size: int,
    right_size: int,
    *,
    seed: int = 0,
    density: float = 0.7,
    max_attempts: int = 20,
) -> PlantedInstance:
    """
    Plant a vertex cut: L = [0, a), S = [a, a+s), R = the rest. L and R are random
    dense graphs. Every S vertex is joined to all of the smaller side and to a random
    part of the larger one, at least one vertex.
    The plant is kept only if an oracle confirms kappa = |S|; otherwise the seed is
    advanced and the plant redrawn.

    :raises ConfigError: If no attempt produced a verified plant.
    """
    if min(left_size, separator_size, right_size) < 1:
        raise ArgumentError("planted cut sides and separator must be non-empty")

    n = left_size + separator_size + right_size
    left = range(left_size)
    middle = range(left_size, left_size + separator_size)
    right = range(left_size + separator_size, n)
    smaller = left if left_size <= right_size else right
    attempt_seed = seed

    def draw(current: int) -> PlantedInstance:
        rng = np.random.default_rng(current)
        edges = []
        for side in (left, right):
            edges.extend(
                (u, v) for u, v in combinations(side, 2) if rng.random() < density
            )
        for s in middle:
            for side in (left, right):
                if side is smaller:
                    edges.extend((s, v) for v in side)
                    continue
                chosen = [v for v in side if rng.random() < density]
                edges.extend((s, v) for v in chosen or [side[int(rng.integers(len(side)))]])
        graph = Graph(n, edges)

        if n <= RECORDED_CONSTANTS.brute_force_cap:
            kappa, _ = brute_force_kappa(graph)
            verified = kappa == separator_size
        else:
            # S separates by construction, so kappa = |S| iff nothing smaller does
            verified = (
                steiner_separator_below(
                    graph, TerminalSet.all_vertices(graph), separator_size
                )
                is None
            )
        if not verified:
            raise _PlantRejected(f"seed {current}: a separator below {separator_size} exists")

        return PlantedInstance(
            graph=graph,
            left=frozenset(left),
            separator=frozenset(middle),
            right=frozenset(right),
            seed=current,
        )

    try:
        for attempt in Retrying(
            stop=stop_after_attempt(max_attempts),
            retry=retry_if_exception_type(_PlantRejected),
        ):
            with attempt:
                try:
                    return draw(attempt_seed)
                except _PlantRejected as e:
                    logger.debug(f"Planted cut rejected: {e}")
                    attempt_seed += 1
                    raise e
    except RetryError as e:
        raise ConfigError(
            f"no verified plant ({left_size}, {separator_size}, {right_size}) "
            f"within {max_attempts} attempts from seed {seed}"
        ) from e

    raise AssertionError("unreachable")


def _planted_graph(left: int, separator: int, right: int, seed: int = 0, density: float = 0.7) -> Graph:
    return planted(left, separator, right, seed=seed, density=density).graph


GENERATORS: dict[str, Callable[..., Graph]] = {
    "gnp": gnp,
    "planted": _planted_graph,
    "barbell": barbell,
    "circulant": circulant_graph,
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "star": star,
    "bowtie": bowtie,
    "petersen": petersen,
}

SEEDED_GENERATORS = frozenset({"gnp", "planted"})


def generate(name: str, params: dict[str, Any], seed: int | None = None) -> Graph:
    """
    Build a graph with a named generator. seed is passed to the generators that
    take one.

    :raises ConfigError: For an unknown generator or parameters it does not accept.
    """
    if name not in GENERATORS:
        raise ConfigError(f"unknown generator '{name}', expected one of {sorted(GENERATORS)}")
    arguments = dict(params)
    if seed is not None and name in SEEDED_GENERATORS:
        arguments["seed"] = seed
    try:
        return GENERATORS[name](**arguments)
    except TypeError as e:
        raise ConfigError(f"bad parameters for generator '{name}': {e}") from e
