"""
Small named graphs shared by the tests, with their known vertex connectivity.
"""

from itertools import combinations

import networkx as nx

from cutsmith.generators import (
    barbell,
    bowtie,
    complete,
    cycle,
    gnp,
    path,
    petersen,
    star,
)
from cutsmith.graph import Graph

P3 = path(3)
P5 = path(5)
C4 = cycle(4)
C5 = cycle(5)
K4 = complete(4)
K5 = complete(5)
K6 = complete(6)
STAR3 = star(3)
BOWTIE = bowtie()
PETERSEN = petersen()
BARBELL = barbell(4, 3)
# two disjoint triangles
TWO_TRIANGLES = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
# K_{3,3}: parts {0, 1, 2} and {3, 4, 5}
K33 = Graph(6, [(u, v) for u in range(3) for v in range(3, 6)])
# 3-cube Q3, 3-connected
CUBE = Graph(
    8,
    [(u, v) for u, v in combinations(range(8), 2) if bin(u ^ v).count("1") == 1],
)

# two 5-cliques {0..4} and {6..10} joined through the cut vertex 5
DUMBBELL = Graph(
    11,
    [*combinations(range(5), 2), *combinations(range(6, 11), 2), (4, 5), (5, 6)],
)

# two 6-cliques {0..5} and {4..9} sharing the vertices 4 and 5
TWO_CLIQUES = Graph(
    10, sorted({*combinations(range(6), 2), *combinations(range(4, 10), 2)})
)

KNOWN_KAPPA = {
    "p3": (P3, 1),
    "p5": (P5, 1),
    "c4": (C4, 2),
    "c5": (C5, 2),
    "k4": (K4, 3),
    "k5": (K5, 4),
    "star3": (STAR3, 1),
    "bowtie": (BOWTIE, 1),
    "petersen": (PETERSEN, 3),
    "barbell": (BARBELL, 3),
    "two_triangles": (TWO_TRIANGLES, 0),
    "k33": (K33, 3),
    "cube": (CUBE, 3),
    "dumbbell": (DUMBBELL, 1),
}


def random_graphs(count: int, n: int, p: float, first_seed: int = 0) -> list[Graph]:
    return [gnp(n, p, seed) for seed in range(first_seed, first_seed + count)]


def connected_graphs(n: int) -> list[Graph]:
    """
    Every connected graph on n <= 8 vertices, one per isomorphism class.

    Up to 7 vertices the graphs come from the networkx atlas. Every connected graph
    on 8 vertices has a vertex whose removal leaves a connected 7-vertex graph, so
    the 8-vertex graphs are those graphs with a new vertex joined to a non-empty
    subset, deduplicated by Weisfeiler-Lehman hash and an isomorphism test.
    """
    if n <= 7:
        return [Graph.from_networkx(g) for g in _connected_atlas_graphs(n)]
    if n != 8:
        raise ValueError(f"the catalogue stops at 8 vertices, got {n}")

    buckets: dict[str, list[nx.Graph]] = {}
    for base in _connected_atlas_graphs(7):
        for mask in range(1, 1 << 7):
            extended = base.copy()
            extended.add_edges_from((7, v) for v in range(7) if mask >> v & 1)
            bucket = buckets.setdefault(nx.weisfeiler_lehman_graph_hash(extended), [])
            if not any(nx.is_isomorphic(extended, other) for other in bucket):
                bucket.append(extended)

    return [Graph.from_networkx(g) for bucket in buckets.values() for g in bucket]


def _connected_atlas_graphs(n: int) -> list[nx.Graph]:
    return [
        g
        for g in nx.graph_atlas_g()
        if g.number_of_nodes() == n and n > 0 and nx.is_connected(g)
    ]
