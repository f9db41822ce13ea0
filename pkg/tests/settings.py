import pytest

from cutsmith.enums import GraphFormat
from cutsmith.graph import Graph
from tests.graphs import KNOWN_KAPPA

KNOWN_KAPPA_PARAMS = [
    pytest.param(graph, kappa, id=name) for name, (graph, kappa) in KNOWN_KAPPA.items()
]

# small connected graphs where exhaustive checks stay cheap
SMALL_CONNECTED_PARAMS = [
    pytest.param(graph, kappa, id=name)
    for name, (graph, kappa) in KNOWN_KAPPA.items()
    if kappa > 0
]

MALFORMED_EDGE_LIST_PARAMS = [
    pytest.param("2 1\n0 0\n", 2, id="self_loop"),
    pytest.param("3 2\n0 1\n0 1\n", 3, id="duplicate_edge"),
    pytest.param("3 2\n0 1\n1 x\n", 3, id="non_integer"),
    pytest.param("3 2\n0 1 2\n1 2\n", 2, id="three_tokens"),
    pytest.param("3 3\n0 1\n1 2\n", 1, id="edge_count_mismatch"),
    pytest.param(b"3 2\n0 1\n1 \xff\n", 3, id="invalid_utf8"),
]

MALFORMED_DIMACS_PARAMS = [
    pytest.param("p edge -1 0\n", 1, id="negative_n"),
    pytest.param("p edge 3 -2\n", 1, id="negative_m"),
    pytest.param("p foo 3 2\ne 1 2\ne 2 3\n", 1, id="not_edge_problem"),
    pytest.param("p edge 3 1\np edge 3 1\ne 1 2\n", 2, id="second_header"),
    pytest.param("p edge 3 1\nx 1 2\n", 2, id="unknown_line"),
]

FORMAT_PARAMS = [
    pytest.param(GraphFormat.EDGE_LIST, id="edge_list"),
    pytest.param(GraphFormat.DIMACS, id="dimacs"),
]

SEPARATOR_PARAMS = [
    # (graph, separator, expected)
    pytest.param(Graph(3, [(0, 1), (1, 2)]), {1}, True, id="p3_middle"),
    pytest.param(Graph(3, [(0, 1), (1, 2)]), {0}, False, id="p3_end"),
    pytest.param(
        Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        {0, 1},
        False,
        id="k4_pair",
    ),
    pytest.param(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), {1, 3}, True, id="c4_opposite"),
    pytest.param(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), {1, 2}, False, id="c4_adjacent"),
    pytest.param(Graph(3, [(0, 1), (1, 2)]), {0, 1}, False, id="singleton_left"),
    pytest.param(Graph(2, []), set(), True, id="two_isolated"),
]

FAMILY_BETA_PARAMS = [
    pytest.param(2, id="beta_2"),
    pytest.param(4, id="beta_4"),
    pytest.param(8, id="beta_8"),
]

EPS_PARAMS = [
    pytest.param(1.0, id="eps_1"),
    pytest.param(0.5, id="eps_half"),
    pytest.param(0.25, id="eps_quarter"),
]
