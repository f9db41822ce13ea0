import networkx as nx
import pytest
from pydantic import ValidationError

from cutsmith.enums import GraphFormat
from cutsmith.exceptions import (
    ArgumentError,
    GraphParseError,
    NotASeparatorError,
    VertexRangeError,
)
from cutsmith.graph import (
    Graph,
    TerminalSet,
    VertexCut,
    cut_from_separator,
    is_separator,
    min_degree_vertex,
    parse_graph,
    serialize_graph,
)
from tests.graphs import BOWTIE, C4, K4, P3, PETERSEN, STAR3
from tests.settings import (
    FORMAT_PARAMS,
    KNOWN_KAPPA_PARAMS,
    MALFORMED_DIMACS_PARAMS,
    MALFORMED_EDGE_LIST_PARAMS,
    SEPARATOR_PARAMS,
)


def test_parse_path() -> None:
    graph = parse_graph("3 2\n0 1\n1 2")
    assert (graph.n, graph.m) == (3, 2)
    assert graph.neighbors(1) == (0, 2)
    assert graph == P3


def test_parse_complete_graph() -> None:
    graph = parse_graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3")
    assert graph == K4
    assert graph.is_complete()


def test_parse_comments_and_bytes() -> None:
    text = b"# a path\n3 2 # header\n0 1\n\n1 2 # last edge\n"
    assert parse_graph(text) == P3


@pytest.mark.parametrize("text,line_number", MALFORMED_EDGE_LIST_PARAMS)
def test_parse_rejects_malformed(text: str | bytes, line_number: int) -> None:
    with pytest.raises(GraphParseError) as error:
        parse_graph(text)
    assert error.value.line_number == line_number
    assert f"line {line_number}" in str(error.value)


def test_parse_vertex_out_of_range() -> None:
    with pytest.raises(VertexRangeError) as error:
        parse_graph("3 1\n0 3\n")
    assert error.value.line_number == 2


def test_parse_deduplicate() -> None:
    graph = parse_graph("3 4\n0 1\n1 0\n1 1\n1 2\n", deduplicate=True)
    assert graph == P3


def test_parse_dimacs_shifts_ids() -> None:
    text = "c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
    graph = parse_graph(text, GraphFormat.DIMACS)
    assert graph.is_complete()
    assert sorted(graph.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_parse_dimacs_missing_header() -> None:
    with pytest.raises(GraphParseError):
        parse_graph("e 1 2\n", GraphFormat.DIMACS)


@pytest.mark.parametrize("text,line_number", MALFORMED_DIMACS_PARAMS)
def test_parse_dimacs_rejects_malformed(text: str, line_number: int) -> None:
    with pytest.raises(GraphParseError) as error:
        parse_graph(text, GraphFormat.DIMACS)
    assert error.value.line_number == line_number


@pytest.mark.parametrize("format", FORMAT_PARAMS)
@pytest.mark.parametrize("graph,kappa", KNOWN_KAPPA_PARAMS)
def test_serialize_parse_identity(graph: Graph, kappa: int, format: GraphFormat) -> None:
    text = serialize_graph(graph, format)
    assert parse_graph(text, format) == graph
    assert serialize_graph(parse_graph(text, format), format) == text


def test_graph_rejects_self_loops_and_duplicates() -> None:
    with pytest.raises(ArgumentError):
        Graph(2, [(0, 0)])
    with pytest.raises(ArgumentError):
        Graph(2, [(0, 1), (1, 0)])
    assert Graph(2, [(0, 1), (1, 0), (1, 1)], deduplicate=True).m == 1


def test_graph_symmetric_adjacency() -> None:
    for v in PETERSEN.vertices:
        for u in PETERSEN.neighbors(v):
            assert PETERSEN.has_edge(u, v)
    assert sum(PETERSEN.degree(v) for v in PETERSEN.vertices) == 2 * PETERSEN.m


def test_components_after_removal() -> None:
    assert BOWTIE.components() == [[0, 1, 2, 3, 4]]
    assert BOWTIE.components({2}) == [[0, 1], [3, 4]]


def test_neighborhood_excludes_the_set() -> None:
    assert BOWTIE.neighborhood([0, 1]) == frozenset({2})
    assert C4.neighborhood([0]) == frozenset({1, 3})


def test_subgraph_relabels() -> None:
    subgraph, originals = BOWTIE.subgraph([4, 2, 3])
    assert originals == [2, 3, 4]
    assert subgraph.is_complete()
    assert subgraph.n == 3


def test_networkx_round_trip() -> None:
    graph = Graph.from_networkx(PETERSEN.to_networkx())
    assert graph == PETERSEN
    assert nx.node_connectivity(PETERSEN.to_networkx()) == 3


@pytest.mark.parametrize("graph,separator,expected", SEPARATOR_PARAMS)
def test_is_separator(graph: Graph, separator: set[int], expected: bool) -> None:
    assert is_separator(graph, separator) is expected


@pytest.mark.parametrize(
    "graph,separator,left,right",
    [
        pytest.param(P3, {1}, {0}, {2}, id="p3"),
        pytest.param(BOWTIE, {2}, {0, 1}, {3, 4}, id="bowtie"),
        pytest.param(C4, {1, 3}, {0}, {2}, id="c4"),
    ],
)
def test_cut_from_separator(
    graph: Graph, separator: set[int], left: set[int], right: set[int]
) -> None:
    cut = cut_from_separator(graph, separator)
    assert cut.left == frozenset(left)
    assert cut.separator == frozenset(separator)
    assert cut.right == frozenset(right)
    assert cut.is_valid_for(graph)


def test_cut_from_separator_rejects_non_separators() -> None:
    with pytest.raises(NotASeparatorError):
        cut_from_separator(K4, {0, 1})


def test_vertex_cut_shape_violations_reported_together() -> None:
    with pytest.raises(ValidationError) as error:
        VertexCut(left=frozenset(), separator=frozenset({1}), right=frozenset({1}))
    message = str(error.value)
    assert "left side is empty" in message
    assert "separator/right overlap" in message


def test_vertex_cut_verify_against_graph() -> None:
    cut = VertexCut(left=frozenset({0}), separator=frozenset(), right=frozenset({1, 2}))
    problems = cut.violations(P3)
    assert len(problems) == 1
    with pytest.raises(NotASeparatorError):
        cut.verify(P3)

    partial = VertexCut(left=frozenset({0}), separator=frozenset({1}), right=frozenset({2}))
    assert len(partial.violations(C4)) == 1


@pytest.mark.parametrize(
    "graph,expected",
    [
        pytest.param(STAR3, (1, 1), id="star"),
        pytest.param(K4, (0, 3), id="k4"),
        pytest.param(P3, (0, 1), id="p3"),
    ],
)
def test_min_degree_vertex(graph: Graph, expected: tuple[int, int]) -> None:
    assert min_degree_vertex(graph) == expected


def test_terminal_set_sorted_and_checked() -> None:
    terminals = TerminalSet.of([4, 0, 2])
    assert terminals.members == (0, 2, 4)
    assert 2 in terminals
    assert len(terminals) == 3
    terminals.check_within(BOWTIE)
    with pytest.raises(VertexRangeError):
        TerminalSet.of([0, 5]).check_within(BOWTIE)
    with pytest.raises(ValidationError):
        TerminalSet.of([1, 1])
