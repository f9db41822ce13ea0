import logging
from collections import deque
from typing import Iterable, Iterator

import networkx as nx
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from cutsmith.enums import GraphFormat
from cutsmith.exceptions import (
    ArgumentError,
    CombinedException,
    GraphParseError,
    NotASeparatorError,
    VertexRangeError,
)
from cutsmith.utilities import content_lines, decode_text

logger = logging.getLogger(__name__)

DIMACS_COMMENT_PATTERNS = (r"#.*$", r"^\s*c(\s.*)?$")


class Graph:
    """
    Simple undirected graph on the dense vertex ids 0..n-1.

    Adjacency is kept twice: as sorted tuples for deterministic iteration and as
    frozensets for membership queries. A Graph never changes after construction and
    can be shared between threads.
    """

    __slots__ = ("_n", "_m", "_adjacency", "_neighbor_sets")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        *,
        deduplicate: bool = False,
    ) -> None:
        """
        :param n: Number of vertices.
        :param edges: Undirected edges as (u, v) pairs.
        :param deduplicate: If True, silently drop self-loops and repeated edges. If
                            False, either one raises an ArgumentError.
        """
        if n < 0:
            raise ArgumentError(f"vertex count must be non-negative, got {n}")

        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge {u}-{v} outside of vertex range [0, {n})")
            if u == v:
                if deduplicate:
                    continue
                raise ArgumentError(f"self-loop on vertex {u}")
            if v in neighbor_sets[u]:
                if deduplicate:
                    continue
                raise ArgumentError(f"duplicate edge {u}-{v}")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
            m += 1

        self._n = n
        self._m = m
        self._adjacency = tuple(tuple(sorted(s)) for s in neighbor_sets)
        self._neighbor_sets = tuple(frozenset(s) for s in neighbor_sets)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._neighbor_sets[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """
        Iterate over the edges once each as (u, v) with u < v, in lexicographic
        order.
        """
        for u, neighbors in enumerate(self._adjacency):
            for v in neighbors:
                if u < v:
                    yield u, v

    def is_complete(self) -> bool:
        return self._m == self._n * (self._n - 1) // 2

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """
        Connected components of the graph after deleting the removed vertices.

        :param removed: Vertices to delete before searching.
        :return: Sorted components, ordered by their smallest vertex.
        """
        seen = [False] * self._n
        for v in removed:
            seen[v] = True

        components = []
        for start in range(self._n):
            if seen[start]:
                continue
            seen[start] = True
            component = [start]
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self._adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        component.append(w)
                        queue.append(w)
            components.append(sorted(component))

        return components

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    def neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """
        N(X): vertices outside of X adjacent to some vertex of X.
        """
        inside = set(vertices)
        result: set[int] = set()
        for v in inside:
            result.update(self._adjacency[v])
        return frozenset(result - inside)

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """
        Induced subgraph on the given vertices, relabelled to 0..len-1 in ascending
        original order.

        :return: The subgraph and the list mapping new ids to original ids.
        """
        originals = sorted(set(vertices))
        local = {v: i for i, v in enumerate(originals)}
        edges = [
            (local[u], local[v])
            for u in originals
            for v in self._adjacency[u]
            if u < v and v in local
        ]
        return Graph(len(originals), edges), originals

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self.edges())
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """
        Build a Graph from a networkx graph. Nodes are relabelled to 0..n-1 in sorted
        node order.
        """
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls(
            len(nodes),
            ((index[u], index[v]) for u, v in graph.edges()),
            deduplicate=True,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adjacency == other._adjacency

    def __hash__(self) -> int:
        return hash((self._n, self._adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


class TerminalSet(BaseModel):
    """
    A set of terminal vertices, kept sorted. Steiner connectivity of a terminal set
    with at most one member is n-1 by convention.
    """

    model_config = ConfigDict(frozen=True)

    members: tuple[int, ...] = ()

    @field_validator("members")
    @classmethod
    def _sorted_unique(cls, members: tuple[int, ...]) -> tuple[int, ...]:
        if any(v < 0 for v in members):
            raise ValueError("terminal ids must be non-negative")
        if len(set(members)) != len(members):
            raise ValueError("terminal ids must be unique")
        return tuple(sorted(members))

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "TerminalSet":
        return cls(members=tuple(vertices))

    @classmethod
    def all_vertices(cls, graph: Graph) -> "TerminalSet":
        return cls(members=tuple(graph.vertices))

    def check_within(self, graph: Graph) -> None:
        """
        Raise a VertexRangeError if any terminal is not a vertex of the graph.
        """
        outside = [v for v in self.members if v >= graph.n]
        if outside:
            raise VertexRangeError(
                f"terminals {outside} outside of vertex range [0, {graph.n})"
            )

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.members


class VertexCut(BaseModel):
    """
    A vertex cut (L, S, R): a partition of the vertices with no edge between L and
    R. Both outer sides are non-empty.
    """

    model_config = ConfigDict(frozen=True)

    left: frozenset[int]
    separator: frozenset[int]
    right: frozenset[int]

    @model_validator(mode="after")
    def _check_shape(self) -> "VertexCut":
        problems = []
        if not self.left:
            problems.append(ValueError("left side is empty"))
        if not self.right:
            problems.append(ValueError("right side is empty"))
        for name, a, b in (
            ("left/separator", self.left, self.separator),
            ("left/right", self.left, self.right),
            ("separator/right", self.separator, self.right),
        ):
            if a & b:
                problems.append(ValueError(f"{name} overlap on {sorted(a & b)}"))

        if problems:
            raise ValueError(str(CombinedException(problems)))

        return self

    def violations(self, graph: Graph) -> list[Exception]:
        """
        Check the cut against the graph it claims to cut.

        :return: Every violation found, empty if the cut is valid.
        """
        problems: list[Exception] = []
        covered = self.left | self.separator | self.right
        if covered != frozenset(graph.vertices):
            problems.append(
                ValueError(
                    f"sides cover {len(covered)} vertices, graph has {graph.n}"
                )
            )
        for u in self.left:
            if u >= graph.n:
                continue
            crossing = graph.neighbor_set(u) & self.right
            if crossing:
                problems.append(
                    ValueError(f"edge {u}-{min(crossing)} joins left and right")
                )
                break
        return problems

    def verify(self, graph: Graph) -> None:
        """
        Raise a NotASeparatorError carrying every violation if the cut is not valid
        for the graph.
        """
        problems = self.violations(graph)
        if problems:
            raise NotASeparatorError(str(CombinedException(problems)))

    def is_valid_for(self, graph: Graph) -> bool:
        return not self.violations(graph)


def parse_graph(
    text: str | bytes,
    format: GraphFormat = GraphFormat.EDGE_LIST,
    *,
    deduplicate: bool = False,
) -> Graph:
    """
    Parse a graph from an edge list or a DIMACS file.

    Edge list: a header line "n m" followed by m lines "u v" with 0-based ids.
    DIMACS: a "p edge n m" header and "e u v" lines with 1-based ids, which are
    shifted to 0-based on ingestion.

    :param text: File contents.
    :param format: The format of the contents.
    :param deduplicate: Drop self-loops and repeated edges instead of rejecting them.
    :return: The parsed graph.
    """
    text = decode_text(text)

    if format == GraphFormat.DIMACS:
        n, declared, edges = _read_dimacs(text)
    else:
        n, declared, edges = _read_edge_list(text)

    header_line, m = declared
    if len(edges) != m:
        raise GraphParseError(
            f"header declares {m} edges, found {len(edges)}", header_line
        )

    seen: set[tuple[int, int]] = set()
    kept = []
    for line_number, u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(
                f"edge {u}-{v} outside of vertex range [0, {n})", line_number
            )
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            if deduplicate:
                continue
            problem = f"self-loop on vertex {u}" if u == v else f"duplicate edge {u}-{v}"
            raise GraphParseError(problem, line_number)
        seen.add(key)
        kept.append(key)

    logger.debug(f"Parsed {format} graph with n={n}, m={len(kept)}")

    return Graph(n, kept)


def _int_tokens(tokens: list[str], line_number: int) -> list[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError as e:
        raise GraphParseError(f"non-integer token in {tokens}", line_number) from e


def _read_edge_list(
    text: str,
) -> tuple[int, tuple[int, int], list[tuple[int, int, int]]]:
    lines = content_lines(text)
    header = next(lines, None)
    if header is None:
        raise GraphParseError("missing 'n m' header")

    header_line, tokens = header
    values = _int_tokens(tokens, header_line)
    if len(values) != 2 or min(values) < 0:
        raise GraphParseError("header must be 'n m'", header_line)
    n, m = values

    edges = []
    for line_number, tokens in lines:
        values = _int_tokens(tokens, line_number)
        if len(values) != 2:
            raise GraphParseError("edge line must be 'u v'", line_number)
        edges.append((line_number, values[0], values[1]))

    return n, (header_line, m), edges


def _read_dimacs(
    text: str,
) -> tuple[int, tuple[int, int], list[tuple[int, int, int]]]:
    n: int | None = None
    declared = (0, 0)
    edges = []
    for line_number, tokens in content_lines(text, DIMACS_COMMENT_PATTERNS):
        kind = tokens[0]
        if kind == "p":
            if n is not None or len(tokens) != 4 or tokens[1] != "edge":
                raise GraphParseError("expected a single 'p edge n m' line", line_number)
            n, m = _int_tokens(tokens[2:], line_number)
            if min(n, m) < 0:
                raise GraphParseError("header counts must be non-negative", line_number)
            declared = (line_number, m)
        elif kind == "e":
            if n is None:
                raise GraphParseError("edge before 'p' header", line_number)
            values = _int_tokens(tokens[1:], line_number)
            if len(values) != 2:
                raise GraphParseError("edge line must be 'e u v'", line_number)
            edges.append((line_number, values[0] - 1, values[1] - 1))
        else:
            raise GraphParseError(f"unknown line type '{kind}'", line_number)

    if n is None:
        raise GraphParseError("missing 'p edge n m' header")

    return n, declared, edges


def serialize_graph(graph: Graph, format: GraphFormat = GraphFormat.EDGE_LIST) -> str:
    """
    Write a graph in canonical form: header, then edges (u < v) in lexicographic
    order.
    """
    if format == GraphFormat.DIMACS:
        lines = [f"p edge {graph.n} {graph.m}"]
        lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    else:
        lines = [f"{graph.n} {graph.m}"]
        lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def is_separator(graph: Graph, separator: Iterable[int]) -> bool:
    """
    True iff G - S has at least two vertices and is disconnected.
    """
    removed = set(separator)
    if graph.n - len(removed) < 2:
        return False
    return len(graph.components(removed)) >= 2


def cut_from_separator(graph: Graph, separator: Iterable[int]) -> VertexCut:
    """
    Canonicalize a separator into a cut: L is the component of G - S holding the
    smallest remaining vertex, R is everything else outside of S.

    :raises NotASeparatorError: If S does not disconnect the graph.
    """
    removed = frozenset(separator)
    components = graph.components(removed)
    if graph.n - len(removed) < 2 or len(components) < 2:
        raise NotASeparatorError(f"{sorted(removed)} does not disconnect the graph")

    left = frozenset(components[0])
    right = frozenset(v for component in components[1:] for v in component)
    return VertexCut(left=left, separator=removed, right=right)


def min_degree_vertex(graph: Graph) -> tuple[int, int]:
    """
    The vertex of minimum degree, ties broken by the smallest id.

    :return: (vertex, degree)
    """
    if graph.n < 1:
        raise ArgumentError("graph has no vertices")
    vertex = min(graph.vertices, key=lambda v: (graph.degree(v), v))
    return vertex, graph.degree(vertex)
