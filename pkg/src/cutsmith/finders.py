import logging
from collections import deque
from fractions import Fraction
from typing import Iterable, Protocol

import numpy as np

from cutsmith.enums import FinderKind
from cutsmith.exceptions import ArgumentError, OracleLimitError
from cutsmith.graph import Graph, TerminalSet, VertexCut
from cutsmith.settings import RECORDED_CONSTANTS

logger = logging.getLogger(__name__)

# popcount of every byte value
_BYTE_BITS = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


class SparseCutFinder(Protocol):
    """
    Finds a terminal-sparse vertex cut or reports that none was found.

    find(G, T, threshold) returns a cut whose terminal expansion is below threshold,
    or None meaning "expander at this threshold". A finder with certifies = True only
    answers None when no cut with S = N(L) is sparse.
    """

    certifies: bool

    def find(
        self, graph: Graph, terminals: TerminalSet, threshold: float | Fraction
    ) -> VertexCut | None:
        ...


def _popcount(values: np.ndarray) -> np.ndarray:
    as_bytes = values.astype(np.int64).view(np.uint8).reshape(-1, 8)
    return _BYTE_BITS[as_bytes].sum(axis=1)


class BruteSparse:
    """
    Exact finder for small graphs. Every non-empty L is enumerated as a bitmask with
    S = N(L) and R the rest; every inclusion-minimal separator has this form. The
    cut of minimum terminal expansion is returned, ties going to the larger
    terminal count on the smaller side and then to the smallest mask.
    """

    certifies = True

    def __init__(self, limit: int = RECORDED_CONSTANTS.brute_sparse_cap):
        self.limit = limit

    def find(
        self, graph: Graph, terminals: TerminalSet, threshold: float | Fraction
    ) -> VertexCut | None:
        best = self.sparsest(graph, terminals)
        if best is None:
            return None
        cut, expansion = best
        return cut if expansion < threshold else None

    def sparsest(
        self, graph: Graph, terminals: TerminalSet
    ) -> tuple[VertexCut, Fraction] | None:
        """
        The sparsest cut with S = N(L) and terminals on both sides, or None if the
        graph has no such cut.
        """
        n = graph.n
        if n > self.limit:
            raise OracleLimitError(f"exhaustive sparse cut needs n <= {self.limit}, got {n}")
        full = (1 << n) - 1
        adjacency = np.array(
            [sum(1 << w for w in graph.neighbors(v)) for v in graph.vertices],
            dtype=np.int64,
        )
        # reach[mask] is the union of the neighborhoods of the vertices in mask
        reach = np.zeros(1 << n, dtype=np.int64)
        for i in range(n):
            block = 1 << i
            reach[block : 2 * block] = reach[:block] | adjacency[i]

        masks = np.arange(1 << n, dtype=np.int64)
        separator = reach & ~masks
        right = full & ~(masks | separator)
        terminal_mask = sum(1 << v for v in terminals.members)

        separator_size = _popcount(separator)
        left_terminals = _popcount((masks | separator) & terminal_mask)
        right_terminals = _popcount((right | separator) & terminal_mask)
        smaller = np.minimum(left_terminals, right_terminals)

        valid = (masks != 0) & (right != 0) & (smaller > 0)
        if not valid.any():
            return None

        candidates = np.flatnonzero(valid)
        ratio = separator_size[candidates] / smaller[candidates]
        order = np.lexsort((candidates, -smaller[candidates], ratio))
        chosen = int(candidates[order[0]])

        cut = VertexCut(
            left=frozenset(_bits(chosen, n)),
            separator=frozenset(_bits(int(separator[chosen]), n)),
            right=frozenset(_bits(int(right[chosen]), n)),
        )
        return cut, Fraction(int(separator_size[chosen]), int(smaller[chosen]))


def _bits(mask: int, n: int) -> Iterable[int]:
    return (v for v in range(n) if mask >> v & 1)


class HeuristicSparse:
    """
    Sweep-cut finder for graphs too large to enumerate. Vertices are ordered by
    breadth-first search from a few seeds and by the Fiedler vector of the
    normalized Laplacian; every prefix L of an order gives the cut (L, N(L), rest).
    A None answer certifies nothing.
    """

    certifies = False

    def __init__(self, dense_limit: int = RECORDED_CONSTANTS.dense_spectrum_limit):
        self.dense_limit = dense_limit

    def find(
        self, graph: Graph, terminals: TerminalSet, threshold: float | Fraction
    ) -> VertexCut | None:
        best: tuple[Fraction, int, VertexCut] | None = None
        for order in self.orders(graph, terminals):
            found = _sweep(graph, terminals, order)
            if found is None:
                continue
            expansion, smaller, cut = found
            if best is None or (expansion, -smaller) < (best[0], -best[1]):
                best = found

        if best is None or not best[0] < threshold:
            return None
        logger.debug(f"Heuristic sweep found a cut of terminal expansion {best[0]}")
        return best[2]

    def orders(self, graph: Graph, terminals: TerminalSet) -> list[list[int]]:
        seeds = {0} if graph.n else set()
        if terminals.members:
            seeds.add(terminals.members[0])
        if graph.n:
            seeds.add(min(graph.vertices, key=lambda v: (graph.degree(v), v)))
            seeds.add(max(graph.vertices, key=lambda v: (graph.degree(v), -v)))

        orders = [_bfs_order(graph, seed) for seed in sorted(seeds)]
        if 2 < graph.n <= self.dense_limit:
            fiedler = _fiedler_vector(graph)
            ascending = sorted(graph.vertices, key=lambda v: (fiedler[v], v))
            orders.extend([ascending, ascending[::-1]])
        return orders


def _bfs_order(graph: Graph, seed: int) -> list[int]:
    seen = [False] * graph.n
    order = []
    for start in [seed, *graph.vertices]:
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in graph.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def _fiedler_vector(graph: Graph) -> np.ndarray:
    degrees = np.array([max(graph.degree(v), 1) for v in graph.vertices], dtype=float)
    adjacency = np.zeros((graph.n, graph.n))
    for u, v in graph.edges():
        adjacency[u, v] = adjacency[v, u] = 1.0
    scale = 1.0 / np.sqrt(degrees)
    laplacian = np.eye(graph.n) - scale[:, None] * adjacency * scale[None, :]
    _, vectors = np.linalg.eigh(laplacian)
    return vectors[:, 1] * scale


def _sweep(
    graph: Graph, terminals: TerminalSet, order: list[int]
) -> tuple[Fraction, int, VertexCut] | None:
    members = set(terminals.members)
    total = len(members)
    left: set[int] = set()
    separator: set[int] = set()
    left_terminals = separator_terminals = 0

    best: tuple[Fraction, int, int] | None = None
    for index, v in enumerate(order[:-1]):
        left.add(v)
        if v in separator:
            separator.discard(v)
            separator_terminals -= v in members
        left_terminals += v in members
        for w in graph.neighbors(v):
            if w not in left and w not in separator:
                separator.add(w)
                separator_terminals += w in members

        if len(left) + len(separator) == graph.n:
            continue
        right_side = total - left_terminals
        smaller = min(left_terminals + separator_terminals, right_side)
        if smaller == 0:
            continue
        expansion = Fraction(len(separator), smaller)
        if best is None or (expansion, -smaller) < (best[0], -best[1]):
            best = (expansion, smaller, index)

    if best is None:
        return None

    prefix = frozenset(order[: best[2] + 1])
    boundary = graph.neighborhood(prefix)
    cut = VertexCut(
        left=prefix,
        separator=boundary,
        right=frozenset(graph.vertices) - prefix - boundary,
    )
    return best[0], best[1], cut


def make_finder(kind: FinderKind, n: int, brute_limit: int) -> SparseCutFinder:
    """
    The finder for a graph of n vertices. AUTO picks the exact finder up to
    brute_limit vertices.
    """
    if kind == FinderKind.BRUTE:
        return BruteSparse(brute_limit)
    if kind == FinderKind.HEURISTIC:
        return HeuristicSparse()
    if kind == FinderKind.AUTO:
        return BruteSparse(brute_limit) if n <= brute_limit else HeuristicSparse()
    raise ArgumentError(f"unknown finder {kind}")
