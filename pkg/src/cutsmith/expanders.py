import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.sparse import csr_matrix, diags
from scipy.sparse.linalg import eigsh
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from cutsmith.exceptions import (
    ArgumentError,
    DisconnectedGraphError,
    InfeasibleExpanderError,
    SpectralCertificationError,
)
from cutsmith.graph import Graph
from cutsmith.settings import RECORDED_CONSTANTS
from cutsmith.utilities import ceil_log2

logger = logging.getLogger(__name__)


class CertifiedExpander(BaseModel):
    """
    A constructed expander with its measured spectral certificate.

    lambda2 is the second largest absolute eigenvalue of the random-walk matrix of
    the constructed graph, measured before any contraction. alpha and beta, when
    set, certify that every vertex set of at most alpha*n vertices has at least beta
    times its size in outside neighbors. exact marks certificates computed
    combinatorially on a complete graph rather than from lambda2.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: Graph
    lambda2: float
    degree: int
    source_order: int
    alpha: float | None = None
    beta: float | None = None
    exact: bool = False

    @property
    def min_degree(self) -> int:
        return min((self.graph.degree(v) for v in self.graph.vertices), default=0)

    @property
    def max_degree(self) -> int:
        return max((self.graph.degree(v) for v in self.graph.vertices), default=0)


def spectral_lambda2(
    graph: Graph,
    *,
    dense_limit: int = RECORDED_CONSTANTS.dense_spectrum_limit,
    tolerance: float = RECORDED_CONSTANTS.spectral_tolerance,
) -> float:
    """
    |lambda_2| of the random-walk matrix A D^-1: the largest absolute eigenvalue
    once the trivial eigenvalue 1 is removed. The similar symmetric matrix
    D^-1/2 A D^-1/2 is solved densely up to dense_limit vertices and with Lanczos
    iteration above. Every eigenpair used is certified by its residual.

    :raises DisconnectedGraphError: If the graph is disconnected.
    :raises SpectralCertificationError: If a residual exceeds the tolerance.
    """
    if graph.n < 2:
        raise ArgumentError(f"spectral_lambda2 needs at least 2 vertices, got {graph.n}")
    if not graph.is_connected():
        raise DisconnectedGraphError("spectral_lambda2 needs a connected graph")

    if graph.n <= dense_limit:
        return _dense_lambda2(graph, tolerance)
    return _sparse_lambda2(graph, tolerance)


def _normalized_adjacency(graph: Graph) -> csr_matrix:
    rows, cols = [], []
    for u, v in graph.edges():
        rows.extend((u, v))
        cols.extend((v, u))
    adjacency = csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(graph.n, graph.n), dtype=float
    )
    degrees = np.asarray(adjacency.sum(axis=1)).ravel()
    scale = diags(1.0 / np.sqrt(degrees))
    return (scale @ adjacency @ scale).tocsr()


def _certify(matrix: np.ndarray | csr_matrix, value: float, vector: np.ndarray, tolerance: float) -> None:
    vector = vector / np.linalg.norm(vector)
    residual = float(np.linalg.norm(matrix @ vector - value * vector))
    if residual > tolerance:
        raise SpectralCertificationError(
            f"eigenpair residual {residual:.3e} exceeds tolerance {tolerance:.1e}"
        )


def _dense_lambda2(graph: Graph, tolerance: float) -> float:
    matrix = _normalized_adjacency(graph).toarray()
    values, vectors = np.linalg.eigh(matrix)
    # eigh sorts ascending, the trivial eigenvalue 1 comes last
    rest = values[:-1]
    index = int(np.argmax(np.abs(rest)))
    _certify(matrix, float(rest[index]), vectors[:, index], tolerance)
    return float(abs(rest[index]))


def _sparse_lambda2(graph: Graph, tolerance: float) -> float:
    matrix = _normalized_adjacency(graph)
    degrees = np.array([graph.degree(v) for v in graph.vertices], dtype=float)
    trivial = np.sqrt(degrees)
    trivial /= np.linalg.norm(trivial)

    # a ramp deflated against the trivial eigenvector; the all-ones vector would be
    # the trivial eigenvector itself on regular graphs
    start = np.arange(1, graph.n + 1, dtype=float)
    start -= (start @ trivial) * trivial

    top_values, top_vectors = eigsh(matrix, k=2, which="LA", v0=start, tol=tolerance / 10)
    low_values, low_vectors = eigsh(matrix, k=1, which="SA", v0=start, tol=tolerance / 10)

    second = int(np.argmin(top_values))
    candidates = [
        (float(top_values[second]), top_vectors[:, second]),
        (float(low_values[0]), low_vectors[:, 0]),
    ]
    value, vector = max(candidates, key=lambda pair: abs(pair[0]))
    _certify(matrix, value, vector, math.sqrt(graph.n) * tolerance)
    return abs(value)


def circulant_offsets(n: int, d: int) -> list[int]:
    """
    ceil(d/2) distinct offsets in [1, n/2): the quadratic residues j^2 mod n folded
    to s and n - s, topped up with consecutive offsets when the residues run out.
    The offset n/2 is avoided so every vertex gets exactly 2*ceil(d/2) neighbors.
    """
    wanted = math.ceil(d / 2)
    limit = (n - 1) // 2
    if wanted > limit:
        raise ArgumentError(f"circulant on {n} vertices cannot have degree {d}")

    offsets: list[int] = []
    for j in range(1, n):
        s = j * j % n
        s = min(s, n - s)
        if s == 0 or 2 * s == n or s in offsets:
            continue
        offsets.append(s)
        if len(offsets) == wanted:
            return offsets

    s = 1
    while len(offsets) < wanted:
        if s not in offsets:
            offsets.append(s)
        s += 1
    return offsets


def circulant(n: int, offsets: list[int]) -> Graph:
    """
    The circulant graph on Z_n joining every v to v +- s for each offset s.
    """
    edges = {(min(v, (v + s) % n), max(v, (v + s) % n)) for v in range(n) for s in offsets}
    return Graph(n, sorted(edges), deduplicate=True)


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def _expander_graph(n: int, d: int) -> Graph:
    """
    The deterministic degree-d construction: K_n when n <= 2d, otherwise the
    quadratic-residue circulant.
    """
    if n <= 2 * d:
        return complete_graph(n)
    return circulant(n, circulant_offsets(n, d))


def build_mixing_graph(n: int, d: int) -> CertifiedExpander:
    """
    Near-d-regular graph on n vertices with its measured lambda2. Feed the result to
    mixing_threshold to decide which (L, R) pairs are certified to share an edge.
    """
    if d < 3:
        raise ArgumentError(f"mixing graph degree must be at least 3, got {d}")
    if n <= d:
        raise ArgumentError(f"mixing graph needs n > d, got n={n}, d={d}")

    graph = _expander_graph(n, d)
    lambda2 = spectral_lambda2(graph)
    logger.debug(f"Mixing graph n={n} d={d}: lambda2={lambda2:.6f}")
    return CertifiedExpander(
        graph=graph,
        lambda2=lambda2,
        degree=d,
        source_order=n,
        exact=graph.is_complete(),
    )


def mixing_threshold(expander: CertifiedExpander, left_size: int, right_size: int) -> bool:
    """
    True if every pair of disjoint sets of these sizes is certified to have an edge
    between them by the expander mixing lemma: |L|*|R| > (lambda2 * n * dmax/dmin)^2.
    """
    if left_size < 1 or right_size < 1:
        return False
    if expander.graph.is_complete():
        return True
    bound = expander.lambda2 * expander.graph.n * expander.max_degree / expander.min_degree
    return left_size * right_size > bound * bound


def spectral_vertex_expansion(lambda2: float, alpha: float) -> float:
    """
    Vertex expansion of small sets implied by lambda2 for a regular graph: every set
    of at most alpha*n vertices has at least 1/(alpha + (1 - alpha) lambda2^2) - 1
    times its size in outside neighbors.
    """
    return 1 / (alpha + (1 - alpha) * lambda2**2) - 1


def complete_vertex_expansion(n: int, alpha: float) -> float:
    """
    Exact vertex expansion of K_n over sets of at most alpha*n vertices.
    """
    largest = math.floor(alpha * n)
    if largest < 1:
        return math.inf
    return (n - largest) / largest


def next_prime(value: int) -> int:
    candidate = max(value, 2)
    while any(candidate % p == 0 for p in range(2, math.isqrt(candidate) + 1)):
        candidate += 1
    return candidate


class _Uncertified(Exception):
    def __init__(self, degree: int, alpha: float, beta: float):
        super().__init__(f"degree {degree} certifies beta={beta:.4f} at alpha={alpha:.4f}")
        self.alpha = alpha
        self.beta = beta


def _search_degree(
    attempt_degree: Callable[[int], CertifiedExpander],
    start_degree: int,
    *,
    max_degree: int | None,
    max_retries: int,
) -> CertifiedExpander:
    """
    Build with attempt_degree(d) for d = start, 2*start, ... until it stops raising
    _Uncertified. Exhausting retries or max_degree raises InfeasibleExpanderError
    carrying the best certificate achieved.
    """
    degree = start_degree
    achieved = (0.0, 0.0)
    result: CertifiedExpander | None = None
    try:
        for attempt in Retrying(
            stop=stop_after_attempt(max_retries),
            retry=retry_if_exception_type(_Uncertified),
        ):
            with attempt:
                if max_degree is not None and degree > max_degree:
                    raise InfeasibleExpanderError(
                        f"no construction up to degree {max_degree} is certified",
                        alpha=achieved[0],
                        beta=achieved[1],
                    )
                try:
                    result = attempt_degree(degree)
                except _Uncertified as e:
                    logger.debug(f"Expander search: {e}, doubling degree")
                    achieved = (e.alpha, e.beta)
                    degree *= 2
                    raise e

    except RetryError as e:
        raise InfeasibleExpanderError(
            f"no construction certified within {max_retries} attempts",
            alpha=achieved[0],
            beta=achieved[1],
        ) from e

    assert result is not None
    return result


def build_small_set_expander(
    n: int,
    eps: float,
    *,
    alpha_scale: float = 10,
    max_degree: int | None = None,
    max_retries: int | None = None,
) -> CertifiedExpander:
    """
    Graph on exactly n vertices in which every set of at most alpha*n vertices has
    at least 2/eps times its size in outside neighbors.

    A circulant on the next prime n' >= n is built with alpha' = eps/alpha_scale and
    its degree doubled until lambda2 certifies 4/eps expansion, or until it becomes
    complete and is certified exactly. Contracting n' down to n with rho = n'/n
    keeps an (alpha'/ceil(rho), beta' floor(rho)/ceil(rho)) certificate, at least
    2/eps since rho < 2.

    :raises InfeasibleExpanderError: If max_degree or the retries run out first.
    """
    if not 0 < eps <= 1:
        raise ArgumentError(f"eps must lie in (0, 1], got {eps}")
    if n < 2 / eps:
        raise ArgumentError(f"small-set expander needs n >= 2/eps, got n={n}")

    source = next_prime(n)
    alpha = eps / alpha_scale
    target = 4 / eps

    def attempt_degree(degree: int) -> CertifiedExpander:
        graph = _expander_graph(source, degree)
        lambda2 = spectral_lambda2(graph)
        if graph.is_complete():
            beta, exact = complete_vertex_expansion(source, alpha), True
        else:
            beta, exact = spectral_vertex_expansion(lambda2, alpha), False
        if beta < target:
            raise _Uncertified(degree, alpha, beta)
        return CertifiedExpander(
            graph=graph,
            lambda2=lambda2,
            degree=degree,
            source_order=source,
            alpha=alpha,
            beta=beta,
            exact=exact,
        )

    built = _search_degree(
        attempt_degree,
        3,
        max_degree=max_degree,
        max_retries=max_retries or ceil_log2(source) + 2,
    )

    low, high = source // n, -(-source // n)
    contracted = contract_to_size(built.graph, n)
    assert built.alpha is not None and built.beta is not None
    logger.debug(
        f"Small-set expander n={n} eps={eps}: source {source}, degree {built.degree}, "
        f"lambda2={built.lambda2:.6f}"
    )
    return built.model_copy(
        update={
            "graph": contracted,
            "alpha": built.alpha / high,
            "beta": built.beta * low / high,
        }
    )


def build_adaptive_mixing_graph(
    n: int,
    eps: float,
    alpha: float,
    *,
    max_degree: int | None = None,
    max_retries: int | None = None,
) -> CertifiedExpander:
    """
    Mixing graph whose lambda2 * dmax/dmin is at most alpha, so any two disjoint sets
    of more than alpha*n vertices each share an edge. The degree starts at
    ceil(1/eps^2) and doubles until certified; reaching K_n always certifies.
    """
    if n < 2:
        raise ArgumentError(f"mixing graph needs at least 2 vertices, got {n}")

    def attempt_degree(degree: int) -> CertifiedExpander:
        graph = _expander_graph(n, degree)
        lambda2 = spectral_lambda2(graph)
        degrees = [graph.degree(v) for v in graph.vertices]
        ratio = lambda2 * max(degrees) / min(degrees)
        if not graph.is_complete() and ratio > alpha:
            raise _Uncertified(degree, alpha, ratio)
        return CertifiedExpander(
            graph=graph,
            lambda2=lambda2,
            degree=degree,
            source_order=n,
            alpha=alpha,
            exact=graph.is_complete(),
        )

    return _search_degree(
        attempt_degree,
        max(3, math.ceil(1 / eps**2)),
        max_degree=max_degree,
        max_retries=max_retries or ceil_log2(n) + 2,
    )


def contract_to_size(graph: Graph, target: int) -> Graph:
    """
    Contract consecutive-id groups so exactly target vertices remain. With
    q, r = divmod(n, target) the first r groups have q+1 vertices and the rest q.
    Edge images are deduplicated and self-loops dropped.
    """
    if target < 1 or target > graph.n:
        raise ArgumentError(f"cannot contract {graph.n} vertices to {target}")

    size, extra = divmod(graph.n, target)
    group_of = []
    for group in range(target):
        group_of.extend([group] * (size + (group < extra)))

    return Graph(
        target,
        ((group_of[u], group_of[v]) for u, v in graph.edges()),
        deduplicate=True,
    )


def min_vertex_expansion(graph: Graph, max_size: int) -> Fraction | float:
    """
    Exact minimum of |N(L)| / |L| over all vertex sets with 1 <= |L| <= max_size,
    infinity when there are none.
    """
    best: Fraction | float = math.inf
    for size in range(1, min(max_size, graph.n) + 1):
        for subset in combinations(graph.vertices, size):
            ratio = Fraction(len(graph.neighborhood(subset)), size)
            if ratio < best:
                best = ratio
    return best
