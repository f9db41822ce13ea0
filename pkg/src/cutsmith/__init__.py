from .approx import ApproxConfig, ApproxResult, approx_vertex_mincut
from .exceptions import (
    ArgumentError,
    ConfigError,
    ContractViolationError,
    GraphParseError,
    InfeasibleExpanderError,
    InvariantViolationError,
    NoSeparatorExistsError,
    OracleLimitError,
)
from .expanders import (
    CertifiedExpander,
    build_small_set_expander,
    contract_to_size,
    spectral_lambda2,
)
from .flow import FlowLedger, kappa_pair, min_vertex_separator
from .graph import Graph, TerminalSet, VertexCut, parse_graph, serialize_graph
from .hashing import build_hm_family, build_terminal_family
from .isolating import isolating_vertex_cuts
from .oracles import brute_force_kappa, brute_force_steiner_kappa, kappa_baseline_allpairs
from .reduction import ReductionConfig, check_k_connectivity, reduce_terminal_slow
from .unbalanced import unbalanced

__all__ = [
    "ApproxConfig",
    "ApproxResult",
    "ArgumentError",
    "CertifiedExpander",
    "ConfigError",
    "ContractViolationError",
    "FlowLedger",
    "Graph",
    "GraphParseError",
    "InfeasibleExpanderError",
    "InvariantViolationError",
    "NoSeparatorExistsError",
    "OracleLimitError",
    "ReductionConfig",
    "TerminalSet",
    "VertexCut",
    "approx_vertex_mincut",
    "brute_force_kappa",
    "brute_force_steiner_kappa",
    "build_hm_family",
    "build_small_set_expander",
    "build_terminal_family",
    "check_k_connectivity",
    "contract_to_size",
    "isolating_vertex_cuts",
    "kappa_baseline_allpairs",
    "kappa_pair",
    "min_vertex_separator",
    "parse_graph",
    "reduce_terminal_slow",
    "serialize_graph",
    "spectral_lambda2",
    "unbalanced",
]
