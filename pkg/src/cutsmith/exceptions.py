from typing import Sequence


class CombinedException(Exception):
    """
    Exception used to aggregate multiple exceptions and raise them once.
    """

    def __init__(self, exceptions: Sequence[Exception]):
        self.exceptions = exceptions

    def __str__(self) -> str:
        return ", ".join(str(e) for e in self.exceptions)


class ArgumentError(ValueError):
    """
    Exception raised when an operation is called with parameters outside of its
    documented domain.
    """

    pass


class GraphParseError(Exception):
    """
    Exception raised when a graph file cannot be parsed. The offending line is kept
    on the exception.
    """

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number

    def __str__(self) -> str:
        if self.line_number is None:
            return self.args[0]
        return f"line {self.line_number}: {self.args[0]}"


class VertexRangeError(GraphParseError):
    """
    Exception raised when a vertex id falls outside of the declared vertex range.
    """

    pass


class NotASeparatorError(Exception):
    """
    Exception raised when a vertex set was expected to disconnect the graph but
    does not.
    """

    pass


class NoSeparatorExistsError(Exception):
    """
    Exception raised when a separator is requested between two vertex sets that are
    joined by an edge.
    """

    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"vertices {edge[0]} and {edge[1]} are adjacent")
        self.edge = edge


class NotIndependentError(ArgumentError):
    """
    Exception raised when a vertex set that must be independent contains an edge.
    """

    def __init__(self, edge: tuple[int, int]):
        super().__init__(f"set is not independent: edge {edge[0]}-{edge[1]}")
        self.edge = edge


class UndefinedExpansionError(Exception):
    """
    Exception raised when the terminal expansion of a cut is requested but one side
    of the cut holds no terminals.
    """

    pass


class ContractViolationError(Exception):
    """
    Exception raised when a caller breaks the precondition an operation relies on
    for its correctness.
    """

    pass


class DisconnectedGraphError(Exception):
    """
    Exception raised when an operation that needs a connected graph receives a
    disconnected one.
    """

    pass


class SpectralCertificationError(Exception):
    """
    Exception raised when an eigenpair fails its residual check.
    """

    pass


class InfeasibleExpanderError(Exception):
    """
    Exception raised when no construction within the allowed degree certifies the
    requested vertex expansion. The best certificate achieved is kept.
    """

    def __init__(self, message: str, alpha: float, beta: float):
        super().__init__(message)
        self.alpha = alpha
        self.beta = beta


class OracleLimitError(Exception):
    """
    Exception raised when a brute-force oracle is asked to enumerate a graph larger
    than its configured cap.
    """

    pass


class ConfigError(Exception):
    """
    Exception raised when a benchmark or algorithm configuration is invalid.
    """

    pass


class InvariantViolationError(Exception):
    """
    Exception raised when a produced result fails its own re-verification. This
    should never happen.
    """

    pass
