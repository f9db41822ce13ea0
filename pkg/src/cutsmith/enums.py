from enum import Enum


# Use subclassing of str and Enum instead of StrEnum to allow Python 3.10
# support
class GraphFormat(str, Enum):
    EDGE_LIST = "edgelist"
    DIMACS = "dimacs"

    def __str__(self) -> str:
        return str.__str__(self)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    def __str__(self) -> str:
        return str.__str__(self)


class FamilyMode(str, Enum):
    ALL_PAIRS = "all_pairs"
    HASH_PREIMAGES = "hash_preimages"

    def __str__(self) -> str:
        return str.__str__(self)


class IsolationMode(str, Enum):
    BINARY = "binary"
    NAIVE = "naive"

    def __str__(self) -> str:
        return str.__str__(self)


class FinderKind(str, Enum):
    AUTO = "auto"
    BRUTE = "brute"
    HEURISTIC = "heuristic"

    def __str__(self) -> str:
        return str.__str__(self)


class BaseCaseStrategy(str, Enum):
    ANCHORED = "anchored"
    ALL_PAIRS = "all_pairs"

    def __str__(self) -> str:
        return str.__str__(self)


class BenchAlgorithm(str, Enum):
    CHECK_K = "check-k"
    APPROX = "approx"
    KAPPA_ALLPAIRS = "kappa-allpairs"
    KAPPA_EXACT = "kappa-exact"
    UNBALANCED = "unbalanced"

    def __str__(self) -> str:
        return str.__str__(self)
