import csv
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Iterable, TextIO

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from cutsmith.approx import ApproxConfig, ApproxSeparator, approx_vertex_mincut
from cutsmith.enums import BenchAlgorithm
from cutsmith.exceptions import ConfigError
from cutsmith.flow import FlowLedger
from cutsmith.generators import GENERATORS, generate
from cutsmith.graph import Graph, TerminalSet
from cutsmith.oracles import brute_force_kappa, kappa_baseline_allpairs
from cutsmith.reduction import (
    CompleteGraph,
    Disconnected,
    ReductionConfig,
    Separator,
    check_k_connectivity,
)
from cutsmith.settings import RECORDED_CONSTANTS
from cutsmith.unbalanced import unbalanced
from cutsmith.utilities import ceil_log2

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "instance",
    "algo",
    "n",
    "m",
    "param",
    "result_size",
    "flow_calls",
    "instance_edges",
    "wall_ms",
)


class InstanceSpec(BaseModel):
    """
    A generator invocation, run once per seed. Unseeded generators ignore the seed
    but still produce one record per seed.
    """

    model_config = ConfigDict(frozen=True)

    generator: str
    params: dict[str, Any] = Field(default_factory=dict)
    seeds: list[int] = Field(default_factory=lambda: [0])
    id: str | None = None

    @model_validator(mode="after")
    def _known_generator(self) -> "InstanceSpec":
        if self.generator not in GENERATORS:
            raise ValueError(
                f"unknown generator '{self.generator}', expected one of {sorted(GENERATORS)}"
            )
        return self


class AlgorithmSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: BenchAlgorithm
    k: int | None = Field(default=None, ge=1)
    eps: float | None = Field(default=None, gt=0, le=1)
    beta: int | None = Field(default=None, ge=2)
    reduction: ReductionConfig | None = None
    approx: ApproxConfig | None = None

    @model_validator(mode="after")
    def _has_parameter(self) -> "AlgorithmSpec":
        required = {
            BenchAlgorithm.CHECK_K: "k",
            BenchAlgorithm.APPROX: "eps",
            BenchAlgorithm.UNBALANCED: "beta",
        }.get(self.name)
        if required is not None and getattr(self, required) is None:
            raise ValueError(f"algorithm '{self.name}' needs '{required}'")
        return self

    @property
    def param(self) -> float | int | None:
        if self.name == BenchAlgorithm.CHECK_K:
            return self.k
        if self.name == BenchAlgorithm.APPROX:
            return self.eps
        if self.name == BenchAlgorithm.UNBALANCED:
            return self.beta
        return None


class BenchConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: int = SCHEMA_VERSION
    instances: list[InstanceSpec] = Field(default_factory=list)
    algorithms: list[AlgorithmSpec] = Field(default_factory=list)
    threads: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _supported_schema(self) -> "BenchConfig":
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(
                f"schema_version {self.schema_version} is not supported, "
                f"expected {SCHEMA_VERSION}"
            )
        return self


class BenchRecord(BaseModel):
    """
    One algorithm run on one generated instance. flow_bound is the ledger bound
    checked for the algorithm, on flow calls for approx and on total instance
    edges otherwise; None where no bound applies.
    """

    model_config = ConfigDict(frozen=True)

    schema_version: int = SCHEMA_VERSION
    instance: str
    generator: str
    seed: int
    algo: BenchAlgorithm
    n: int
    m: int
    param: float | int | None
    result_size: int | None
    flow_calls: int
    instance_edges: int
    wall_ms: float
    flow_bound: float | None = None
    within_bound: bool | None = None


def load_bench_config(text: str) -> BenchConfig:
    """
    Parse a JSON benchmark configuration.

    :param text: The JSON document.
    :return: The validated configuration.
    :raises json.JSONDecodeError: If the text is not JSON.
    :raises ConfigError: If the JSON does not describe a valid configuration.
    """
    data = json.loads(text)
    try:
        return BenchConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid bench config: {e}") from e


def flow_bound(algorithm: AlgorithmSpec, n: int, m: int) -> float | None:
    """
    The recorded ledger bound for an algorithm on an instance with n vertices and m
    edges.
    """
    constants = RECORDED_CONSTANTS
    log_n = max(ceil_log2(max(n, 2)), 1)
    if algorithm.name == BenchAlgorithm.CHECK_K:
        assert algorithm.k is not None
        return (
            constants.check_k_c
            * m
            * algorithm.k**2
            * log_n**constants.check_k_polylog_exponent
        )
    if algorithm.name == BenchAlgorithm.UNBALANCED:
        assert algorithm.beta is not None
        return constants.unbalanced_c * m * algorithm.beta**2 * log_n**5
    if algorithm.name == BenchAlgorithm.APPROX:
        assert algorithm.eps is not None
        return constants.approx_calls_c * n / algorithm.eps**2
    return None


def _run_algorithm(graph: Graph, algorithm: AlgorithmSpec, ledger: FlowLedger) -> int | None:
    """
    Run one algorithm and return the size of what it found: a separator size, or
    kappa for the oracles. None when check-k certifies k-connectivity or the
    unbalanced sweep finds nothing.
    """
    if algorithm.name == BenchAlgorithm.CHECK_K:
        assert algorithm.k is not None
        result = check_k_connectivity(graph, algorithm.k, algorithm.reduction, ledger=ledger)
        outcome = result.outcome
        if isinstance(outcome, CompleteGraph):
            return outcome.kappa
        if isinstance(outcome, (Separator, Disconnected)):
            return len(outcome.separator)
        return None

    if algorithm.name == BenchAlgorithm.APPROX:
        assert algorithm.eps is not None
        approx = approx_vertex_mincut(graph, algorithm.eps, algorithm.approx, ledger=ledger)
        if isinstance(approx.outcome, CompleteGraph):
            return approx.outcome.kappa
        if isinstance(approx.outcome, ApproxSeparator):
            return len(approx.outcome.separator)
        return 0

    if algorithm.name == BenchAlgorithm.UNBALANCED:
        assert algorithm.beta is not None
        found = unbalanced(
            graph, TerminalSet.all_vertices(graph), algorithm.beta, ledger=ledger
        )
        return None if found.separator is None else len(found.separator)

    if algorithm.name == BenchAlgorithm.KAPPA_ALLPAIRS:
        return kappa_baseline_allpairs(graph, ledger=ledger)

    kappa, _ = brute_force_kappa(graph)
    return kappa


def _run_instance(
    instance_id: str,
    spec: InstanceSpec,
    seed: int,
    algorithms: list[AlgorithmSpec],
) -> list[BenchRecord]:
    graph = generate(spec.generator, spec.params, seed)
    records = []
    for algorithm in algorithms:
        ledger = FlowLedger()
        start = time.perf_counter()
        result_size = _run_algorithm(graph, algorithm, ledger)
        wall_ms = (time.perf_counter() - start) * 1000

        bound = flow_bound(algorithm, graph.n, graph.m)
        measured = (
            ledger.calls
            if algorithm.name == BenchAlgorithm.APPROX
            else ledger.total_instance_edges
        )
        records.append(
            BenchRecord(
                instance=instance_id,
                generator=spec.generator,
                seed=seed,
                algo=algorithm.name,
                n=graph.n,
                m=graph.m,
                param=algorithm.param,
                result_size=result_size,
                flow_calls=ledger.calls,
                instance_edges=ledger.total_instance_edges,
                wall_ms=wall_ms,
                flow_bound=bound,
                within_bound=None if bound is None else measured <= bound,
            )
        )
        logger.debug(
            f"{instance_id} seed={seed} {algorithm.name}: size={result_size} "
            f"calls={ledger.calls} edges={ledger.total_instance_edges}"
        )
    return records


def run_benchmark(config: BenchConfig) -> list[BenchRecord]:
    """
    Run every algorithm on every (instance, seed). Instances run concurrently on
    config.threads workers, each with its own graph and ledgers. Records come back
    in configuration order: by instance, then seed, then algorithm.

    :raises ConfigError: If an instance names an unknown generator or bad parameters.
    """
    if not config.algorithms:
        return []

    tasks = [
        (spec.id or f"{spec.generator}-{index}", spec, seed)
        for index, spec in enumerate(config.instances)
        for seed in spec.seeds
    ]

    def run(task: tuple[str, InstanceSpec, int]) -> list[BenchRecord]:
        instance_id, spec, seed = task
        return _run_instance(instance_id, spec, seed, config.algorithms)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            batches = list(executor.map(run, tasks))
    else:
        batches = [run(task) for task in tasks]

    return [record for batch in batches for record in batch]


def write_jsonl(records: Iterable[BenchRecord], stream: TextIO) -> None:
    for record in records:
        stream.write(record.model_dump_json() + "\n")


def write_csv(records: Iterable[BenchRecord], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, extrasaction="ignore")
    writer.writeheader()
    for record in records:
        writer.writerow(record.model_dump(mode="json"))
