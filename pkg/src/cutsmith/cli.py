import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, NoReturn, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from cutsmith.approx import ApproxConfig, ApproxSeparator, approx_vertex_mincut
from cutsmith.bench import load_bench_config, run_benchmark, write_csv, write_jsonl
from cutsmith.enums import FinderKind, GraphFormat
from cutsmith.exceptions import (
    ArgumentError,
    ConfigError,
    GraphParseError,
    InvariantViolationError,
    OracleLimitError,
    VertexRangeError,
)
from cutsmith.flow import FlowLedger, LedgerSnapshot
from cutsmith.generators import generate
from cutsmith.graph import (
    Graph,
    TerminalSet,
    cut_from_separator,
    is_separator,
    parse_graph,
    serialize_graph,
)
from cutsmith.oracles import allpairs_min_separator, brute_force_kappa
from cutsmith.reduction import (
    CompleteGraph,
    Disconnected,
    NewTerminals,
    ReductionConfig,
    Separator,
    check_k_connectivity,
    reduce_terminal_slow,
    steiner_separator_below,
)
from cutsmith.rendering import Renderer
from cutsmith.utilities import parse_terminal_file

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INVARIANT = 3


class CliResult(BaseModel):
    """
    What a command reports. separator, left, right and terminals are sorted vertex
    id lists.
    """

    model_config = ConfigDict(frozen=True)

    command: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    outcome: str
    message: str | None = None
    kappa: int | None = None
    separator: list[int] | None = None
    left: list[int] | None = None
    right: list[int] | None = None
    terminals: list[int] | None = None
    fallback_fired: bool | None = None
    records: int | None = None
    ledger: LedgerSnapshot | None = None
    exit_code: int = EXIT_OK


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage exit code on bad arguments."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_graph(args: argparse.Namespace) -> Graph:
    return parse_graph(Path(args.graph).read_bytes(), args.format)


def _verified(graph: Graph, separator: frozenset[int]) -> list[int]:
    """
    The separator as a sorted list, after checking that it separates the graph.
    """
    if not is_separator(graph, separator):
        raise InvariantViolationError(
            f"refusing to report {sorted(separator)}: it does not separate the graph"
        )
    return sorted(separator)


def _with_sides(graph: Graph, separator: frozenset[int]) -> dict[str, list[int]]:
    verified = _verified(graph, separator)
    cut = cut_from_separator(graph, separator)
    return {
        "separator": verified,
        "left": sorted(cut.left),
        "right": sorted(cut.right),
    }


def _reduction_config(args: argparse.Namespace) -> ReductionConfig:
    return ReductionConfig(
        phi=args.phi,
        phi_bar=args.phibar,
        finder=args.finder,
        threads=args.threads or 1,
    )


def cmd_kappa(args: argparse.Namespace) -> CliResult:
    """
    Exact vertex connectivity by the brute-force oracle (--exact) or by all-pairs
    flows (--allpairs, the default).
    """
    graph = _read_graph(args)
    if graph.n < 2:
        raise ArgumentError(f"kappa needs at least 2 vertices, got {graph.n}")

    if args.exact:
        kappa, cut = brute_force_kappa(graph)
        separator = None if cut is None else cut.separator
        ledger = None
    else:
        flow_ledger = FlowLedger()
        separator = allpairs_min_separator(graph, ledger=flow_ledger)
        kappa = graph.n - 1 if separator is None else len(separator)
        ledger = flow_ledger.snapshot()

    if separator is None:
        return CliResult(
            command="kappa",
            outcome="complete_graph",
            message=f"complete graph, kappa={kappa}",
            kappa=kappa,
            ledger=ledger,
        )
    return CliResult(
        command="kappa",
        outcome="kappa",
        kappa=kappa,
        ledger=ledger,
        **_with_sides(graph, separator),
    )


def cmd_check_k(args: argparse.Namespace) -> CliResult:
    graph = _read_graph(args)
    result = check_k_connectivity(graph, args.k, _reduction_config(args))
    outcome = result.outcome

    if isinstance(outcome, (Separator, Disconnected)):
        return CliResult(
            command="check-k",
            outcome=outcome.kind,
            ledger=result.ledger,
            **_with_sides(graph, outcome.separator),
        )
    if isinstance(outcome, CompleteGraph):
        return CliResult(
            command="check-k",
            outcome=outcome.kind,
            message=f"complete graph, kappa={outcome.kappa} < k={args.k}",
            kappa=outcome.kappa,
            ledger=result.ledger,
        )
    return CliResult(
        command="check-k",
        outcome=outcome.kind,
        message=f"{args.k}-connected",
        ledger=result.ledger,
    )


def cmd_approx(args: argparse.Namespace) -> CliResult:
    graph = _read_graph(args)
    result = approx_vertex_mincut(graph, args.eps, ApproxConfig(threads=args.threads or 1))
    outcome = result.outcome

    if isinstance(outcome, CompleteGraph):
        return CliResult(
            command="approx",
            outcome=outcome.kind,
            message=f"complete graph, kappa={outcome.kappa}",
            kappa=outcome.kappa,
            ledger=result.ledger,
        )
    message = (
        "neighborhood of a minimum-degree vertex"
        if isinstance(outcome, ApproxSeparator) and outcome.via == "min_degree"
        else None
    )
    return CliResult(
        command="approx",
        outcome=outcome.kind,
        message=message,
        ledger=result.ledger,
        **_with_sides(graph, outcome.separator),
    )


def cmd_reduce(args: argparse.Namespace) -> CliResult:
    """
    One terminal reduction. A new terminal set larger than half the old one is
    replaced by the pairwise base case over the old terminals, as check-k does.
    """
    graph = _read_graph(args)
    try:
        terminals = TerminalSet.of(parse_terminal_file(Path(args.terminals).read_bytes()))
        terminals.check_within(graph)
    except (ValidationError, VertexRangeError) as e:
        raise ArgumentError(f"invalid terminals: {e}") from e

    ledger = FlowLedger()
    result = reduce_terminal_slow(
        graph, terminals, args.k, _reduction_config(args), ledger=ledger
    )
    outcome = result.outcome
    fallback_fired = False

    if isinstance(outcome, NewTerminals) and 2 * len(outcome.terminals) > len(terminals):
        logger.info(
            f"|T'|={len(outcome.terminals)} exceeds |T|/2, running the base case"
        )
        fallback_fired = True
        separator = steiner_separator_below(graph, terminals, args.k, ledger=ledger)
        outcome = (
            NewTerminals(terminals=TerminalSet())
            if separator is None
            else Separator(separator=separator)
        )

    common: dict[str, Any] = {
        "command": "reduce",
        "outcome": outcome.kind,
        "fallback_fired": fallback_fired,
        "ledger": ledger.snapshot(),
    }
    if isinstance(outcome, Separator):
        return CliResult(**common, **_with_sides(graph, outcome.separator))
    if isinstance(outcome, NewTerminals):
        return CliResult(**common, terminals=list(outcome.terminals.members))
    return CliResult(**common, message=f"{args.k}-connected")


def cmd_bench(args: argparse.Namespace) -> CliResult:
    config = load_bench_config(Path(args.config).read_text())
    if args.threads is not None:
        config = config.model_copy(update={"threads": args.threads})
    records = run_benchmark(config)

    if args.jsonl:
        with open(args.jsonl, "w") as stream:
            write_jsonl(records, stream)
    if args.csv:
        with open(args.csv, "w", newline="") as stream:
            write_csv(records, stream)
    if not args.jsonl and not args.csv:
        write_jsonl(records, sys.stdout)

    out_of_bound = sum(1 for record in records if record.within_bound is False)
    return CliResult(
        command="bench",
        outcome="records",
        records=len(records),
        message=f"{out_of_bound} records above their flow bound" if out_of_bound else None,
    )


def _parse_param(text: str) -> tuple[str, Any]:
    key, separator, value = text.partition("=")
    if not separator or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got '{text}'")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def cmd_gen(args: argparse.Namespace) -> CliResult | None:
    graph = generate(args.name, dict(args.param), args.seed)
    text = serialize_graph(graph, args.format)
    if args.out is None:
        sys.stdout.write(text)
        return None
    Path(args.out).write_text(text)
    return CliResult(
        command="gen",
        outcome="generated",
        message=f"wrote {args.name} graph with n={graph.n}, m={graph.m} to {args.out}",
    )


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the result as JSON")
    common.add_argument(
        "--threads", type=int, default=None, help="worker threads inside library calls"
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug"
    )

    graph_input = _Parser(add_help=False)
    graph_input.add_argument("graph", help="graph file")
    graph_input.add_argument(
        "--format",
        type=GraphFormat,
        choices=list(GraphFormat),
        default=GraphFormat.EDGE_LIST,
        help="graph file format",
    )

    reduction = _Parser(add_help=False)
    reduction.add_argument("--phi", type=float, default=None)
    reduction.add_argument("--phibar", type=float, default=None)
    reduction.add_argument(
        "--finder", type=FinderKind, choices=list(FinderKind), default=FinderKind.AUTO
    )

    parser = _Parser(prog="cutsmith", description="Vertex connectivity toolkit.")
    commands = parser.add_subparsers(dest="command", required=True)

    kappa = commands.add_parser(
        "kappa", parents=[common, graph_input], help="exact vertex connectivity"
    )
    oracle = kappa.add_mutually_exclusive_group()
    oracle.add_argument("--exact", action="store_true", help="brute-force oracle")
    oracle.add_argument("--allpairs", action="store_true", help="all-pairs flows")
    kappa.set_defaults(handler=cmd_kappa)

    check_k = commands.add_parser(
        "check-k",
        parents=[common, graph_input, reduction],
        help="decide k-vertex-connectivity",
    )
    check_k.add_argument("k", type=int)
    check_k.set_defaults(handler=cmd_check_k)

    approx = commands.add_parser(
        "approx", parents=[common, graph_input], help="(1 + eps)-approximate mincut"
    )
    approx.add_argument("eps", type=float)
    approx.set_defaults(handler=cmd_approx)

    reduce = commands.add_parser(
        "reduce", parents=[common, graph_input, reduction], help="one terminal reduction"
    )
    reduce.add_argument("terminals", help="terminal file, one vertex id per line")
    reduce.add_argument("k", type=int)
    reduce.set_defaults(handler=cmd_reduce)

    bench = commands.add_parser("bench", parents=[common], help="run a benchmark suite")
    bench.add_argument("config", help="JSON benchmark configuration")
    bench.add_argument("--jsonl", default=None, help="write records as JSON lines")
    bench.add_argument("--csv", default=None, help="write records as CSV")
    bench.set_defaults(handler=cmd_bench)

    gen = commands.add_parser("gen", parents=[common], help="write a generated graph")
    gen.add_argument("name", help="generator name")
    gen.add_argument(
        "--param",
        type=_parse_param,
        action="append",
        default=[],
        help="generator parameter as key=value, values parsed as JSON when possible",
    )
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default=None, help="output file, stdout if omitted")
    gen.add_argument(
        "--format", type=GraphFormat, choices=list(GraphFormat), default=GraphFormat.EDGE_LIST
    )
    gen.set_defaults(handler=cmd_gen)

    return parser


def _exit_code(error: Exception) -> int:
    if isinstance(error, InvariantViolationError):
        return EXIT_INVARIANT
    if isinstance(error, (OSError, GraphParseError, json.JSONDecodeError)):
        return EXIT_IO
    return EXIT_USAGE


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run the command line and return the exit code.
    """
    raw = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(raw)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    _configure_logging(args.verbose)
    arguments = {
        key: str(value) if not isinstance(value, (int, float, bool, type(None))) else value
        for key, value in vars(args).items()
        if key not in ("handler", "param")
    }
    handler: Callable[[argparse.Namespace], CliResult | None] = args.handler

    try:
        result = handler(args)
    except (
        ArgumentError,
        ConfigError,
        OracleLimitError,
        ValidationError,
        OSError,
        GraphParseError,
        json.JSONDecodeError,
        InvariantViolationError,
    ) as e:
        code = _exit_code(e)
        logger.debug(f"{args.command} failed with exit code {code}", exc_info=True)
        if args.json:
            failed = CliResult(
                command=args.command,
                arguments=arguments,
                outcome="error",
                message=str(e),
                exit_code=code,
            )
            print(failed.model_dump_json())
        print(f"cutsmith: error: {e}", file=sys.stderr)
        return code

    if result is None:
        return EXIT_OK

    result = result.model_copy(update={"arguments": arguments})
    if args.json:
        print(result.model_dump_json())
    else:
        print(Renderer().render(result))
    return result.exit_code
