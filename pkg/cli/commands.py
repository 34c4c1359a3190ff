"""Command line front-end: build, inspect, decode, border, verify, simulate
and bench.

`run(argv)` parses and executes one command and returns its exit code; it
never configures logging, that is left to `main.py`.
"""
import argparse
import logging
import time
from typing import Callable, List, Optional, Sequence

from numpy.random import SeedSequence

from benchmark.bench import LATENCY_ALGORITHMS, bench_build, bench_decode
from border.border import border_from_phi, format_border, format_test_set, min_red, reduce_border
from border.minimal_codewords import minimal_codewords_bruteforce, verify_min_red_containment
from cli.cli_utils import (
    CommandParser,
    ExitCode,
    UsageError,
    add_code_source,
    as_compact,
    load_table,
    open_words,
    read_words,
    status_label,
    table_stats,
)
from decoders.border_decoder import border_reduction
from decoders.coset_problems import coset_minimum_words
from decoders.decode_result import Algorithm, DecodeResult
from decoders.leader_decoders import compact_reduction_gdda, l_gdda, reduction_gdda
from decoders.ml_decoder import closest_codewords, ml_bruteforce
from decoders.test_set_decoder import ts_gdda
from gf2.bitword import BitWord, to_string
from gf2.errors import (
    CodeFormatError,
    InvariantViolation,
    RepresentationFormatError,
    ScaleGuardError,
)
from harness.experiment import DECODER_NAMES, Exhaustive, Sampled, run_equivalence
from harness.named_codes import named_code
from harness.verification import run_verification
from representation import representation_io
from representation.compact_representation import compact
from representation.groebner_representation import GroebnerRepresentation, build_representation

logger = logging.getLogger()


def _print_lines(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def _fresh_seed() -> int:
    seed = SeedSequence().entropy
    logger.info(f"No seed given, using {seed}.")
    return seed


def _full(table: object, action: str) -> GroebnerRepresentation:
    if not isinstance(table, GroebnerRepresentation):
        raise UsageError(f"{action} needs the coset leaders; load a full representation.")
    return table


def cmd_build(args: argparse.Namespace) -> int:
    code = named_code(args.code)
    start = time.perf_counter()
    rep = build_representation(code, force=args.force)
    seconds = time.perf_counter() - start
    print(table_stats(rep))
    print(f"build_seconds={seconds:.3f}")
    outputs = [(args.out, rep, "full"), (args.compact, None, "compact")]
    for path, table, kind in outputs:
        if path is None:
            continue
        table = table if table is not None else compact(rep)
        representation_io.save(table, path)
        print(f"wrote={path} kind={kind} fingerprint={table.fingerprint()}")
    return ExitCode.OK


def cmd_inspect(args: argparse.Namespace) -> int:
    table = representation_io.load_file(args.load, trusted=args.trusted)
    kind = "full" if isinstance(table, GroebnerRepresentation) else "compact"
    print(table_stats(table))
    print(f"kind={kind} fingerprint={table.fingerprint()}")
    if args.details:
        print(table, end="")
    return ExitCode.OK


def _decoder(args: argparse.Namespace, table: object) -> Callable[[BitWord], DecodeResult]:
    algorithm = Algorithm(args.algorithm)
    match algorithm:
        case Algorithm.ML:
            return lambda r: ml_bruteforce(table.code, r, force=args.force)
        case Algorithm.L_GDDA:
            return lambda r: l_gdda(table, r)
        case Algorithm.REDUCTION:
            rep = _full(table, "The (N, phi)-reduction")
            return lambda r: reduction_gdda(rep, r)
        case Algorithm.COMPACT_REDUCTION:
            reduced = as_compact(table)
            return lambda r: compact_reduction_gdda(reduced, r)
        case Algorithm.BORDER:
            border = reduce_border(border_from_phi(_full(table, "Border reduction")))
            return lambda r: border_reduction(border, r)
        case Algorithm.TS_GDDA:
            if args.test_set == "minred":
                test_set = min_red(reduce_border(border_from_phi(_full(table, "Min_red"))))
            else:
                test_set = minimal_codewords_bruteforce(table.code, force=args.force)
            return lambda r: ts_gdda(test_set, r)


def _alternatives(args: argparse.Namespace, table: object, r: BitWord) -> List[BitWord]:
    if Algorithm(args.algorithm) == Algorithm.ML:
        return closest_codewords(table.code, r, force=args.force)
    errors = coset_minimum_words(table, table.code.syndrome(r), force=args.force)
    return sorted(r ^ e for e in errors)


def cmd_decode(args: argparse.Namespace) -> int:
    table, _ = load_table(args)
    decode = _decoder(args, table)
    with open_words(args.input) as stream:
        for r in read_words(stream, table.n, hexadecimal=args.hex):
            result = decode(r)
            print(result.to_line(table.n), flush=True)
            if args.all_leaders and not result.unique:
                closest = _alternatives(args, table, r)
                print(f"    closest {' '.join(to_string(c, table.n) for c in closest)}")
    return ExitCode.OK


def cmd_border(args: argparse.Namespace) -> int:
    if not (args.show or args.verify_containment):
        raise UsageError("Choose one of --full, --reduced, --minred, --minwords or --verify-prop1.")
    table, _ = load_table(args)
    n = table.n
    match args.show:
        case "full":
            _print_lines(format_border(border_from_phi(_full(table, "The border")), n))
        case "reduced":
            reduced = reduce_border(border_from_phi(_full(table, "The border")))
            _print_lines(format_border(reduced, n))
        case "minred":
            reduced = reduce_border(border_from_phi(_full(table, "Min_red")))
            _print_lines(format_test_set(min_red(reduced), n))
        case "minwords":
            _print_lines(format_test_set(minimal_codewords_bruteforce(table.code, args.force), n))
    if args.verify_containment:
        report = verify_min_red_containment(table.code, _full(table, "Min_red"), force=args.force)
        print(report.summary())
        return ExitCode.OK if report.holds else ExitCode.INVARIANT
    return ExitCode.OK


def cmd_verify(args: argparse.Namespace) -> int:
    table, label = load_table(args)
    rep = _full(table, "Verification")
    report = run_verification(rep.code, rep, code_id=label, force=args.force)
    for result in report.results:
        print(f"{status_label(result.status)} {result.name}")
        for detail in result.details:
            print(f"    {detail}")
    print(f"verify code={label} passed={int(report.passed)}")
    return ExitCode.OK if report.passed else ExitCode.INVARIANT


def cmd_simulate(args: argparse.Namespace) -> int:
    code = named_code(args.code)
    if args.exhaustive:
        mode = Exhaustive()
    else:
        seed = args.seed if args.seed is not None else _fresh_seed()
        mode = Sampled(int(args.trials), args.p, seed, args.random_codewords)
    report = run_equivalence(
        code, args.decoders, mode, code_id=args.code, workers=args.workers, force=args.force
    )
    if args.json:
        print(report.to_json(timings=args.timings))
    else:
        _print_lines(report.lines(timings=args.timings))
    return ExitCode.OK


def cmd_bench(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _fresh_seed()
    print(f"bench seed={seed}")
    for row in bench_build(args.redundancies, args.k, seed, force=args.force):
        print(row.line(args.timings))
    code = named_code(args.code) if args.code else None
    if code is not None:
        rows = bench_decode(code, args.algorithms, int(args.trials), args.p, seed, force=args.force)
        for row in rows:
            print(row.line(args.timings))
    return ExitCode.OK


def _integer_list(text: str) -> List[int]:
    try:
        return [int(value) for value in text.split(",") if value]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = CommandParser(prog="groebner-gdd", description=__doc__.splitlines()[0])
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log INFO (-v) or DEBUG (-vv)"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", help="build and save coset tables")
    add_code_source(build, allow_load=False)
    build.add_argument("--out", help="write the full representation (N, phi)")
    build.add_argument("--compact", help="write the compact representation (N*, phi*)")
    build.set_defaults(handler=cmd_build)

    inspect = subparsers.add_parser("inspect", help="print statistics of a saved table")
    inspect.add_argument("--load", required=True)
    inspect.add_argument("--trusted", action="store_true")
    inspect.add_argument("--details", action="store_true", help="also list leaders or weights")
    inspect.set_defaults(handler=cmd_inspect)

    decode = subparsers.add_parser("decode", help="decode received words")
    add_code_source(decode)
    decode.add_argument("--in", dest="input", help="file of received words, stdin by default")
    decode.add_argument("--hex", action="store_true", help="words are hexadecimal")
    decode.add_argument(
        "--algorithm", choices=[a.value for a in Algorithm], default=Algorithm.L_GDDA.value
    )
    decode.add_argument(
        "--test-set", choices=["minimal", "minred"], default="minimal", help="test set of ts"
    )
    decode.add_argument(
        "--all-leaders",
        action="store_true",
        help="list every closest codeword when the answer is not known to be unique",
    )
    decode.set_defaults(handler=cmd_decode)

    border = subparsers.add_parser("border", help="print borders and test sets")
    add_code_source(border)
    shown = border.add_mutually_exclusive_group()
    for name in ("full", "reduced", "minred", "minwords"):
        shown.add_argument(f"--{name}", dest="show", action="store_const", const=name)
    border.add_argument(
        "--verify-prop1", dest="verify_containment", action="store_true", help="Min_red ⊆ M_C"
    )
    border.set_defaults(handler=cmd_border, show=None)

    verify = subparsers.add_parser("verify", help="run the invariant suite")
    add_code_source(verify)
    verify.set_defaults(handler=cmd_verify)

    simulate = subparsers.add_parser("simulate", help="compare decoders with the oracle")
    add_code_source(simulate, allow_load=False)
    simulate.add_argument("--decoders", nargs="+", choices=DECODER_NAMES, default=["l", "ts"])
    simulate.add_argument("--p", type=float, default=0.05, help="crossover probability")
    simulate.add_argument("--trials", type=float, default=10_000)
    simulate.add_argument("--seed", type=int)
    simulate.add_argument("--exhaustive", action="store_true", help="decode every word once")
    simulate.add_argument("--random-codewords", action="store_true")
    simulate.add_argument("--workers", type=int, default=1)
    simulate.add_argument("--json", action="store_true")
    simulate.add_argument("--timings", action="store_true", help="add wall-clock columns")
    simulate.set_defaults(handler=cmd_simulate)

    bench = subparsers.add_parser("bench", help="build and decode timing tables")
    bench.add_argument("--redundancies", type=_integer_list, default=[4, 6, 8, 10, 12])
    bench.add_argument("--k", type=int, default=8)
    bench.add_argument("--code", help="code for the decode latency table")
    bench.add_argument(
        "--algorithms", nargs="+", choices=LATENCY_ALGORITHMS, default=["batch", "l"]
    )
    bench.add_argument("--trials", type=float, default=10_000)
    bench.add_argument("--p", type=float, default=0.05)
    bench.add_argument("--seed", type=int)
    bench.add_argument("--timings", action="store_true", help="add wall-clock columns")
    bench.set_defaults(handler=cmd_bench)

    for subparser in (build, decode, border, verify, simulate, bench):
        subparser.add_argument("--force", action="store_true", help="lift the scale guards")
    return parser


def execute(args: argparse.Namespace) -> int:
    """Run a parsed command, mapping exceptions to exit codes."""
    try:
        return int(args.handler(args))
    except (ScaleGuardError, UsageError) as e:
        logger.error(f"{e}")
        return ExitCode.USAGE
    except (CodeFormatError, RepresentationFormatError, OSError) as e:
        logger.error(f"{e}")
        return ExitCode.DATA
    except InvariantViolation as e:
        logger.error(f"Invariant violated: {e}")
        return ExitCode.INVARIANT
    except ValueError as e:
        logger.error(f"{e}")
        return ExitCode.USAGE


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return execute(args)
