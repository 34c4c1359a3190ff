import argparse
import logging
import sys
from contextlib import contextmanager
from enum import IntEnum
from pathlib import Path
from typing import Iterable, Iterator, NoReturn, Optional, TextIO, Tuple

from termcolor import colored

from gf2.bitword import BitWord, from_hex, from_string
from gf2.errors import CodeFormatError
from harness.named_codes import named_code
from representation import representation_io
from representation.compact_representation import CompactRepresentation, compact
from representation.groebner_representation import CosetTable, build_representation

logger = logging.getLogger()


class ExitCode(IntEnum):
    OK = 0
    USAGE = 1  # bad flags or a refused scale guard
    DATA = 2  # malformed code, word or representation file, unreadable path
    INVARIANT = 3  # a table invariant or a verification failed


class UsageError(Exception):
    """A flag combination the command cannot serve."""


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser exiting with `ExitCode.USAGE` on bad arguments."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def add_code_source(parser: argparse.ArgumentParser, allow_load: bool = True) -> None:
    """Exactly one of `--code family:args` and `--load file.grep`."""
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--code", help="code source: hamming:R, repetition:N, random:N,K,SEED, trivial:N, file:PATH"
    )
    if allow_load:
        group.add_argument("--load", help="representation file written by build")
        parser.add_argument(
            "--trusted", action="store_true", help="skip revalidation of a loaded file"
        )


def load_table(args: argparse.Namespace) -> Tuple[CosetTable, str]:
    """The table named by `--code` (built) or `--load` (read), with a label.

    Raises:
        ScaleGuardError: If the build exceeds the cap without `--force`.
        CodeFormatError, RepresentationFormatError, OSError: On bad input.
        InvariantViolation: If a loaded table fails revalidation.
    """
    if getattr(args, "load", None):
        table = representation_io.load_file(args.load, trusted=args.trusted)
        return table, args.load
    code = named_code(args.code)
    return build_representation(code, force=args.force), args.code


def as_compact(table: CosetTable) -> CompactRepresentation:
    return table if isinstance(table, CompactRepresentation) else compact(table)


@contextmanager
def open_words(path: Optional[str]) -> Iterator[TextIO]:
    """The `--in` file, or stdin (left open) when no path is given."""
    if path in (None, "-"):
        yield sys.stdin
        return
    with Path(path).open(encoding="utf-8") as stream:
        yield stream


def read_words(lines: Iterable[str], n: int, hexadecimal: bool = False) -> Iterator[BitWord]:
    """Parse received words, one per line; blank lines are skipped.

    Raises:
        CodeFormatError: On the first malformed line, naming its number.
    """
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield from_hex(line, n) if hexadecimal else from_string(line, n)
        except CodeFormatError as e:
            raise CodeFormatError(f"Line {number}: {e}") from e


def table_stats(table: CosetTable) -> str:
    return (
        f"code=[{table.n},{table.k}] cosets={table.num_cosets} "
        f"covering_radius={int(table.weights.max())} packing_radius={table.packing_radius}"
    )


def status_label(status: str) -> str:
    color = {"PASS": "green", "FAIL": "red", "SKIP": "yellow", "INFO": "cyan"}[status]
    return colored(status, color) if sys.stdout.isatty() else status
