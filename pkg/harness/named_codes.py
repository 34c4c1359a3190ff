"""Code families used by the command line, the harness and the tests.

A code source is written `family:arguments`, e.g. `hamming:3`,
`repetition:5`, `random:10,5,1` (n, k, seed), `trivial:4` or `file:code.txt`.
"""
import logging
from pathlib import Path
from typing import List, Union

import numpy as np
from numpy.random import Generator, Philox

from gf2.binary_code import BinaryCode
from gf2.bitword import BitWord
from gf2.matrix import rank
from harness.constants import MAX_WORD_LENGTH, RANDOM_CODE_MAX_RESAMPLES

logger = logging.getLogger()


def hamming(r: int) -> BinaryCode:
    """The [2**r - 1, 2**r - 1 - r] Hamming code; column j of H is the binary
    expansion of j + 1 with parity-check row 0 as its least significant bit."""
    n = (1 << r) - 1
    if r < 2 or n > MAX_WORD_LENGTH:
        raise ValueError(f"Hamming parameter {r} must give 3 <= n <= {MAX_WORD_LENGTH}.")
    rows = []
    for i in range(r):
        row = 0
        for j in range(n):
            row |= (((j + 1) >> i) & 1) << (n - 1 - j)
        rows.append(row)
    return BinaryCode.from_parity_check(rows, n)


def repetition(n: int) -> BinaryCode:
    if not 1 <= n <= MAX_WORD_LENGTH:
        raise ValueError(f"Repetition length {n} outside [1, {MAX_WORD_LENGTH}].")
    return BinaryCode.from_generator([(1 << n) - 1], n)


def trivial(n: int) -> BinaryCode:
    """The whole space F_2^n: k = n, a single coset."""
    if not 1 <= n <= MAX_WORD_LENGTH:
        raise ValueError(f"Length {n} outside [1, {MAX_WORD_LENGTH}].")
    return BinaryCode.from_generator([1 << (n - 1 - j) for j in range(n)], n)


def random_code(n: int, k: int, seed: int) -> BinaryCode:
    """A random [n, k] code from uniformly drawn generator rows.

    Rank-deficient draws are discarded and redrawn from the same stream, so
    the code depends on (n, k, seed) only.

    Raises:
        ValueError: On invalid parameters or when no full-rank generator is
            found within `RANDOM_CODE_MAX_RESAMPLES` draws.
    """
    if not 1 <= n <= MAX_WORD_LENGTH or not 1 <= k <= n:
        raise ValueError(f"Invalid random code parameters n={n}, k={k}.")
    if seed < 0:
        raise ValueError(f"Seed {seed} must be non-negative.")
    rng = Generator(Philox(seed))
    for attempt in range(RANDOM_CODE_MAX_RESAMPLES):
        bits = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
        rows: List[BitWord] = [int("".join(map(str, row)), 2) for row in bits]
        if rank(rows, n) == k:
            if attempt:
                logger.debug(f"Random [{n},{k}] code with seed {seed} resampled {attempt} times.")
            return BinaryCode.from_generator(rows, n)
    raise ValueError(
        f"No full-rank [{n},{k}] generator within {RANDOM_CODE_MAX_RESAMPLES=} draws."
    )


def from_file(path: Union[str, Path]) -> BinaryCode:
    return BinaryCode.load(path)


def _integers(arguments: str, count: int, family: str) -> List[int]:
    try:
        values = [int(value) for value in arguments.split(",")]
    except ValueError as e:
        raise ValueError(f"Non-integer arguments {arguments!r} for {family}.") from e
    if len(values) != count:
        raise ValueError(f"{family} takes {count} arguments, got {len(values)}.")
    return values


def named_code(source: str) -> BinaryCode:
    """Resolve a `family:arguments` code source.

    Raises:
        ValueError: On an unknown family or bad parameters.
        CodeFormatError: If a `file:` source holds a malformed code.
        OSError: If a `file:` source cannot be read.
    """
    family, separator, arguments = source.partition(":")
    if not separator:
        raise ValueError(f"Code source {source!r} is not of the form family:arguments.")
    match family:
        case "hamming":
            return hamming(*_integers(arguments, 1, family))
        case "repetition":
            return repetition(*_integers(arguments, 1, family))
        case "trivial":
            return trivial(*_integers(arguments, 1, family))
        case "random":
            return random_code(*_integers(arguments, 3, family))
        case "file":
            return from_file(arguments)
        case _:
            raise ValueError(f"Unknown code family {family!r}.")
