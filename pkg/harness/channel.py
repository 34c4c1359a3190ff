import logging

import numpy as np

from gf2.bitword import BitWord
from harness.constants import MAX_WORD_LENGTH

logger = logging.getLogger()


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Crossover probability {p} is outside [0, 1].")


def bsc_batch(p: float, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw `count` error patterns of a binary symmetric channel.

    Args:
        p: Crossover probability, each bit flips independently with it.
        n: Word length.
        count: Number of patterns.
        rng: The generator to draw from.

    Returns:
        np.ndarray: uint64 array of `count` packed words.

    Raises:
        ValueError: If `p` is not a probability or `n` does not fit a packed
            word.
    """
    _check_probability(p)
    if not 1 <= n <= MAX_WORD_LENGTH:
        raise ValueError(f"Word length {n} is outside [1, {MAX_WORD_LENGTH}].")
    flips = rng.random((count, n)) < p
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)
    return (flips.astype(np.uint64) << shifts).sum(axis=1, dtype=np.uint64)


def bsc_sample(p: float, n: int, rng: np.random.Generator) -> BitWord:
    """One error pattern of a binary symmetric channel as a packed word."""
    return int(bsc_batch(p, n, 1, rng)[0])

