"""Brute-force maximum likelihood decoding, the ground truth of the harness.

On a binary symmetric channel with crossover below one half, the most likely
codeword is a closest one in Hamming distance, so enumerating the 2**k
codewords answers the complete decoding problem exactly.
"""
import logging
from functools import lru_cache
from typing import List

import numpy as np

from decoders.decode_result import Algorithm, DecodeResult
from gf2.binary_code import BinaryCode
from gf2.bitword import BitWord, check_length, popcount

logger = logging.getLogger()


@lru_cache(maxsize=16)
def codebook(code: BinaryCode, force: bool = False) -> np.ndarray:
    """All codewords of `code`, cached per code."""
    return code.codewords(force=force)


def ml_bruteforce(code: BinaryCode, r: BitWord, force: bool = False) -> DecodeResult:
    """Return a closest codeword to `r`.

    Among several closest codewords the one with the smallest error under the
    weight order is returned and `unique` is cleared.

    Raises:
        ScaleGuardError: If k exceeds `BRUTEFORCE_MAX_DIMENSION` without `force`.
    """
    check_length(r, code.n)
    errors = codebook(code, force) ^ np.uint64(r)
    distances = popcount(errors)
    distance = int(distances.min())
    closest = errors[distances == distance]
    error = int(closest.min())  # equal weights: the integer order decides
    return DecodeResult(
        codeword=r ^ error,
        error=error,
        distance=distance,
        steps=(),
        unique=len(closest) == 1,
        algorithm=Algorithm.ML,
    )


def closest_codewords(code: BinaryCode, r: BitWord, force: bool = False) -> List[BitWord]:
    """Every codeword at minimum distance from `r`, in increasing order."""
    check_length(r, code.n)
    words = codebook(code, force)
    distances = popcount(words ^ np.uint64(r))
    return sorted(int(c) for c in words[distances == distances.min()])


def ml_distances(code: BinaryCode, words: np.ndarray, force: bool = False) -> np.ndarray:
    """Distance from every word of `words` to the code, vectorised."""
    words = np.asarray(words, dtype=np.uint64)
    best = np.full(words.shape, code.n + 1, dtype=np.int64)
    for c in codebook(code, force):
        np.minimum(best, popcount(words ^ c), out=best)
    return best


def minimum_distance(code: BinaryCode, force: bool = False) -> int:
    """d: the smallest weight of a nonzero codeword, by enumeration.

    Raises:
        ScaleGuardError: If k exceeds `BRUTEFORCE_MAX_DIMENSION` without `force`.
    """
    weights = popcount(codebook(code, force)[1:])
    return int(weights.min())
