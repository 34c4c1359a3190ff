"""Border reduction: rewrite the received word inside its own coset.

While some reduced-border head is contained in the current word, the head
is swapped for its tail. Head and tail lie in one coset and the tail comes
first in the weight order, so every swap lowers the word in that order
without leaving the coset. Every word outside the leader set contains a
retained head, hence the rewriting stops exactly at the coset leader.
"""
import logging
from functools import lru_cache
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from border.border_element import BorderElement
from decoders.decode_result import Algorithm, DecodeResult
from gf2.bitword import BitWord

logger = logging.getLogger()


@lru_cache(maxsize=8)
def _border_arrays(reduced: FrozenSet[BorderElement]) -> Tuple[np.ndarray, np.ndarray]:
    ordered = sorted(reduced, key=lambda b: (b.head.bit_count(), b.head, b.tail))
    heads = np.array([b.head for b in ordered], dtype=np.uint64)
    tails = np.array([b.tail for b in ordered], dtype=np.uint64)
    return heads, tails


def border_reduction(
    reduced: FrozenSet[BorderElement], r: BitWord, t: Optional[int] = None
) -> DecodeResult:
    """Decode `r` by head-to-tail rewriting over a reduced border.

    Among the heads contained in the current word the lightest one (then the
    smallest as an integer) is applied. Steps record the applied codewords
    head + tail.

    Args:
        reduced: R(C), as returned by `reduce_border`.
        r: The received word.
        t: Correctability threshold for the `unique` flag. When None, half the
            weight of the lightest border codeword minus one.

    Raises:
        ValueError: If `reduced` is empty.
    """
    reduced = frozenset(reduced)
    if not reduced:
        raise ValueError("Border reduction needs a nonempty reduced border.")
    heads, tails = _border_arrays(reduced)
    if t is None:
        t = (min(b.codeword.bit_count() for b in reduced) - 1) // 2
    current, codeword = r, 0
    steps: List[int] = []
    while True:
        contained = np.flatnonzero((heads & np.uint64(current)) == heads)
        if not len(contained):
            break
        index = int(contained[0])
        applied = int(heads[index] ^ tails[index])
        current ^= applied
        codeword ^= applied
        steps.append(applied)
    logger.debug(f"Border reduction applied {len(steps)} rewrites, ending at {current:#x}.")
    return DecodeResult(
        codeword=codeword,
        error=current,
        distance=current.bit_count(),
        steps=tuple(steps),
        unique=current.bit_count() <= t,
        algorithm=Algorithm.BORDER,
    )
