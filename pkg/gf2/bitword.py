"""Bit-packed words over GF(2).

A word of length n is a plain `int` in [0, 2**n). Position 0 (the first
character of the 0/1 string) is the most significant of the n bits, so
`int(s, 2)` and `format(w, "0{n}b")` convert between the two forms and the
equal-weight tie-break of the weight order is integer comparison.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Tuple

import numpy as np

from gf2.errors import CodeFormatError
from harness.constants import MAX_WORD_LENGTH

BitWord = int
Syndrome = int

_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


def weight(w: BitWord) -> int:
    return w.bit_count()


def unit(j: int, n: int) -> BitWord:
    """Return the unit vector with a single one at position `j` (0-based)."""
    return 1 << (n - 1 - j)


def support(w: BitWord, n: int) -> List[int]:
    """Positions (0-based, increasing) of the set bits of `w`."""
    return [j for j in range(n) if (w >> (n - 1 - j)) & 1]


def is_subset(a: BitWord, b: BitWord) -> bool:
    """True when supp(a) is contained in supp(b)."""
    return a & b == a


def check_length(w: BitWord, n: int) -> None:
    """Raise ValueError when `w` does not fit into n positions.

    Args:
        w: The word to check.
        n: The word length.

    Raises:
        ValueError: If `w` is negative or has a set bit beyond position n.
    """
    if w < 0 or w >> n:
        raise ValueError(f"Word {w:#x} does not fit into length {n}.")


def to_string(w: BitWord, n: int) -> str:
    return format(w, f"0{n}b") if n else ""


def from_string(text: str, n: int) -> BitWord:
    """Parse a 0/1 string of exactly `n` characters.

    Raises:
        CodeFormatError: If the string has another length or a character
            outside {0, 1}.
    """
    text = text.strip()
    if len(text) != n or any(ch not in "01" for ch in text):
        raise CodeFormatError(f"Expected {n} characters from {{0,1}}, got {text!r}.")
    return int(text, 2) if n else 0


def from_hex(text: str, n: int) -> BitWord:
    try:
        w = int(text.strip(), 16)
    except ValueError as e:
        raise CodeFormatError(f"Malformed hexadecimal word {text!r}.") from e
    if w >> n:
        raise CodeFormatError(f"Hexadecimal word {text!r} exceeds length {n}.")
    return w


def popcount(words: np.ndarray) -> np.ndarray:
    """Vectorised Hamming weights of an array of packed words (n <= 64)."""
    words = np.asarray(words, dtype=np.uint64)
    mask = np.uint64(0xFFFF)
    total = np.zeros(words.shape, dtype=np.int64)
    for shift in (0, 16, 32, 48):
        total += _POPCOUNT16[((words >> np.uint64(shift)) & mask).astype(np.int64)]
    return total


def all_words(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint64)


class Comparison(Enum):
    """Outcome of comparing two words under the weight order."""

    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class WeightOrder:
    """Degree compatible total order on words of length n.

    Lower weight always precedes higher weight; equal weights are ordered as
    unsigned integers read with position 0 as the most significant bit.
    """

    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_WORD_LENGTH:
            raise ValueError(f"Word length {self.n} outside [0, {MAX_WORD_LENGTH}].")

    def key(self, w: BitWord) -> Tuple[int, int]:
        return w.bit_count(), w

    def compare(self, a: BitWord, b: BitWord) -> Comparison:
        check_length(a, self.n)
        check_length(b, self.n)
        key_a, key_b = self.key(a), self.key(b)
        if key_a < key_b:
            return Comparison.LT
        if key_a > key_b:
            return Comparison.GT
        return Comparison.EQ

    def sorted(self, words: Iterable[BitWord]) -> List[BitWord]:
        return sorted(words, key=self.key)

    def minimum(self, words: Iterable[BitWord]) -> BitWord:
        return min(words, key=self.key)
