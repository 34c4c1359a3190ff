import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from gf2.bitword import BitWord, Syndrome, check_length, from_string, unit
from gf2.errors import CodeFormatError, ScaleGuardError
from gf2.matrix import (
    generator_from_parity_check,
    is_orthogonal,
    parity_check_from_generator,
    rank,
    to_strings,
)
from harness.constants import BRUTEFORCE_MAX_DIMENSION, MAX_WORD_LENGTH

logger = logging.getLogger()


@dataclass(frozen=True)
class BinaryCode:
    """A binary linear [n, k] code given by both of its defining matrices.

    Rows are packed words; syndromes are words of n - k bits with parity-check
    row 0 as the most significant bit.
    """

    n: int
    k: int
    generator: Tuple[BitWord, ...]
    parity_check: Tuple[BitWord, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_WORD_LENGTH:
            raise CodeFormatError(f"Code length {self.n} outside [1, {MAX_WORD_LENGTH}].")
        if not 1 <= self.k <= self.n:
            raise CodeFormatError(f"Code dimension {self.k} outside [1, {self.n}].")
        if len(self.generator) != self.k:
            raise CodeFormatError(
                f"Generator has {len(self.generator)} rows, expected {self.k}."
            )
        if len(self.parity_check) != self.n - self.k:
            raise CodeFormatError(
                f"Parity-check matrix has {len(self.parity_check)} rows, "
                f"expected {self.n - self.k}."
            )
        for row in self.generator + self.parity_check:
            if row < 0 or row >> self.n:
                raise CodeFormatError(f"Row {row:#x} does not fit into length {self.n}.")
        if rank(self.generator, self.n) != self.k:
            raise CodeFormatError("Generator matrix is rank deficient.")
        if rank(self.parity_check, self.n) != self.n - self.k:
            raise CodeFormatError("Parity-check matrix is rank deficient.")
        if not is_orthogonal(self.generator, self.parity_check):
            raise CodeFormatError("G.H^T != 0: matrices describe different codes.")

    @classmethod
    def from_generator(cls, generator: Sequence[BitWord], n: int) -> "BinaryCode":
        parity_check = parity_check_from_generator(generator, n)
        return cls(
            n=n, k=len(generator), generator=tuple(generator), parity_check=tuple(parity_check)
        )

    @classmethod
    def from_parity_check(cls, parity_check: Sequence[BitWord], n: int) -> "BinaryCode":
        generator = generator_from_parity_check(parity_check, n)
        return cls(
            n=n,
            k=n - len(parity_check),
            generator=tuple(generator),
            parity_check=tuple(parity_check),
        )

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def num_cosets(self) -> int:
        return 1 << self.redundancy

    @cached_property
    def column_syndromes(self) -> Tuple[Syndrome, ...]:
        """Syndrome of every unit vector, i.e. the columns of H."""
        return tuple(self._syndrome(unit(j, self.n)) for j in range(self.n))

    def _syndrome(self, w: BitWord) -> Syndrome:
        m = self.redundancy
        s = 0
        for i, row in enumerate(self.parity_check):
            s |= ((row & w).bit_count() & 1) << (m - 1 - i)
        return s

    def syndrome(self, w: BitWord) -> Syndrome:
        """Return H.w^T; zero exactly for codewords.

        Raises:
            ValueError: If `w` does not fit into length n.
        """
        check_length(w, self.n)
        return self._syndrome(w)

    def syndromes(self, words: np.ndarray) -> np.ndarray:
        """Vectorised syndromes of an array of packed words."""
        words = np.asarray(words, dtype=np.uint64)
        result = np.zeros(words.shape, dtype=np.uint64)
        for j, column in enumerate(self.column_syndromes):
            bit = (words >> np.uint64(self.n - 1 - j)) & np.uint64(1)
            result ^= bit * np.uint64(column)
        return result

    def is_codeword(self, w: BitWord) -> bool:
        return self.syndrome(w) == 0

    def codewords(self, force: bool = False) -> np.ndarray:
        """Enumerate all 2**k codewords, indexed by their message bits.

        Args:
            force: Skip the `BRUTEFORCE_MAX_DIMENSION` guard.

        Raises:
            ScaleGuardError: If k exceeds the guard and `force` is not set.
        """
        if self.k > BRUTEFORCE_MAX_DIMENSION:
            if not force:
                raise ScaleGuardError(
                    f"Enumerating 2**{self.k} codewords exceeds "
                    f"{BRUTEFORCE_MAX_DIMENSION=}; pass force to override."
                )
            logger.warning(f"Forced enumeration of 2**{self.k} codewords.")
        codebook = np.zeros(1, dtype=np.uint64)
        for row in reversed(self.generator):
            codebook = np.concatenate([codebook, codebook ^ np.uint64(row)])
        return codebook

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines += to_strings(self.generator, self.n)
        lines.append("H")
        lines += to_strings(self.parity_check, self.n)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BinaryCode":
        """Parse the code file format.

        The first line holds `n k`, the next k lines the generator rows as
        0/1 strings; an optional line `H` is followed by the n - k parity-check
        rows. Blank lines and lines starting with `#` are ignored.

        Raises:
            CodeFormatError: On malformed lines, inconsistent dimensions, rank
                deficiencies or G.H^T != 0.
        """
        lines = [
            line.strip()
            for line in text.splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        if not lines:
            raise CodeFormatError("Empty code description.")
        try:
            n, k = (int(field) for field in lines[0].split())
        except ValueError as e:
            raise CodeFormatError(f"Malformed header {lines[0]!r}, expected 'n k'.") from e
        if not 1 <= n <= MAX_WORD_LENGTH or not 1 <= k <= n:
            raise CodeFormatError(f"Invalid dimensions n={n}, k={k}.")
        body = lines[1:]
        if "H" in body:
            split = body.index("H")
            generator_lines, parity_lines = body[:split], body[split + 1 :]
        else:
            generator_lines, parity_lines = body, None
        if len(generator_lines) != k:
            raise CodeFormatError(f"Expected {k} generator rows, got {len(generator_lines)}.")
        generator = [from_string(line, n) for line in generator_lines]
        if parity_lines is None:
            return cls.from_generator(generator, n)
        if len(parity_lines) != n - k:
            raise CodeFormatError(
                f"Expected {n - k} parity-check rows, got {len(parity_lines)}."
            )
        parity_check: List[BitWord] = [from_string(line, n) for line in parity_lines]
        return cls(n=n, k=k, generator=tuple(generator), parity_check=tuple(parity_check))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "BinaryCode":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def __str__(self) -> str:
        return f"[{self.n},{self.k}] binary code"
