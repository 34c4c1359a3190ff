from dataclasses import dataclass
from enum import Enum, auto
from typing import Iterable, Tuple

from gf2.binary_code import BinaryCode
from gf2.bitword import BitWord


@dataclass(frozen=True, order=True)
class BorderElement:
    """A (head, tail) pair of one coset: head leaves N in one step and tail is
    the leader of the coset the head lands in."""

    head: BitWord
    tail: BitWord

    @property
    def codeword(self) -> BitWord:
        return self.head ^ self.tail


class TestSetKind(Enum):
    """Origin of the codewords of a test set."""

    __test__ = False

    MINIMAL_ALL = auto()  # every minimal codeword, by brute force
    MIN_RED = auto()  # head + tail over the reduced border
    CUSTOM = auto()


@dataclass(frozen=True)
class TestSet:
    """Nonzero codewords for test-set descent, kept in weight order."""

    __test__ = False

    words: Tuple[BitWord, ...]
    kind: TestSetKind

    def __init__(self, words: Iterable[BitWord], kind: TestSetKind = TestSetKind.CUSTOM):
        unique = set(words)
        if 0 in unique:
            raise ValueError("A test set cannot contain the zero word.")
        object.__setattr__(
            self, "words", tuple(sorted(unique, key=lambda w: (w.bit_count(), w)))
        )
        object.__setattr__(self, "kind", kind)

    @classmethod
    def for_code(
        cls, code: BinaryCode, words: Iterable[BitWord], kind: TestSetKind = TestSetKind.CUSTOM
    ) -> "TestSet":
        """Build a test set, rejecting words outside the code.

        Raises:
            ValueError: If a word is not a codeword of `code`.
        """
        test_set = cls(words, kind)
        for w in test_set.words:
            if not code.is_codeword(w):
                raise ValueError(f"Test-set word {w:#x} is not a codeword of the {code}.")
        return test_set

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: object) -> bool:
        return w in set(self.words)

    def issubset(self, other: "TestSet") -> bool:
        return set(self.words) <= set(other.words)
