from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from gf2.bitword import BitWord, to_string


class Algorithm(Enum):
    """Decoders available to the harness and the command line, by CLI name."""

    ML = "ml"  # brute-force maximum likelihood oracle
    L_GDDA = "l"  # coset-leader descent on (N*, phi*)
    TS_GDDA = "ts"  # test-set descent
    REDUCTION = "red"  # (N, phi)-reduction: forward + backward step
    COMPACT_REDUCTION = "compact"  # (N*, phi*)-reduction
    BORDER = "border"  # head-to-tail rewriting over the reduced border


@dataclass(frozen=True)
class DecodeResult:
    """A decoded word.

    Attributes:
        codeword: The returned codeword c.
        error: r + c.
        distance: Weight of `error`.
        steps: Flipped positions (descent decoders) or applied test-set words
            (test-set decoder), in order.
        unique: True when the answer is known to be the only closest
            codeword.
    """

    codeword: BitWord
    error: BitWord
    distance: int
    steps: Tuple[int, ...]
    unique: bool
    algorithm: Algorithm

    def __post_init__(self) -> None:
        if self.distance != self.error.bit_count():
            raise ValueError(f"Distance {self.distance} differs from the error weight.")

    @property
    def received(self) -> BitWord:
        return self.codeword ^ self.error

    def to_line(self, n: int) -> str:
        """`codeword error_weight unique steps` as printed by the decode command."""
        return f"{to_string(self.codeword, n)} {self.distance} {int(self.unique)} {len(self.steps)}"
