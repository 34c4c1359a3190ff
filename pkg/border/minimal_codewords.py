import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from border.border import (
    border_from_phi,
    check_reduced_border,
    min_red,
    min_red_multiplicities,
    reduce_border,
)
from border.border_element import TestSet, TestSetKind
from gf2.binary_code import BinaryCode
from gf2.bitword import BitWord, is_subset
from representation.groebner_representation import (
    GroebnerRepresentation,
    build_representation,
)

logger = logging.getLogger()


def minimal_codewords_bruteforce(code: BinaryCode, force: bool = False) -> TestSet:
    """M_C: nonzero codewords whose support contains no other nonzero
    codeword's support, by enumerating all 2**k codewords.

    Codewords are scanned in weight order; a codeword is minimal exactly when
    it contains no minimal codeword found before it, since every nonzero
    support contains the support of some minimal codeword.

    Raises:
        ScaleGuardError: If k exceeds `BRUTEFORCE_MAX_DIMENSION` without `force`.
    """
    nonzero = sorted(
        (int(c) for c in code.codewords(force=force) if c), key=lambda c: (c.bit_count(), c)
    )
    minimal: List[BitWord] = []
    for c in nonzero:
        if not any(is_subset(m, c) for m in minimal):
            minimal.append(c)
    logger.debug(f"{len(minimal)} minimal codewords among {len(nonzero)} nonzero ones.")
    return TestSet(minimal, TestSetKind.MINIMAL_ALL)


@dataclass(frozen=True)
class ContainmentReport:
    """Outcome of checking Min_red(C) against the brute-force M_C.

    Attributes:
        min_red: The codewords head + tail over the reduced border.
        minimal: All minimal codewords.
        violations: Min_red codewords that are not minimal.
        multiplicities: For every Min_red codeword, the number of reduced
            border elements producing it.
        reduced_border_violations: Failed defining conditions of R(C).
    """

    min_red: TestSet
    minimal: TestSet
    violations: Tuple[BitWord, ...]
    multiplicities: Dict[BitWord, int] = field(default_factory=dict)
    reduced_border_violations: Tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return self.min_red.issubset(self.minimal)

    @property
    def duplicated(self) -> int:
        """Number of Min_red codewords produced by more than one element."""
        return sum(1 for count in self.multiplicities.values() if count > 1)

    def summary(self) -> str:
        return (
            f"min_red={len(self.min_red)} minimal={len(self.minimal)} "
            f"contained={self.holds} violations={len(self.violations)} "
            f"duplicated={self.duplicated} "
            f"reduced_border_ok={not self.reduced_border_violations}"
        )


def verify_min_red_containment(
    code: BinaryCode, rep: Optional[GroebnerRepresentation] = None, force: bool = False
) -> ContainmentReport:
    """Check Min_red(C) against M_C; violations are reported, never raised."""
    rep = rep if rep is not None else build_representation(code, force=force)
    border = border_from_phi(rep)
    reduced = reduce_border(border)
    min_red_set = min_red(reduced)
    minimal = minimal_codewords_bruteforce(code, force=force)
    violations = tuple(w for w in min_red_set.words if w not in set(minimal.words))
    report = ContainmentReport(
        min_red=min_red_set,
        minimal=minimal,
        violations=violations,
        multiplicities=dict(min_red_multiplicities(reduced)),
        reduced_border_violations=tuple(check_reduced_border(border, reduced)),
    )
    if report.holds:
        logger.info(f"Min_red is contained in M_C for the {code}: {report.summary()}.")
    else:
        logger.warning(f"Min_red is NOT contained in M_C for the {code}: {report.summary()}.")
    return report
