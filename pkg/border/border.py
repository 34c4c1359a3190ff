import logging
from collections import Counter
from typing import Dict, FrozenSet, Iterable, List, Sequence

import numpy as np

from border.border_element import BorderElement, TestSet, TestSetKind
from gf2.binary_code import BinaryCode
from gf2.bitword import BitWord, is_subset, to_string, unit
from gf2.errors import ScaleGuardError
from harness.constants import BORDER_DEFINITION_MAX_REDUNDANCY
from representation.groebner_representation import GroebnerRepresentation

logger = logging.getLogger()

Border = FrozenSet[BorderElement]


def border_from_phi(rep: GroebnerRepresentation) -> Border:
    """B(C) read off the transition table: (n + e_j, phi(n, e_j)) for every
    leader n and position j, without the pairs whose components coincide."""
    units = np.array([unit(j, rep.n) for j in range(rep.n)], dtype=np.uint64)
    heads = rep.leaders[:, None] ^ units[None, :]
    tails = rep.leaders[rep.phi.astype(np.int64)]
    keep = heads != tails
    border = frozenset(
        BorderElement(head=int(h), tail=int(t)) for h, t in zip(heads[keep], tails[keep])
    )
    logger.debug(f"Border from phi has {len(border)} elements.")
    return border


def border_by_definition(
    code: BinaryCode, leaders: Sequence[BitWord], force: bool = False
) -> Border:
    """B(C) by scanning every (n1, j, n2) with H(n1 + e_j) = H n2, n1 + e_j != n2.

    Syndromes are recomputed from H, so the result does not depend on any
    transition table.

    Raises:
        ScaleGuardError: If n - k exceeds `BORDER_DEFINITION_MAX_REDUNDANCY`
            and `force` is not set.
    """
    if code.redundancy > BORDER_DEFINITION_MAX_REDUNDANCY:
        if not force:
            raise ScaleGuardError(
                f"The literal border scan over 2**{code.redundancy} cosets exceeds "
                f"{BORDER_DEFINITION_MAX_REDUNDANCY=}; pass force to override."
            )
        logger.warning(f"Forced literal border scan over 2**{code.redundancy} cosets.")
    leader_array = np.array(leaders, dtype=np.uint64)
    leader_syndromes = code.syndromes(leader_array)
    border = set()
    for n1 in leaders:
        for j in range(code.n):
            head = n1 ^ unit(j, code.n)
            for n2 in leader_array[leader_syndromes == code.syndrome(head)]:
                if head != int(n2):
                    border.add(BorderElement(head=head, tail=int(n2)))
    return frozenset(border)


def _support_minimal_heads(heads: FrozenSet[BitWord]) -> FrozenSet[BitWord]:
    """Heads none of whose proper subsets is a head."""
    contains_head: Dict[BitWord, bool] = {}

    def has_head_below(w: BitWord) -> bool:
        # True when some subset of w (w included) is a head
        if w in heads:
            return True
        if w not in contains_head:
            rest, found = w, False
            while rest and not found:
                low = rest & -rest
                found = has_head_below(w ^ low)
                rest ^= low
            contains_head[w] = found
        return contains_head[w]

    minimal = set()
    for h in heads:
        rest, below = h, False
        while rest and not below:
            low = rest & -rest
            below = has_head_below(h ^ low)
            rest ^= low
        if not below:
            minimal.add(h)
    return frozenset(minimal)


def reduce_border(border: Iterable[BorderElement]) -> Border:
    """R(C): the border elements whose heads are support-minimal among all
    border heads. Retained heads are pairwise support-incomparable and every
    border head contains one of them."""
    border = frozenset(border)
    minimal_heads = _support_minimal_heads(frozenset(b.head for b in border))
    reduced = frozenset(b for b in border if b.head in minimal_heads)
    logger.debug(f"Reduced border keeps {len(reduced)} of {len(border)} elements.")
    return reduced


def check_reduced_border(
    border: Iterable[BorderElement], reduced: Iterable[BorderElement]
) -> List[str]:
    """Check both defining conditions of a reduced border verbatim.

    Returns:
        List[str]: Violations, empty when `reduced` is a reduced border of
        `border`.
    """
    border, reduced = frozenset(border), frozenset(reduced)
    violations = []
    if not reduced <= border:
        violations.append("Reduced border is not a subset of the border.")
    reduced_heads = sorted({b.head for b in reduced})
    for h in sorted({b.head for b in border}):
        if not any(is_subset(r, h) for r in reduced_heads):
            violations.append(f"Border head {h:#x} contains no retained head.")
    for index, h1 in enumerate(reduced_heads):
        for h2 in reduced_heads[index + 1 :]:
            if is_subset(h1, h2) or is_subset(h2, h1):
                violations.append(f"Retained heads {h1:#x} and {h2:#x} are comparable.")
    return violations


def min_red_multiplicities(reduced: Iterable[BorderElement]) -> Counter:
    """How many reduced-border elements produce each codeword head + tail."""
    return Counter(b.codeword for b in reduced)


def min_red(reduced: Iterable[BorderElement]) -> TestSet:
    """Min_red(C) = {head(b) + tail(b) : b in R(C)}, deduplicated."""
    return TestSet(min_red_multiplicities(reduced).keys(), TestSetKind.MIN_RED)


def format_border(border: Iterable[BorderElement], n: int) -> List[str]:
    return [f"{to_string(b.head, n)} {to_string(b.tail, n)}" for b in sorted(border)]


def format_test_set(test_set: TestSet, n: int) -> List[str]:
    return [to_string(w, n) for w in test_set.words]
