"""Invariant checks for coset tables.

Every check returns a list of human readable violations; an empty list means
the invariant holds. `validate` runs the checks that need no brute force and
raises on the first failure.
"""
import logging
from typing import List, Union

import numpy as np

from gf2.bitword import all_words, popcount, to_string
from gf2.errors import InvariantViolation, ScaleGuardError
from harness.constants import EXHAUSTIVE_MAX_LENGTH
from representation.compact_representation import CompactRepresentation
from representation.groebner_representation import CosetTable, GroebnerRepresentation

logger = logging.getLogger()

AnyTable = Union[GroebnerRepresentation, CompactRepresentation]


def _table_syndromes(table: CosetTable) -> np.ndarray:
    if isinstance(table, GroebnerRepresentation):
        return table.code.syndromes(table.leaders)
    return table.coset_syndromes


def check_shapes(table: CosetTable) -> List[str]:
    expected = table.code.num_cosets
    violations = []
    if table.phi.shape != (expected, table.n):
        violations.append(f"phi has shape {table.phi.shape}, expected {(expected, table.n)}.")
    elif len(table.phi) and int(table.phi.max()) >= expected:
        violations.append(f"phi refers to coset {int(table.phi.max())} >= {expected}.")
    if table.syndrome_index.shape != (expected,):
        violations.append(f"syndrome index has shape {table.syndrome_index.shape}.")
    return violations


def check_transversal(table: CosetTable) -> List[str]:
    """Distinct syndromes, zero coset first, syndrome map consistent."""
    syndromes = _table_syndromes(table)
    violations = []
    if len(np.unique(syndromes)) != table.num_cosets:
        violations.append("Coset representatives share a syndrome.")
    if table.num_cosets and int(syndromes[0]) != 0:
        violations.append("Coset 0 is not the code itself.")
    if isinstance(table, GroebnerRepresentation) and int(table.leaders[0]) != 0:
        violations.append("leaders[0] is not the zero word.")
    mapped = table.syndrome_index[syndromes.astype(np.int64)]
    if not np.array_equal(mapped, np.arange(table.num_cosets)):
        violations.append("Syndrome index disagrees with the coset representatives.")
    return violations


def check_sorted(table: CosetTable) -> List[str]:
    """Indices follow the weight order of the leaders."""
    violations = []
    weights = table.weights.astype(np.int64)
    if (np.diff(weights) < 0).any():
        violations.append("Leader weights decrease along coset indices.")
    if isinstance(table, GroebnerRepresentation):
        leaders = table.leaders
        same_weight = np.diff(weights) == 0
        if (leaders[1:][same_weight] <= leaders[:-1][same_weight]).any():
            violations.append("Equal-weight leaders are not in increasing order.")
    return violations


def check_order_ideal(rep: GroebnerRepresentation) -> List[str]:
    """Every leader minus any of its support positions is again a leader."""
    violations = []
    n = rep.n
    for j in range(n):
        bit = np.uint64(1 << (n - 1 - j))
        holders = rep.leaders[(rep.leaders & bit) != 0]
        if not len(holders):
            continue
        shrunk = holders ^ bit
        indices = rep.syndrome_index[rep.code.syndromes(shrunk).astype(np.int64)]
        representatives = rep.leaders[indices]
        missing = shrunk[representatives != shrunk]
        for word in missing[:5]:
            violations.append(
                f"{to_string(int(word) | int(bit), n)} minus position {j} is not a leader."
            )
    return violations


def check_phi_consistency(table: CosetTable) -> List[str]:
    """syndrome(rep(phi[i, j])) == syndrome(rep(i)) + column j of H."""
    syndromes = _table_syndromes(table)
    columns = np.array(table.code.column_syndromes, dtype=np.uint64)
    expected = syndromes[:, None] ^ columns[None, :]
    actual = syndromes[table.phi.astype(np.int64)]
    bad = np.argwhere(actual != expected)
    return [f"phi[{i}][{j}] points to the wrong coset." for i, j in bad[:5]]


def check_compact_weights(table: CosetTable) -> List[str]:
    """w[0] == 0 and one unit vector moves the leader weight by at most one."""
    weights = table.weights.astype(np.int64)
    violations = []
    if table.num_cosets and weights[0] != 0:
        violations.append("Coset 0 has nonzero leader weight.")
    jumps = np.abs(weights[table.phi.astype(np.int64)] - weights[:, None])
    if (jumps > 1).any():
        i, j = np.argwhere(jumps > 1)[0]
        violations.append(f"phi[{i}][{j}] changes the leader weight by more than one.")
    return violations


def _guard_exhaustive(n: int, force: bool) -> None:
    if n > EXHAUSTIVE_MAX_LENGTH:
        if not force:
            raise ScaleGuardError(
                f"Scanning 2**{n} words exceeds {EXHAUSTIVE_MAX_LENGTH=}; "
                f"pass force to override."
            )
        logger.warning(f"Forced scan of 2**{n} words.")


def check_leaders_bruteforce(rep: GroebnerRepresentation, force: bool = False) -> List[str]:
    """Compare every leader against the minimum of its coset over all 2**n words.

    Raises:
        ScaleGuardError: If n exceeds `EXHAUSTIVE_MAX_LENGTH` without `force`.
    """
    _guard_exhaustive(rep.n, force)
    words = all_words(rep.n)
    syndromes = rep.code.syndromes(words).astype(np.int64)
    by_order = np.lexsort((words, popcount(words)))  # weight first, then integer value
    _, first = np.unique(syndromes[by_order], return_index=True)
    minima = words[by_order][first]
    minima_syndromes = syndromes[by_order][first]
    stored = rep.leaders[rep.syndrome_index[minima_syndromes]]
    bad = np.flatnonzero(stored != minima)
    return [
        f"Coset of syndrome {int(minima_syndromes[b])} stores "
        f"{to_string(int(stored[b]), rep.n)} instead of {to_string(int(minima[b]), rep.n)}."
        for b in bad[:5]
    ]


def forward_step_indices(table: CosetTable, words: np.ndarray) -> np.ndarray:
    """Vectorised forward step: fold phi over the set bits of every word."""
    words = np.asarray(words, dtype=np.uint64)
    indices = np.zeros(words.shape, dtype=np.int64)
    for j in range(table.n):
        has_bit = ((words >> np.uint64(table.n - 1 - j)) & np.uint64(1)).astype(bool)
        indices = np.where(has_bit, table.phi[indices, j].astype(np.int64), indices)
    return indices


def check_forward_step(table: CosetTable, force: bool = False) -> List[str]:
    """Syndrome lookup and phi folding agree on all 2**n words."""
    _guard_exhaustive(table.n, force)
    words = all_words(table.n)
    by_syndrome = table.syndrome_index[table.code.syndromes(words).astype(np.int64)]
    by_phi = forward_step_indices(table, words)
    bad = np.flatnonzero(by_syndrome != by_phi)
    return [
        f"Forward step of {to_string(int(words[b]), table.n)} ends in coset "
        f"{int(by_phi[b])}, syndrome says {int(by_syndrome[b])}."
        for b in bad[:5]
    ]


def validate(table: AnyTable) -> None:
    """Run the structural checks that need no exhaustive scan.

    Raises:
        InvariantViolation: On the first violated invariant.
    """
    checks = [
        check_shapes,
        check_transversal,
        check_sorted,
        check_phi_consistency,
        check_compact_weights,
    ]
    if isinstance(table, GroebnerRepresentation):
        checks.append(check_order_ideal)
    for check in checks:
        violations = check(table)
        if violations:
            raise InvariantViolation(f"{check.__name__}: {violations[0]}")
    logger.debug(f"Table {table.fingerprint()} passed {len(checks)} checks.")
