"""Coset weight problems answered from the coset tables.

The modular integer program

    minimise  u_1 + ... + u_n   subject to  H u = b (mod 2),  u >= 0 integer

is solved by the coset leader of syndrome b. Reducing any feasible u modulo 2
keeps H u = b (mod 2) and never raises the objective, because every
coordinate u_j >= 2 drops by an even amount. So an optimum is attained at a
0/1 vector, that is at a word of the coset of b, and the cheapest such word
is its leader.

On a compact table the leader vector is gone; the backward descent from the
coset of b flips exactly w_b distinct positions whose columns sum to b, and
that set of positions is a minimum-weight word of the coset.
"""
import itertools
import logging
from typing import List, NamedTuple

from gf2.bitword import BitWord, Syndrome, unit
from gf2.errors import InvariantViolation, ScaleGuardError
from harness.constants import EXHAUSTIVE_MAX_LENGTH
from representation.groebner_representation import CosetTable, GroebnerRepresentation

logger = logging.getLogger()


class IPSolution(NamedTuple):
    value: int
    solution: BitWord


def _check_syndrome(table: CosetTable, s: Syndrome) -> None:
    if not 0 <= s < table.num_cosets:
        raise ValueError(f"Syndrome {s:#x} does not fit into {table.code.redundancy} bits.")


def syndrome_weight(table: CosetTable, s: Syndrome) -> int:
    """Leader weight of the coset with syndrome `s`."""
    _check_syndrome(table, s)
    return int(table.weights[table.syndrome_index[s]])


def cwp_query(table: CosetTable, s: Syndrome, t: int) -> bool:
    """Does the coset of syndrome `s` hold a word of weight at most `t`?"""
    return syndrome_weight(table, s) <= t


def ip_solve(table: CosetTable, b: Syndrome) -> IPSolution:
    """Minimise the weight of u subject to H u = b over the binary field.

    Returns:
        IPSolution: The optimal value w_b and a word attaining it; the stored
        leader for a full table, the descent reconstruction for a compact one.

    Raises:
        InvariantViolation: If the descent gets stuck on a compact table.
    """
    _check_syndrome(table, b)
    i = int(table.syndrome_index[b])
    if isinstance(table, GroebnerRepresentation):
        solution = table.leader(i)
        return IPSolution(solution.bit_count(), solution)
    value, solution = int(table.weights[i]), 0
    while i != 0:
        j = table.descent_position(i)
        if j is None:
            raise InvariantViolation(f"Coset {i} has no descent step.")
        solution ^= unit(j, table.n)
        i = int(table.phi[i, j])
    if solution.bit_count() != value:
        raise InvariantViolation(f"Descent for syndrome {b:#x} repeated a position.")
    return IPSolution(value, solution)


def covering_radius(table: CosetTable) -> int:
    """rho: the largest coset leader weight."""
    return int(table.weights.max())


def packing_radius(table: CosetTable) -> int:
    """t = (d - 1) // 2, read off the leader weight counts."""
    return table.packing_radius


def coset_minimum_words(table: CosetTable, s: Syndrome, force: bool = False) -> List[BitWord]:
    """Every minimum-weight word of the coset of syndrome `s`, increasing.

    More than one word means several coset leaders, the case in which the
    decoders clear their `unique` flag beyond the packing radius.

    Raises:
        ScaleGuardError: If n exceeds `EXHAUSTIVE_MAX_LENGTH` without `force`.
    """
    n = table.n
    if n > EXHAUSTIVE_MAX_LENGTH and not force:
        raise ScaleGuardError(
            f"Enumerating weight classes of length {n} exceeds {EXHAUSTIVE_MAX_LENGTH=}; "
            f"pass force to override."
        )
    w = syndrome_weight(table, s)
    words = []
    for positions in itertools.combinations(range(n), w):
        candidate = 0
        for j in positions:
            candidate |= unit(j, n)
        if table.code.syndrome(candidate) == s:
            words.append(candidate)
    return sorted(words)
