"""Coset-leader gradient descent decoders.

All three decoders walk from the coset of the received word down to the code
itself, flipping one position per step so that the coset leader weight drops
by exactly one. The first position (in index order) achieving the drop is
taken, so the three produce identical codewords and traces; they differ in how
the starting coset is found and which table the descent reads.

A strictly descending position always exists at a nonzero coset: removing any
support position of its leader gives another leader (the leaders form an
order ideal) of weight one less.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from decoders.decode_result import Algorithm, DecodeResult
from gf2.bitword import BitWord, check_length, popcount, unit
from gf2.errors import InvariantViolation
from representation.compact_representation import CompactRepresentation
from representation.groebner_representation import CosetTable, GroebnerRepresentation

logger = logging.getLogger()


def _descend(table: CosetTable, i: int, r: BitWord) -> Tuple[BitWord, List[int]]:
    steps = []
    while i != 0:
        j = table.descent_position(i)
        if j is None:
            raise InvariantViolation(
                f"Coset {i} of leader weight {int(table.weights[i])} has no descent step."
            )
        r ^= unit(j, table.n)
        i = int(table.phi[i, j])
        steps.append(j)
    return r, steps


def _result(
    table: CosetTable,
    r: BitWord,
    codeword: BitWord,
    steps: List[int],
    leader_weight: int,
    t: Optional[int],
    algorithm: Algorithm,
) -> DecodeResult:
    threshold = table.packing_radius if t is None else t
    error = r ^ codeword
    if error.bit_count() != leader_weight:
        raise InvariantViolation(
            f"Descent ended at distance {error.bit_count()}, coset weight is {leader_weight}."
        )
    return DecodeResult(
        codeword=codeword,
        error=error,
        distance=leader_weight,
        steps=tuple(steps),
        unique=leader_weight <= threshold,
        algorithm=algorithm,
    )


def l_gdda(table: CosetTable, r: BitWord, t: Optional[int] = None) -> DecodeResult:
    """Leader descent: start at the coset of `r` by syndrome lookup and move
    across cosets until the zero coset is reached.

    Args:
        table: A compact (or full) representation.
        r: The received word.
        t: Correctability threshold for the `unique` flag; the packing radius
            of the table when None.

    Raises:
        InvariantViolation: If a nonzero coset offers no descending step.
    """
    check_length(r, table.n)
    i = table.coset_index(r)
    codeword, steps = _descend(table, i, r)
    logger.debug(f"l-GDDA flipped {steps} from coset {i}.")
    return _result(table, r, codeword, steps, int(table.weights[i]), t, Algorithm.L_GDDA)


def reduction_gdda(
    rep: GroebnerRepresentation, r: BitWord, t: Optional[int] = None
) -> DecodeResult:
    """(N, phi)-reduction: the forward step folds phi over the set bits of
    `r` to reach the leader n of its coset; the backward step walks n down to
    the zero word, reading leader weights from the stored leader vectors.

    Raises:
        InvariantViolation: If a nonzero leader offers no descending step.
    """
    check_length(r, rep.n)
    i = rep.coset_index_by_phi(r)
    leader = rep.leader(i)
    start_weight = leader.bit_count()
    codeword, steps = r, []
    while leader != 0:
        neighbour_weights = popcount(rep.leaders[rep.phi[i]])
        drops = np.flatnonzero(neighbour_weights == leader.bit_count() - 1)
        if not len(drops):
            raise InvariantViolation(f"Leader {leader:#x} has no descent step.")
        j = int(drops[0])
        codeword ^= unit(j, rep.n)
        i = int(rep.phi[i, j])
        leader = rep.leader(i)
        steps.append(j)
    return _result(rep, r, codeword, steps, start_weight, t, Algorithm.REDUCTION)


def compact_reduction_gdda(
    compact: CompactRepresentation, r: BitWord, t: Optional[int] = None
) -> DecodeResult:
    """(N*, phi*)-reduction: the forward step folds phi* over the set bits of
    `r` giving the coset index l and its weight w_l; `unique` is w_l <= t.
    The backward step is the leader descent.

    Raises:
        InvariantViolation: If a nonzero coset offers no descending step.
    """
    check_length(r, compact.n)
    index = compact.coset_index_by_phi(r)
    leader_weight = int(compact.weights[index])
    codeword, steps = _descend(compact, index, r)
    return _result(
        compact, r, codeword, steps, leader_weight, t, Algorithm.COMPACT_REDUCTION
    )


def decode_batch(table: CosetTable, words: np.ndarray) -> np.ndarray:
    """Vectorised leader descent over an array of received words.

    Uses the same smallest-position policy as `l_gdda`, so the returned
    codewords are identical to decoding word by word.

    Raises:
        InvariantViolation: If a nonzero coset offers no descending step.
    """
    current = np.array(words, dtype=np.uint64)
    indices = table.syndrome_index[table.code.syndromes(current).astype(np.int64)]
    weights = table.weights.astype(np.int64)
    active = np.flatnonzero(indices != 0)
    while len(active):
        i = indices[active]
        drops = weights[table.phi[i].astype(np.int64)] == (weights[i] - 1)[:, None]
        if not drops.any(axis=1).all():
            raise InvariantViolation("A nonzero coset has no descent step.")
        positions = np.argmax(drops, axis=1)
        shifts = (table.n - 1 - positions).astype(np.uint64)
        current[active] ^= np.left_shift(np.uint64(1), shifts)
        indices[active] = table.phi[i, positions]
        active = active[indices[active] != 0]
    return current
