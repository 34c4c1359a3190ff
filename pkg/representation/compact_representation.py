import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from gf2.binary_code import BinaryCode
from gf2.errors import InvariantViolation
from representation.groebner_representation import (
    CosetTable,
    GroebnerRepresentation,
    _freeze,
)

logger = logging.getLogger()


@dataclass(frozen=True, eq=False)
class CompactRepresentation(CosetTable):
    """The pair (N*, phi*): only the leader weight of every coset index is
    kept, the leader vectors themselves are dropped.

    Attributes:
        weights: uint8 array, weights[0] == 0, non-decreasing along indices.
    """

    weights: np.ndarray

    def _arrays(self) -> Tuple[np.ndarray, ...]:
        return self.phi, self.syndrome_index, self.weights

    def __str__(self) -> str:
        histogram = np.bincount(self.weights, minlength=int(self.weights.max()) + 1)
        formatted = f"Compact representation of the {self.code}\n"
        formatted += f"Cosets: {self.num_cosets}\n"
        formatted += f"Covering radius: {int(self.weights.max())}\n"
        formatted += f"Fingerprint: {self.fingerprint()}\n"
        formatted += "-" * 40 + "\n"
        for w, count in enumerate(histogram):
            formatted += f"leader weight {w}: {int(count)} cosets\n"
        return formatted


def compact(rep: GroebnerRepresentation) -> CompactRepresentation:
    """Drop the leader vectors of `rep`, keeping indices, weights and phi."""
    weights = np.array(rep.weights, dtype=np.uint8)
    _freeze(weights)
    return CompactRepresentation(
        code=rep.code, phi=rep.phi, syndrome_index=rep.syndrome_index, weights=weights
    )


def reconstruct_syndrome_index(
    code: BinaryCode, weights: np.ndarray, phi: np.ndarray
) -> np.ndarray:
    """Recover the syndrome of every coset index from (N*, phi*) and H.

    Every nonzero coset i has a parent phi[i, j] of weight w_i - 1 and the
    syndrome of i is the parent's syndrome plus column j of H. Parents have
    smaller weight, so processing weight layers upward fills the table.

    Returns:
        np.ndarray: The syndrome -> coset index map.

    Raises:
        InvariantViolation: If a coset has no parent or syndromes collide.
    """
    num_cosets = len(weights)
    columns = np.array(code.column_syndromes, dtype=np.uint64)
    syndromes = np.zeros(num_cosets, dtype=np.uint64)
    weights = weights.astype(np.int64)
    for w in range(1, int(weights.max()) + 1 if num_cosets else 1):
        layer = np.flatnonzero(weights == w)
        if not len(layer):
            continue
        drops = weights[phi[layer]] == w - 1
        if not drops.any(axis=1).all():
            orphan = int(layer[~drops.any(axis=1)][0])
            raise InvariantViolation(f"Coset {orphan} of weight {w} has no descent step.")
        positions = np.argmax(drops, axis=1)
        parents = phi[layer, positions]
        syndromes[layer] = syndromes[parents] ^ columns[positions]
    syndrome_index = np.full(num_cosets, -1, dtype=np.int64)
    syndrome_index[syndromes.astype(np.int64)] = np.arange(num_cosets, dtype=np.int64)
    if (syndrome_index < 0).any():
        raise InvariantViolation("Reconstructed coset syndromes are not distinct.")
    return syndrome_index
