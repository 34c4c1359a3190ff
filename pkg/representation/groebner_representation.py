import hashlib
import heapq
import logging
import math
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Any, List, Optional, Tuple

import numpy as np

from gf2.binary_code import BinaryCode
from gf2.bitword import BitWord, WeightOrder, check_length, popcount, support, to_string
from gf2.errors import InvariantViolation, ScaleGuardError
from harness.constants import MAX_REDUNDANCY

logger = logging.getLogger()


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Common part of the full and the compact representation.

    Coset indices are dense integers 0..2**(n-k)-1 in increasing order of
    the coset leaders, so index 0 is the code itself and leader weights are
    non-decreasing along the indices.

    Attributes:
        code: The code whose cosets are tabulated.
        phi: Array of shape (2**(n-k), n); phi[i, j] is the index of the coset
            of leader(i) + e_j.
        syndrome_index: Array of size 2**(n-k) mapping a syndrome (as integer)
            to the index of its coset.
    """

    code: BinaryCode
    phi: np.ndarray
    syndrome_index: np.ndarray

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def num_cosets(self) -> int:
        return len(self.phi)

    # subclasses provide `weights`: uint8 leader weight per coset index

    @cached_property
    def coset_syndromes(self) -> np.ndarray:
        """Inverse of `syndrome_index`: the syndrome of every coset index."""
        inverse = np.empty(self.num_cosets, dtype=np.uint64)
        inverse[self.syndrome_index] = np.arange(self.num_cosets, dtype=np.uint64)
        return inverse

    @cached_property
    def packing_radius(self) -> int:
        """Largest t such that every word of weight <= t leads its coset.

        That holds exactly when the number of cosets of leader weight w equals
        C(n, w) for all w <= t, and then t = (d - 1) // 2.
        """
        counts = np.bincount(self.weights, minlength=self.n + 1)
        t = 0
        while t < self.n and int(counts[t + 1]) == math.comb(self.n, t + 1):
            t += 1
        return t

    def coset_index(self, w: BitWord) -> int:
        """Coset index of `w` by syndrome lookup."""
        return int(self.syndrome_index[self.code.syndrome(w)])

    def coset_index_by_phi(self, w: BitWord) -> int:
        """Coset index of `w` by folding phi over its set bits from index 0.

        This is the forward step of the reduction decoders and must agree with
        `coset_index` for every word.
        """
        check_length(w, self.n)
        i = 0
        for j in support(w, self.n):
            i = int(self.phi[i, j])
        return i

    def descent_position(self, i: int) -> Optional[int]:
        """Smallest position whose flip moves coset `i` to leader weight w_i - 1.

        Returns:
            Optional[int]: The position, or None for the zero coset and for
            tables violating the order-ideal property.
        """
        target = int(self.weights[i]) - 1
        if target < 0:
            return None
        drops = np.flatnonzero(self.weights[self.phi[i]] == target)
        return int(drops[0]) if len(drops) else None

    def fingerprint(self) -> str:
        """Short identifier of the tables, stable across save/load."""
        digest = hashlib.sha256(repr((self.n, self.k)).encode("utf-8"))
        for array in self._arrays():
            digest.update(np.ascontiguousarray(array).tobytes())
        return digest.hexdigest()[:8]

    def _arrays(self) -> Tuple[np.ndarray, ...]:
        return self.phi, self.syndrome_index

    def __eq__(self, other: Any) -> bool:
        if type(other) is not type(self):
            return False
        return self.code == other.code and all(
            np.array_equal(a, b) for a, b in zip(self._arrays(), other._arrays())
        )

    def __hash__(self) -> int:
        return hash((self.code, self.fingerprint()))


@dataclass(frozen=True, eq=False)
class GroebnerRepresentation(CosetTable):
    """The pair (N, phi): coset leaders in increasing weight order plus the
    full transition table.

    Attributes:
        leaders: uint64 array of size 2**(n-k), leaders[0] == 0, sorted
            increasingly under the weight order; every leader is the minimal
            element of its coset.
    """

    leaders: np.ndarray

    @cached_property
    def weights(self) -> np.ndarray:
        return popcount(self.leaders).astype(np.uint8)

    def leader(self, i: int) -> BitWord:
        return int(self.leaders[i])

    def _arrays(self) -> Tuple[np.ndarray, ...]:
        return self.phi, self.syndrome_index, self.leaders

    def __str__(self) -> str:
        formatted = f"Groebner representation of the {self.code}\n"
        formatted += f"Cosets: {self.num_cosets}\n"
        formatted += f"Covering radius: {int(self.weights.max())}\n"
        formatted += f"Fingerprint: {self.fingerprint()}\n"
        formatted += "-" * 40 + "\n"
        for i in range(min(self.num_cosets, 8)):
            formatted += f"#{i} leader {to_string(self.leader(i), self.n)}\n"
        if self.num_cosets > 8:
            formatted += f"... {self.num_cosets - 8} more cosets\n"
        return formatted


def _freeze(*arrays: np.ndarray) -> None:
    for array in arrays:
        array.setflags(write=False)


def build_representation(
    code: BinaryCode, order: Optional[WeightOrder] = None, force: bool = False
) -> GroebnerRepresentation:
    """Construct (N, phi) by a weight-ordered closure from the zero word.

    Phase 1 pops candidates from a min-priority queue under the weight order;
    the first word seen with a new syndrome is the leader of its coset and
    pushes its weight-increasing neighbours. Phase 2 fills phi by syndrome
    lookup of leader(i) + e_j.

    Args:
        code: The code.
        order: The degree compatible order; the default tie-break when None.
        force: Build even if n - k exceeds `MAX_REDUNDANCY`.

    Returns:
        GroebnerRepresentation: The representation, leaders in order.

    Raises:
        ScaleGuardError: If the table would exceed the configured cap.
        InvariantViolation: If the queue runs dry before all cosets are found.
    """
    n, m = code.n, code.redundancy
    if m > MAX_REDUNDANCY:
        if not force:
            raise ScaleGuardError(
                f"A table with 2**{m} cosets exceeds {MAX_REDUNDANCY=}; "
                f"pass force to override."
            )
        logger.warning(f"Forced build of a table with 2**{m} cosets.")
    order = order if order is not None else WeightOrder(n)
    if order.n != n:
        raise ValueError(f"Order on length {order.n} used for a code of length {n}.")
    start = time.perf_counter()
    num_cosets = code.num_cosets
    columns = code.column_syndromes
    seen = np.zeros(num_cosets, dtype=bool)
    leaders: List[BitWord] = []
    leader_syndromes: List[int] = []
    queue: List[Tuple[Tuple[int, int], BitWord, int]] = [(order.key(0), 0, 0)]
    pops = 0
    while queue and len(leaders) < num_cosets:
        _, v, s = heapq.heappop(queue)
        pops += 1
        if seen[s]:
            continue
        seen[s] = True
        leaders.append(v)
        leader_syndromes.append(s)
        for j in range(n):
            bit = 1 << (n - 1 - j)
            if v & bit:
                continue
            candidate_syndrome = s ^ columns[j]
            if not seen[candidate_syndrome]:  # a seen coset already has a smaller leader
                candidate = v | bit
                heapq.heappush(queue, (order.key(candidate), candidate, candidate_syndrome))
    if len(leaders) < num_cosets:
        raise InvariantViolation(
            f"Queue emptied after {len(leaders)} of {num_cosets} cosets."
        )
    logger.debug(f"Phase 1 popped {pops} candidates for {num_cosets} cosets.")

    leaders_array = np.array(leaders, dtype=np.uint64)
    syndromes = np.array(leader_syndromes, dtype=np.uint64)
    syndrome_index = np.empty(num_cosets, dtype=np.int64)
    syndrome_index[syndromes.astype(np.int64)] = np.arange(num_cosets, dtype=np.int64)
    column_array = np.array(columns, dtype=np.uint64)
    targets = (syndromes[:, None] ^ column_array[None, :]).astype(np.int64)
    phi = syndrome_index[targets].astype(np.uint32).reshape(num_cosets, n)
    _freeze(leaders_array, syndrome_index, phi)
    rep = GroebnerRepresentation(
        code=code, phi=phi, syndrome_index=syndrome_index, leaders=leaders_array
    )
    logger.info(
        f"Built representation of the {code}: {num_cosets} cosets in "
        f"{time.perf_counter() - start:.3f}s."
    )
    return rep
