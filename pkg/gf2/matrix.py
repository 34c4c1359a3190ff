"""GF(2) matrix algebra on packed rows.

A matrix is a sequence of row words (see `gf2.bitword`) together with its
number of columns; column 0 is the most significant bit of every row.
"""
from typing import List, Sequence, Tuple

from gf2.bitword import BitWord, to_string
from gf2.errors import CodeFormatError


def _bit(row: BitWord, col: int, n_cols: int) -> int:
    return (row >> (n_cols - 1 - col)) & 1


def rref(rows: Sequence[BitWord], n_cols: int) -> Tuple[List[BitWord], int, List[int]]:
    """Row-reduce a matrix over GF(2) by word-wide XOR.

    Args:
        rows: The matrix rows.
        n_cols: The number of columns.

    Returns:
        Tuple[List[BitWord], int, List[int]]: The reduced row echelon form
        (zero rows kept at the bottom), the rank and the pivot columns.
    """
    work = list(rows)
    pivots: List[int] = []
    row_idx = 0
    for col in range(n_cols):
        if row_idx == len(work):
            break
        pivot = next(
            (r for r in range(row_idx, len(work)) if _bit(work[r], col, n_cols)), None
        )
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and _bit(work[r], col, n_cols):
                work[r] ^= work[row_idx]
        pivots.append(col)
        row_idx += 1
    return work, len(pivots), pivots


def rank(rows: Sequence[BitWord], n_cols: int) -> int:
    return rref(rows, n_cols)[1]


def null_space(rows: Sequence[BitWord], n_cols: int) -> List[BitWord]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column.

    For a systematic input [I | A] the result is [A^T | I].
    """
    reduced, r, pivots = rref(rows, n_cols)
    free_cols = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for free in free_cols:
        vector = 1 << (n_cols - 1 - free)
        for row_idx, pivot in enumerate(pivots):
            if _bit(reduced[row_idx], free, n_cols):
                vector |= 1 << (n_cols - 1 - pivot)
        basis.append(vector)
    return basis


def parity_check_from_generator(generator: Sequence[BitWord], n: int) -> List[BitWord]:
    """Derive a parity-check matrix H with G.H^T = 0 from a full-rank G.

    Raises:
        CodeFormatError: If `generator` is rank deficient.
    """
    if rank(generator, n) != len(generator):
        raise CodeFormatError(
            f"Generator matrix with {len(generator)} rows is rank deficient."
        )
    return null_space(generator, n)


def generator_from_parity_check(parity_check: Sequence[BitWord], n: int) -> List[BitWord]:
    """Derive a generator matrix G with G.H^T = 0 from a full-rank H.

    Raises:
        CodeFormatError: If `parity_check` is rank deficient.
    """
    if rank(parity_check, n) != len(parity_check):
        raise CodeFormatError(
            f"Parity-check matrix with {len(parity_check)} rows is rank deficient."
        )
    return null_space(parity_check, n)


def is_orthogonal(a: Sequence[BitWord], b: Sequence[BitWord]) -> bool:
    """True when A.B^T = 0 over GF(2)."""
    return all((x & y).bit_count() % 2 == 0 for x in a for y in b)


def to_strings(rows: Sequence[BitWord], n_cols: int) -> List[str]:
    return [to_string(row, n_cols) for row in rows]
