"""Binary `.grep` files for full and compact representations.

Layout, little-endian unless noted:

    magic      4 bytes  b"GREP"
    version    u16
    n, k       u16, u16
    flags      u8       0 = full (N, phi), 1 = compact (N*, phi*)
    G rows     k * ceil(n/8) bytes, each row big-endian
    H rows     (n-k) * ceil(n/8) bytes, each row big-endian
    leaders    full only: 2**(n-k) * ceil(n/8) bytes, index order, big-endian
    weights    compact only: 2**(n-k) bytes
    phi        2**(n-k) * n entries, u32 each
    crc32      u32 over everything above
"""
import logging
import struct
import zlib
from pathlib import Path
from typing import Union

import numpy as np

from gf2.binary_code import BinaryCode
from gf2.errors import CodeFormatError, RepresentationFormatError
from harness.constants import FORMAT_MAGIC, FORMAT_VERSION, MAX_WORD_LENGTH
from representation.compact_representation import (
    CompactRepresentation,
    reconstruct_syndrome_index,
)
from representation.groebner_representation import GroebnerRepresentation, _freeze
from representation.representation_utils import AnyTable, validate

logger = logging.getLogger()

_HEADER = struct.Struct("<4sHHHB")
_CRC = struct.Struct("<I")
FLAG_FULL = 0
FLAG_COMPACT = 1


def _row_bytes(n: int) -> int:
    return (n + 7) // 8


def _pack_words(words: np.ndarray, n: int) -> bytes:
    width = _row_bytes(n)
    big_endian = np.asarray(words, dtype=np.uint64).astype(">u8").view(np.uint8)
    return big_endian.reshape(-1, 8)[:, 8 - width :].tobytes()


def _unpack_words(data: bytes, count: int, n: int) -> np.ndarray:
    width = _row_bytes(n)
    padded = np.zeros((count, 8), dtype=np.uint8)
    padded[:, 8 - width :] = np.frombuffer(data, dtype=np.uint8).reshape(count, width)
    return padded.view(">u8").reshape(count).astype(np.uint64)


def dumps(table: AnyTable) -> bytes:
    code = table.code
    is_full = isinstance(table, GroebnerRepresentation)
    parts = [
        _HEADER.pack(
            FORMAT_MAGIC, FORMAT_VERSION, code.n, code.k, FLAG_FULL if is_full else FLAG_COMPACT
        ),
        _pack_words(np.array(code.generator, dtype=np.uint64), code.n),
        _pack_words(np.array(code.parity_check, dtype=np.uint64), code.n),
    ]
    if is_full:
        parts.append(_pack_words(table.leaders, code.n))
    else:
        parts.append(np.asarray(table.weights, dtype=np.uint8).tobytes())
    parts.append(np.asarray(table.phi, dtype="<u4").tobytes())
    body = b"".join(parts)
    return body + _CRC.pack(zlib.crc32(body))


class _Reader:
    """Cursor over the file body that fails on truncation."""

    def __init__(self, data: bytes) -> None:
        self.data = data
        self.offset = 0

    def take(self, size: int, what: str) -> bytes:
        if self.offset + size > len(self.data):
            raise RepresentationFormatError(
                f"Truncated file: {what} needs {size} bytes at offset {self.offset}, "
                f"{len(self.data) - self.offset} left."
            )
        chunk = self.data[self.offset : self.offset + size]
        self.offset += size
        return chunk


def loads(data: bytes, trusted: bool = False) -> AnyTable:
    """Parse a representation file.

    Args:
        data: The file contents.
        trusted: Skip the invariant revalidation.

    Returns:
        AnyTable: A GroebnerRepresentation or a CompactRepresentation.

    Raises:
        RepresentationFormatError: On bad magic, version, flags or dimensions,
            truncation, trailing bytes or checksum mismatch.
        InvariantViolation: If a loaded table violates its invariants.
    """
    if len(data) < _HEADER.size + _CRC.size:
        raise RepresentationFormatError(f"Truncated file: only {len(data)} bytes.")
    body, (crc,) = data[: -_CRC.size], _CRC.unpack(data[-_CRC.size :])
    reader = _Reader(body)
    magic, version, n, k, flags = _HEADER.unpack(reader.take(_HEADER.size, "header"))
    if magic != FORMAT_MAGIC:
        raise RepresentationFormatError(f"Bad magic {magic!r}, expected {FORMAT_MAGIC!r}.")
    if version != FORMAT_VERSION:
        raise RepresentationFormatError(
            f"Format version {version} is not supported, expected {FORMAT_VERSION}."
        )
    if flags not in (FLAG_FULL, FLAG_COMPACT):
        raise RepresentationFormatError(f"Unknown flags byte {flags}.")
    if not 1 <= k <= n:
        raise RepresentationFormatError(f"Invalid dimensions n={n}, k={k}.")
    if n > MAX_WORD_LENGTH:
        raise RepresentationFormatError(f"Word length {n} exceeds {MAX_WORD_LENGTH=}.")
    width, num_cosets = _row_bytes(n), 1 << (n - k)
    generator = _unpack_words(reader.take(k * width, "generator"), k, n)
    parity_check = _unpack_words(reader.take((n - k) * width, "parity check"), n - k, n)
    if flags == FLAG_FULL:
        leaders = _unpack_words(reader.take(num_cosets * width, "leaders"), num_cosets, n)
    else:
        weights = np.frombuffer(reader.take(num_cosets, "weights"), dtype=np.uint8).copy()
    phi_bytes = reader.take(num_cosets * n * 4, "phi")
    if reader.offset != len(body):
        raise RepresentationFormatError(f"{len(body) - reader.offset} trailing bytes.")
    if zlib.crc32(body) != crc:
        raise RepresentationFormatError("CRC32 mismatch: file is corrupted.")
    phi = np.frombuffer(phi_bytes, dtype="<u4").astype(np.uint32).reshape(num_cosets, n)
    try:
        code = BinaryCode(
            n=n,
            k=k,
            generator=tuple(int(row) for row in generator),
            parity_check=tuple(int(row) for row in parity_check),
        )
    except CodeFormatError as e:
        raise RepresentationFormatError(f"Stored code is invalid: {e}") from e
    if flags == FLAG_FULL:
        syndrome_index = np.zeros(num_cosets, dtype=np.int64)
        syndromes = code.syndromes(leaders).astype(np.int64)
        syndrome_index[syndromes] = np.arange(num_cosets, dtype=np.int64)
        _freeze(leaders, phi, syndrome_index)
        table: AnyTable = GroebnerRepresentation(
            code=code, phi=phi, syndrome_index=syndrome_index, leaders=leaders
        )
    else:
        if int(phi.max(initial=0)) >= num_cosets:
            raise RepresentationFormatError("phi refers to a coset beyond the table.")
        syndrome_index = reconstruct_syndrome_index(code, weights, phi)
        _freeze(weights, phi, syndrome_index)
        table = CompactRepresentation(
            code=code, phi=phi, syndrome_index=syndrome_index, weights=weights
        )
    if trusted:
        logger.info(f"Loaded {table.fingerprint()} without revalidation.")
    else:
        validate(table)
    return table


def save(table: AnyTable, path: Union[str, Path]) -> None:
    Path(path).write_bytes(dumps(table))
    logger.info(f"Saved representation {table.fingerprint()} to {path}.")


def load_file(path: Union[str, Path], trusted: bool = False) -> AnyTable:
    return loads(Path(path).read_bytes(), trusted=trusted)
