"""Timing tables: table build cost against n - k and decode latency per
algorithm. Only the timing columns vary between runs with equal seeds."""
import logging
import time
import zlib
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np
from numpy.random import Generator, Philox

from border.minimal_codewords import minimal_codewords_bruteforce
from decoders.leader_decoders import (
    compact_reduction_gdda,
    decode_batch,
    l_gdda,
    reduction_gdda,
)
from decoders.ml_decoder import ml_bruteforce
from decoders.test_set_decoder import ts_gdda
from gf2.binary_code import BinaryCode
from harness.channel import bsc_batch
from harness.named_codes import random_code
from representation.compact_representation import compact
from representation.groebner_representation import build_representation

logger = logging.getLogger()

LATENCY_ALGORITHMS = ("batch", "l", "red", "compact", "ts", "ml")


@dataclass(frozen=True)
class BuildRow:
    n: int
    k: int
    cosets: int
    covering_radius: int
    phi_bytes: int
    seconds: float

    def line(self, timings: bool) -> str:
        line = (
            f"build n={self.n} k={self.k} redundancy={self.n - self.k} cosets={self.cosets}"
            f" covering_radius={self.covering_radius} phi_bytes={self.phi_bytes}"
        )
        return line + (f" seconds={self.seconds:.6f}" if timings else "")


@dataclass(frozen=True)
class LatencyRow:
    algorithm: str
    words: int
    checksum: int  # crc32 of the decoded codewords
    seconds: float

    @property
    def words_per_second(self) -> float:
        return self.words / self.seconds if self.seconds > 0 else float("inf")

    def line(self, timings: bool) -> str:
        line = f"decode algorithm={self.algorithm} words={self.words} checksum={self.checksum:08x}"
        if timings:
            line += f" seconds={self.seconds:.6f} words_per_second={self.words_per_second:.0f}"
        return line


def bench_build(
    redundancies: Sequence[int], k: int, seed: int, force: bool = False
) -> List[BuildRow]:
    """Build the tables of one random [k + m, k] code per redundancy m."""
    rows = []
    for m in redundancies:
        code = random_code(k + m, k, seed)
        start = time.perf_counter()
        rep = build_representation(code, force=force)
        seconds = time.perf_counter() - start
        rows.append(
            BuildRow(
                n=code.n,
                k=code.k,
                cosets=rep.num_cosets,
                covering_radius=int(rep.weights.max()),
                phi_bytes=rep.phi.nbytes,
                seconds=seconds,
            )
        )
        logger.info(f"Built the {code} in {seconds:.3f}s.")
    return rows


def bench_decode(
    code: BinaryCode,
    algorithms: Sequence[str],
    count: int,
    p: float,
    seed: int,
    force: bool = False,
) -> List[LatencyRow]:
    """Decode the same `count` channel outputs with every algorithm."""
    unknown = [a for a in algorithms if a not in LATENCY_ALGORITHMS]
    if unknown:
        raise ValueError(f"Unknown algorithms {unknown}, choose from {LATENCY_ALGORITHMS}.")
    rep = build_representation(code, force=force)
    table = compact(rep)
    received = bsc_batch(p, code.n, count, Generator(Philox(seed)))
    single: Dict[str, Callable[[int], int]] = {
        "l": lambda r: l_gdda(table, r).codeword,
        "red": lambda r: reduction_gdda(rep, r).codeword,
        "compact": lambda r: compact_reduction_gdda(table, r).codeword,
        "ml": lambda r: ml_bruteforce(code, r, force=force).codeword,
    }
    if "ts" in algorithms:
        test_set = minimal_codewords_bruteforce(code, force=force)
        single["ts"] = lambda r: ts_gdda(test_set, r).codeword
    rows = []
    for algorithm in algorithms:
        start = time.perf_counter()
        if algorithm == "batch":
            decoded = decode_batch(table, received)
        else:
            decoded = np.array([single[algorithm](r) for r in received.tolist()], dtype=np.uint64)
        seconds = time.perf_counter() - start
        rows.append(LatencyRow(algorithm, count, zlib.crc32(decoded.tobytes()), seconds))
        logger.info(f"{algorithm} decoded {count} words in {seconds:.3f}s.")
    return rows
