import json
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from border.border import border_from_phi, min_red, reduce_border
from border.border_element import BorderElement, TestSet, TestSetKind
from border.minimal_codewords import minimal_codewords_bruteforce
from decoders.border_decoder import border_reduction
from decoders.decode_result import DecodeResult
from decoders.leader_decoders import compact_reduction_gdda, l_gdda, reduction_gdda
from decoders.ml_decoder import ml_bruteforce, ml_distances
from decoders.test_set_decoder import ts_gdda
from gf2.binary_code import BinaryCode
from gf2.bitword import BitWord, all_words, to_string
from gf2.errors import ScaleGuardError
from harness.channel import bsc_batch
from harness.constants import (
    EXHAUSTIVE_MAX_LENGTH,
    MAX_LISTED_MISMATCHES,
    RNG_ALGORITHM,
    SAMPLED_CHUNK_SIZE,
)
from representation.compact_representation import CompactRepresentation, compact
from representation.groebner_representation import (
    GroebnerRepresentation,
    build_representation,
)

logger = logging.getLogger()

# "ts" descends with all minimal codewords, "ts-minred" with Min_red only;
# "border" rewrites heads into tails over the reduced border
DECODER_NAMES: Tuple[str, ...] = ("ml", "l", "red", "compact", "border", "ts", "ts-minred")
_TABLE_DECODERS = frozenset({"l", "red", "compact", "border", "ts-minred"})


@dataclass(frozen=True)
class Exhaustive:
    """Every word of F_2^n is decoded once."""


@dataclass(frozen=True)
class Sampled:
    """`count` channel outputs with crossover `p`, replayable from `seed`.

    The zero codeword is sent unless `random_codewords` is set; by linearity
    of the code and symmetry of the channel the error statistics do not
    depend on the transmitted codeword.
    """

    count: int
    p: float
    seed: int
    random_codewords: bool = False


Mode = Union[Exhaustive, Sampled]


@dataclass
class DecoderStats:
    """Counters of one decoder, additive over chunks of inputs."""

    decoder: str
    test_set_size: Optional[int] = None
    trials: int = 0
    agreements: int = 0  # distance equal to the oracle distance
    total_steps: int = 0
    transmitted_trials: int = 0
    transmitted_successes: int = 0
    mismatches: List[BitWord] = field(default_factory=list)

    def record(
        self,
        received: BitWord,
        result: DecodeResult,
        oracle_distance: int,
        transmitted: Optional[BitWord] = None,
    ) -> None:
        self.trials += 1
        self.total_steps += len(result.steps)
        if result.distance == oracle_distance:
            self.agreements += 1
        elif len(self.mismatches) < MAX_LISTED_MISMATCHES:
            self.mismatches.append(received)
        if transmitted is not None:
            self.transmitted_trials += 1
            self.transmitted_successes += int(result.codeword == transmitted)

    def merge(self, other: "DecoderStats") -> None:
        self.trials += other.trials
        self.agreements += other.agreements
        self.total_steps += other.total_steps
        self.transmitted_trials += other.transmitted_trials
        self.transmitted_successes += other.transmitted_successes
        room = MAX_LISTED_MISMATCHES - len(self.mismatches)
        self.mismatches.extend(other.mismatches[:room])

    @property
    def mismatch_count(self) -> int:
        return self.trials - self.agreements

    @property
    def success_rate(self) -> Fraction:
        """Exact share of inputs decoded at the oracle distance."""
        return Fraction(self.agreements, self.trials) if self.trials else Fraction(1)

    @property
    def average_steps(self) -> Fraction:
        return Fraction(self.total_steps, self.trials) if self.trials else Fraction(0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "decoder": self.decoder,
            "trials": self.trials,
            "agreements": self.agreements,
            "success_rate": float(self.success_rate),
            "average_steps": float(self.average_steps),
            "test_set_size": self.test_set_size,
            "transmitted_trials": self.transmitted_trials,
            "transmitted_successes": self.transmitted_successes,
            "mismatch_count": self.mismatch_count,
            "mismatches": list(self.mismatches),
        }


@dataclass
class ExperimentReport:
    """Outcome of an equivalence run; rendering is deterministic given the
    seed as long as timings are left out."""

    code_id: str
    n: int
    k: int
    mode: str
    trials: int
    stats: Dict[str, DecoderStats]
    p: Optional[float] = None
    seed: Optional[int] = None
    random_codewords: bool = False
    rng: str = RNG_ALGORITHM
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def total_mismatches(self) -> int:
        return sum(s.mismatch_count for s in self.stats.values())

    def header(self) -> str:
        line = f"code={self.code_id} n={self.n} k={self.k} mode={self.mode} trials={self.trials}"
        if self.mode == "sampled":
            line += (
                f" p={self.p!r} seed={self.seed} random_codewords={int(self.random_codewords)}"
                f" rng={self.rng!r}"
            )
        return line

    def lines(self, timings: bool = False) -> List[str]:
        """Report as line-delimited key=value text."""
        lines = [self.header()]
        for s in self.stats.values():
            line = (
                f"decoder={s.decoder} trials={s.trials} agreements={s.agreements}"
                f" success={s.success_rate.numerator}/{s.success_rate.denominator}"
                f" rate={float(s.success_rate):.6f} avg_steps={float(s.average_steps):.4f}"
                f" test_set_size={'-' if s.test_set_size is None else s.test_set_size}"
                f" mismatches={s.mismatch_count}"
            )
            if s.transmitted_trials:
                line += f" transmitted={s.transmitted_successes}/{s.transmitted_trials}"
            lines.append(line)
        for s in self.stats.values():
            lines += [
                f"mismatch decoder={s.decoder} received={to_string(r, self.n)}"
                for r in s.mismatches
            ]
        if timings:
            lines += [f"time phase={phase} seconds={t:.6f}" for phase, t in self.timings.items()]
        lines.append(f"summary total_mismatches={self.total_mismatches}")
        return lines

    def to_json(self, timings: bool = False) -> str:
        data: Dict[str, object] = {
            "code": self.code_id,
            "n": self.n,
            "k": self.k,
            "mode": self.mode,
            "trials": self.trials,
            "p": self.p,
            "seed": self.seed,
            "random_codewords": self.random_codewords,
            "rng": self.rng,
            "decoders": [s.to_dict() for s in self.stats.values()],
            "total_mismatches": self.total_mismatches,
        }
        if timings:
            data["timings"] = self.timings
        return json.dumps(data, sort_keys=True)


_WORKER_EXPERIMENT: Optional["Experiment"] = None


def _init_worker(experiment: "Experiment") -> None:
    global _WORKER_EXPERIMENT
    _WORKER_EXPERIMENT = experiment


def _run_task(task: tuple) -> Dict[str, DecoderStats]:
    return _WORKER_EXPERIMENT.run_task(task)


class Experiment:
    """Cross-checks decoders of one code against the brute-force oracle.

    Tables and test sets are built once in `prepare`; inputs are split into
    chunks which run inline or on a pool of worker processes and whose
    counters are merged in chunk order.
    """

    def __init__(
        self,
        code: BinaryCode,
        decoders: Sequence[str],
        code_id: Optional[str] = None,
        force: bool = False,
        rep: Optional[GroebnerRepresentation] = None,
    ) -> None:
        unknown = [d for d in decoders if d not in DECODER_NAMES]
        if unknown or not decoders:
            raise ValueError(f"Unknown decoders {unknown}, choose from {DECODER_NAMES}.")
        self.code = code
        self.decoders: Tuple[str, ...] = tuple(dict.fromkeys(decoders))
        self.code_id = code_id if code_id is not None else f"[{code.n},{code.k}]"
        self.force = force
        if rep is not None and rep.code != code:
            raise ValueError(f"The representation belongs to the {rep.code}, not the {code}.")
        self.rep: Optional[GroebnerRepresentation] = rep
        self.compact: Optional[CompactRepresentation] = None
        self.test_sets: Dict[str, TestSet] = {}
        self.reduced_border: FrozenSet[BorderElement] = frozenset()
        self.timings: Dict[str, float] = {}
        self._prepared = False

    def prepare(self) -> None:
        start = time.perf_counter()
        if self.rep is None and _TABLE_DECODERS & set(self.decoders):
            self.rep = build_representation(self.code, force=self.force)
        if self.rep is not None:
            self.compact = compact(self.rep)
        if {"border", "ts-minred"} & set(self.decoders):
            self.reduced_border = reduce_border(border_from_phi(self.rep))
        if "ts" in self.decoders:
            self.test_sets["ts"] = minimal_codewords_bruteforce(self.code, force=self.force)
        if "ts-minred" in self.decoders:
            words = min_red(self.reduced_border).words
            self.test_sets["ts-minred"] = TestSet.for_code(self.code, words, TestSetKind.MIN_RED)
        self.timings["prepare"] = time.perf_counter() - start
        self._prepared = True

    def decode(self, decoder: str, r: BitWord) -> DecodeResult:
        match decoder:
            case "ml":
                return ml_bruteforce(self.code, r, force=self.force)
            case "l":
                return l_gdda(self.compact, r)
            case "red":
                return reduction_gdda(self.rep, r)
            case "compact":
                return compact_reduction_gdda(self.compact, r)
            case "border":
                return border_reduction(self.reduced_border, r)
            case "ts" | "ts-minred":
                return ts_gdda(self.test_sets[decoder], r)
            case _:
                raise ValueError(f"Unknown decoder {decoder!r}.")

    def _empty_stats(self) -> Dict[str, DecoderStats]:
        sizes = {d: len(test_set) for d, test_set in self.test_sets.items()}
        if "border" in self.decoders:
            sizes["border"] = len(self.reduced_border)
        return {d: DecoderStats(d, test_set_size=sizes.get(d)) for d in self.decoders}

    def evaluate(
        self, received: np.ndarray, transmitted: Optional[np.ndarray] = None
    ) -> Dict[str, DecoderStats]:
        oracle = ml_distances(self.code, received, force=self.force)
        stats = self._empty_stats()
        sent = transmitted.tolist() if transmitted is not None else None
        for index, r in enumerate(received.tolist()):
            for d in self.decoders:
                stats[d].record(
                    r, self.decode(d, r), int(oracle[index]), None if sent is None else sent[index]
                )
        return stats

    def run_task(self, task: tuple) -> Dict[str, DecoderStats]:
        match task:
            case ("exhaustive", start, stop):
                return self.evaluate(all_words(self.code.n)[start:stop])
            case ("sampled", size, p, seed_sequence, random_codewords):
                rng = Generator(Philox(seed_sequence))
                errors = bsc_batch(p, self.code.n, size, rng)
                sent = np.zeros(size, dtype=np.uint64)
                if random_codewords:
                    messages = rng.integers(0, 2, size=(size, self.code.k), dtype=np.uint8)
                    for i, row in enumerate(self.code.generator):
                        sent ^= np.where(messages[:, i] == 1, np.uint64(row), np.uint64(0))
                return self.evaluate(sent ^ errors, sent)
            case _:
                raise ValueError(f"Malformed task {task!r}.")

    def _tasks(self, mode: Mode) -> List[tuple]:
        match mode:
            case Exhaustive():
                if self.code.n > EXHAUSTIVE_MAX_LENGTH and not self.force:
                    raise ScaleGuardError(
                        f"Exhaustive run over 2**{self.code.n} words exceeds "
                        f"{EXHAUSTIVE_MAX_LENGTH=}; pass force to override."
                    )
                total = 1 << self.code.n
                return [
                    ("exhaustive", start, min(start + SAMPLED_CHUNK_SIZE, total))
                    for start in range(0, total, SAMPLED_CHUNK_SIZE)
                ]
            case Sampled(count=count, p=p, seed=seed, random_codewords=random_codewords):
                if count < 0:
                    raise ValueError(f"Trial count {count} is negative.")
                if not 0.0 <= p <= 1.0:
                    raise ValueError(f"Crossover probability {p} is outside [0, 1].")
                chunks = math.ceil(count / SAMPLED_CHUNK_SIZE)
                children = SeedSequence(seed).spawn(chunks)
                return [
                    (
                        "sampled",
                        min(SAMPLED_CHUNK_SIZE, count - index * SAMPLED_CHUNK_SIZE),
                        p,
                        child,
                        random_codewords,
                    )
                    for index, child in enumerate(children)
                ]
            case _:
                raise TypeError(f"Unsupported mode {mode!r}.")

    def run(self, mode: Mode, workers: int = 1) -> ExperimentReport:
        """Decode every input of `mode` with every decoder.

        Raises:
            ScaleGuardError: If the oracle, the tables or an exhaustive sweep
                exceed their caps without `force`.
        """
        tasks = self._tasks(mode)
        if not self._prepared:
            self.prepare()
        logger.info(f"Running {len(tasks)} chunks of the {self.code} on {workers} workers.")
        start = time.perf_counter()
        if workers > 1 and len(tasks) > 1:
            with Pool(workers, initializer=_init_worker, initargs=(self,)) as pool:
                partials = pool.map(_run_task, tasks)
        else:
            partials = [self.run_task(task) for task in tasks]
        self.timings["decode"] = time.perf_counter() - start
        stats = self._empty_stats()
        for partial in partials:
            for d in self.decoders:
                stats[d].merge(partial[d])
        report = ExperimentReport(
            code_id=self.code_id,
            n=self.code.n,
            k=self.code.k,
            mode="exhaustive" if isinstance(mode, Exhaustive) else "sampled",
            trials=sum(s.trials for s in stats.values()) // len(stats),
            stats=stats,
            timings=dict(self.timings),
        )
        if isinstance(mode, Sampled):
            report.p, report.seed = mode.p, mode.seed
            report.random_codewords = mode.random_codewords
        self.summarize(report)
        return report

    def summarize(self, report: ExperimentReport) -> None:
        logger.info(f"Summarizing experiment on {report.code_id}...")
        for s in report.stats.values():
            logger.info(
                f"{s.decoder}: {s.agreements}/{s.trials} at oracle distance, "
                f"{float(s.average_steps):.3f} steps on average."
            )
        minred = report.stats.get("ts-minred")
        if minred is not None and minred.mismatch_count:
            logger.warning(
                f"Finding: weight-only descent with Min_red missed the oracle distance on "
                f"{minred.mismatch_count} inputs of {report.code_id}."
            )


def run_equivalence(
    code: BinaryCode,
    decoders: Sequence[str],
    mode: Mode,
    code_id: Optional[str] = None,
    workers: int = 1,
    force: bool = False,
    rep: Optional[GroebnerRepresentation] = None,
) -> ExperimentReport:
    """Compare each decoder's distance with the brute-force oracle on every
    input of `mode`. Table decoders read `rep` when given (a loaded file, say)
    and a fresh build otherwise."""
    experiment = Experiment(code, decoders, code_id=code_id, force=force, rep=rep)
    return experiment.run(mode, workers=workers)
