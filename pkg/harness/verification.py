"""The invariant suite behind the `verify` command.

Each check yields a CheckResult; brute-force checks beyond their caps are
reported as skipped unless forced. Findings are informational results that
never fail the suite.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from border.border import (
    border_by_definition,
    border_from_phi,
    check_reduced_border,
    reduce_border,
)
from border.minimal_codewords import minimal_codewords_bruteforce, verify_min_red_containment
from decoders.coset_problems import cwp_query, ip_solve
from decoders.leader_decoders import (
    compact_reduction_gdda,
    decode_batch,
    l_gdda,
    reduction_gdda,
)
from decoders.ml_decoder import ml_bruteforce
from decoders.test_set_decoder import ts_gdda
from gf2.binary_code import BinaryCode
from gf2.bitword import all_words, popcount, to_string
from gf2.errors import InvariantViolation, ScaleGuardError
from harness.constants import EXHAUSTIVE_MAX_LENGTH
from harness.experiment import Exhaustive, run_equivalence
from representation import representation_io
from representation.compact_representation import CompactRepresentation, compact
from representation.groebner_representation import (
    GroebnerRepresentation,
    build_representation,
)
from representation.representation_utils import (
    check_compact_weights,
    check_forward_step,
    check_leaders_bruteforce,
    check_order_ideal,
    check_phi_consistency,
    check_shapes,
    check_sorted,
    check_transversal,
)

logger = logging.getLogger()


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: Tuple[str, ...] = ()
    skipped: bool = False
    finding: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIP"
        if self.finding:
            return "INFO"
        return "PASS" if self.passed else "FAIL"


@dataclass
class VerificationReport:
    code_id: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]


def _exhaustive_words(n: int, force: bool) -> np.ndarray:
    if n > EXHAUSTIVE_MAX_LENGTH and not force:
        raise ScaleGuardError(f"Scanning 2**{n} words exceeds {EXHAUSTIVE_MAX_LENGTH=}.")
    return all_words(n)


def check_decoder_agreement(
    rep: GroebnerRepresentation, table: CompactRepresentation, force: bool = False
) -> List[str]:
    """l, red, compact and the batch descent return one codeword per word."""
    words = _exhaustive_words(rep.n, force)
    batch = decode_batch(table, words)
    violations = []
    for index, r in enumerate(words.tolist()):
        codewords = {
            l_gdda(table, r).codeword,
            reduction_gdda(rep, r).codeword,
            compact_reduction_gdda(table, r).codeword,
            int(batch[index]),
        }
        if len(codewords) != 1:
            violations.append(f"Decoders disagree on {to_string(r, rep.n)}.")
            if len(violations) >= 5:
                break
    return violations


def check_unique_decoding(
    rep: GroebnerRepresentation, table: CompactRepresentation, force: bool = False
) -> List[str]:
    """Errors within the packing radius come back as the sent codeword with
    the `unique` flag, for every decoder."""
    code, n, t = rep.code, rep.n, rep.packing_radius
    minimal = minimal_codewords_bruteforce(code, force=force)
    sent_words = sorted({0, code.generator[0]})
    errors = [int(e) for e in _exhaustive_words(n, force) if int(e).bit_count() <= t]
    decoders: List[Tuple[str, Callable]] = [
        ("ml", lambda r: ml_bruteforce(code, r, force=force)),
        ("l", lambda r: l_gdda(table, r)),
        ("red", lambda r: reduction_gdda(rep, r)),
        ("compact", lambda r: compact_reduction_gdda(table, r)),
        ("ts", lambda r: ts_gdda(minimal, r)),
    ]
    violations = []
    for c in sent_words:
        for e in errors:
            for name, decode in decoders:
                result = decode(c ^ e)
                if result.codeword != c or not result.unique:
                    violations.append(
                        f"{name} decodes {to_string(c ^ e, n)} to "
                        f"{to_string(result.codeword, n)} unique={result.unique}."
                    )
    return violations[:5]


def check_coset_problems(table: CompactRepresentation, force: bool = False) -> List[str]:
    """ip_solve matches the lightest word of every coset and cwp_query is its
    threshold test."""
    words = _exhaustive_words(table.n, force)
    syndromes = table.code.syndromes(words).astype(np.int64)
    lightest = np.full(table.num_cosets, table.n + 1, dtype=np.int64)
    np.minimum.at(lightest, syndromes, popcount(words))
    violations = []
    for s in range(table.num_cosets):
        value, solution = ip_solve(table, s)
        if value != int(lightest[s]) or table.code.syndrome(solution) != s:
            violations.append(f"ip_solve({s}) = {value}, brute force says {int(lightest[s])}.")
        if any(cwp_query(table, s, t) != (value <= t) for t in range(table.n + 1)):
            violations.append(f"cwp_query disagrees with ip_solve at syndrome {s}.")
    return violations[:5]


def check_round_trip(rep: GroebnerRepresentation, table: CompactRepresentation) -> List[str]:
    violations = []
    for original in (rep, table):
        loaded = representation_io.loads(representation_io.dumps(original))
        if loaded != original:
            violations.append(f"{type(original).__name__} changed across save and load.")
    return violations


def check_border_equivalence(rep: GroebnerRepresentation, force: bool = False) -> List[str]:
    """The border read off phi equals the border by definition."""
    from_phi = border_from_phi(rep)
    by_definition = border_by_definition(rep.code, rep.leaders.tolist(), force=force)
    if from_phi == by_definition:
        return []
    return [
        f"{len(from_phi - by_definition)} elements only from phi, "
        f"{len(by_definition - from_phi)} only by definition."
    ]


def check_equivalence(
    code: BinaryCode, rep: Optional[GroebnerRepresentation] = None, force: bool = False
) -> List[str]:
    """Leader descents, border reduction and test-set descent reach the oracle
    distance on all words, reading the tables of `rep` when given."""
    decoders = ["l", "red", "compact", "border", "ts"]
    report = run_equivalence(code, decoders, Exhaustive(), force=force, rep=rep)
    return [
        f"{s.decoder} missed the oracle distance on {s.mismatch_count} words."
        for s in report.stats.values()
        if s.mismatch_count
    ]


def _run(name: str, check: Callable[[], List[str]], finding: bool = False) -> CheckResult:
    try:
        details = check()
    except ScaleGuardError as e:
        logger.info(f"Skipping {name}: {e}")
        return CheckResult(name, passed=True, details=(str(e),), skipped=True)
    except InvariantViolation as e:
        return CheckResult(name, passed=False, details=(str(e),))
    if finding:
        return CheckResult(name, passed=True, details=tuple(details), finding=True)
    return CheckResult(name, passed=not details, details=tuple(details))


def run_verification(
    code: BinaryCode,
    rep: Optional[GroebnerRepresentation] = None,
    code_id: Optional[str] = None,
    force: bool = False,
) -> VerificationReport:
    """Run every invariant of the tables, borders and decoders of `code`.

    Args:
        code: The code under test.
        rep: A prebuilt (possibly loaded) representation; built when None.
        code_id: Label of the code in the report.
        force: Lift the brute-force caps instead of skipping.
    """
    rep = rep if rep is not None else build_representation(code, force=force)
    table = compact(rep)
    report = VerificationReport(code_id if code_id is not None else str(code))
    checks: List[Tuple[str, Callable[[], List[str]]]] = [
        ("shapes", lambda: check_shapes(rep) + check_compact_weights(table)),
        ("transversal", lambda: check_transversal(rep) + check_transversal(table)),
        ("sorted", lambda: check_sorted(rep)),
        ("order_ideal", lambda: check_order_ideal(rep)),
        ("phi_consistency", lambda: check_phi_consistency(rep) + check_phi_consistency(table)),
        ("leaders_bruteforce", lambda: check_leaders_bruteforce(rep, force=force)),
        ("forward_step", lambda: check_forward_step(table, force=force)),
        ("round_trip", lambda: check_round_trip(rep, table)),
        ("border_equivalence", lambda: check_border_equivalence(rep, force=force)),
        (
            "reduced_border",
            lambda: check_reduced_border(border_from_phi(rep), reduce_border(border_from_phi(rep))),
        ),
        (
            "min_red_minimal",
            lambda: [
                f"Min_red word {to_string(w, code.n)} is not minimal."
                for w in verify_min_red_containment(code, rep, force=force).violations
            ],
        ),
        ("decoder_agreement", lambda: check_decoder_agreement(rep, table, force=force)),
        ("oracle_equivalence", lambda: check_equivalence(code, rep, force=force)),
        ("unique_decoding", lambda: check_unique_decoding(rep, table, force=force)),
        ("coset_problems", lambda: check_coset_problems(table, force=force)),
    ]
    for name, check in checks:
        result = _run(name, check)
        report.results.append(result)
        logger.info(f"{name}: {result.status}")
        if not result.passed and name in ("shapes", "transversal", "phi_consistency"):
            logger.warning(f"Structural check {name} failed, skipping the rest.")
            break
    else:
        minred = _run(
            "min_red_descent",
            lambda: [
                f"{s.mismatch_count} words beyond the oracle distance."
                for s in run_equivalence(
                    code, ["ts-minred"], Exhaustive(), force=force, rep=rep
                ).stats.values()
                if s.mismatch_count
            ],
            finding=True,
        )
        report.results.append(minred)
    return report
