import numpy as np
import pytest

from border.border import border_from_phi, reduce_border
from border.border_element import BorderElement, TestSet
from border.minimal_codewords import minimal_codewords_bruteforce
from decoders.border_decoder import border_reduction
from decoders.coset_problems import (
    coset_minimum_words,
    covering_radius,
    cwp_query,
    ip_solve,
    packing_radius,
)
from decoders.decode_result import Algorithm, DecodeResult
from decoders.leader_decoders import (
    compact_reduction_gdda,
    decode_batch,
    l_gdda,
    reduction_gdda,
)
from decoders.ml_decoder import closest_codewords, minimum_distance, ml_bruteforce, ml_distances
from decoders.test_set_decoder import ts_gdda
from gf2.bitword import all_words, unit
from gf2.errors import InvariantViolation
from harness.named_codes import repetition
from harness.verification import check_coset_problems
from representation.compact_representation import CompactRepresentation, compact
from representation.groebner_representation import build_representation


def test_ml_decodes_to_closest_codeword(repetition_code):
    result = ml_bruteforce(repetition_code, 0b110)
    assert result.codeword == 0b111
    assert result.distance == 1
    assert result.unique
    assert result.algorithm == Algorithm.ML


def test_ml_tie_returns_smallest_error():
    code = repetition(4)
    result = ml_bruteforce(code, 0b1100)
    assert result.error == 0b0011
    assert result.codeword == 0b1111
    assert not result.unique
    assert closest_codewords(code, 0b1100) == [0, 0b1111]


def test_minimum_distance(hamming_code, repetition_code):
    assert minimum_distance(hamming_code) == 3
    assert minimum_distance(repetition_code) == 3


def test_test_set_descent_on_repetition_code():
    result = ts_gdda(TestSet([0b111]), 0b011)
    assert result.codeword == 0b111
    assert result.error == 0b100
    assert result.steps == (0b111,)


def test_test_set_descent_on_zero_word():
    result = ts_gdda(TestSet([0b111]), 0)
    assert result.codeword == 0
    assert result.steps == ()


def test_leader_descent_on_zero_word(hamming_compact):
    result = l_gdda(hamming_compact, 0)
    assert result.codeword == 0
    assert result.steps == ()
    assert result.unique


def test_leader_descent_on_single_error(hamming_compact):
    result = l_gdda(hamming_compact, unit(2, 7))
    assert result.codeword == 0
    assert result.steps == (2,)
    assert result.to_line(7) == "0000000 1 1 1"


def test_reduction_on_hamming(hamming_rep):
    r = 0b1110000 ^ unit(6, 7)
    result = reduction_gdda(hamming_rep, r)
    assert result.codeword == 0b1110000
    assert result.distance == 1


def test_threshold_overrides_packing_radius(hamming_compact):
    assert not l_gdda(hamming_compact, unit(2, 7), t=0).unique


def test_complete_decoding(desk_code):
    rep = build_representation(desk_code)
    table = compact(rep)
    words = all_words(desk_code.n)
    oracle = ml_distances(desk_code, words)
    batch = decode_batch(table, words)
    for index, r in enumerate(words.tolist()):
        leader = l_gdda(table, r)
        assert leader.distance == oracle[index]
        assert desk_code.is_codeword(leader.codeword)
        assert reduction_gdda(rep, r).codeword == leader.codeword
        assert compact_reduction_gdda(table, r).codeword == leader.codeword
        assert int(batch[index]) == leader.codeword


def test_descent_is_strict(desk_code):
    table = compact(build_representation(desk_code))
    for r in all_words(desk_code.n).tolist():
        i = table.coset_index(r)
        for j in l_gdda(table, r).steps:
            following = int(table.phi[i, j])
            assert table.weights[following] == table.weights[i] - 1
            i = following
        assert i == 0


def test_test_set_descent_with_minimal_codewords(desk_code):
    test_set = minimal_codewords_bruteforce(desk_code)
    words = all_words(desk_code.n)
    oracle = ml_distances(desk_code, words)
    for index, r in enumerate(words.tolist()):
        assert ts_gdda(test_set, r).distance == oracle[index]


def test_unique_within_packing_radius(desk_code):
    rep = build_representation(desk_code)
    table = compact(rep)
    test_set = minimal_codewords_bruteforce(desk_code)
    sent = desk_code.generator[0]
    for e in all_words(desk_code.n).tolist():
        if e.bit_count() > rep.packing_radius:
            continue
        for result in (
            ml_bruteforce(desk_code, sent ^ e),
            l_gdda(table, sent ^ e),
            reduction_gdda(rep, sent ^ e),
            compact_reduction_gdda(table, sent ^ e),
            ts_gdda(test_set, sent ^ e),
        ):
            assert result.codeword == sent
            assert result.unique


def test_stuck_descent_raises(hamming_compact):
    weights = hamming_compact.weights.copy()
    weights[1] = 3
    broken = CompactRepresentation(
        code=hamming_compact.code,
        phi=hamming_compact.phi,
        syndrome_index=hamming_compact.syndrome_index,
        weights=weights,
    )
    with pytest.raises(InvariantViolation):
        l_gdda(broken, unit(6, 7))
    with pytest.raises(InvariantViolation):
        decode_batch(broken, np.array([unit(6, 7)], dtype=np.uint64))


def test_decode_result_checks_distance():
    with pytest.raises(ValueError):
        DecodeResult(
            codeword=0, error=0b11, distance=1, steps=(), unique=True, algorithm=Algorithm.ML
        )


def test_cwp_query(hamming_compact):
    assert cwp_query(hamming_compact, 0, 0)
    assert all(cwp_query(hamming_compact, s, 1) for s in range(1, 8))
    assert not any(cwp_query(hamming_compact, s, 0) for s in range(1, 8))


def test_ip_solve(hamming_rep, hamming_compact):
    column = hamming_rep.code.column_syndromes[2]
    for table in (hamming_rep, hamming_compact):
        assert ip_solve(table, 0) == (0, 0)
        assert ip_solve(table, column) == (1, unit(2, 7))
    with pytest.raises(ValueError):
        ip_solve(hamming_rep, 8)


def test_ip_solve_matches_brute_force(desk_code):
    assert check_coset_problems(compact(build_representation(desk_code))) == []


def test_radii(hamming_compact, repetition_rep, trivial_code):
    assert covering_radius(hamming_compact) == 1
    assert packing_radius(hamming_compact) == 1
    assert covering_radius(repetition_rep) == 1
    assert covering_radius(build_representation(trivial_code)) == 0


def test_coset_minimum_words():
    code = repetition(4)
    table = compact(build_representation(code))
    assert coset_minimum_words(table, code.syndrome(0b1100)) == [0b0011, 0b1100]
    assert coset_minimum_words(table, 0) == [0]


def test_border_reduction_on_repetition_code(repetition_rep):
    reduced = reduce_border(border_from_phi(repetition_rep))
    result = border_reduction(reduced, 0b011)
    assert result.codeword == 0b111
    assert result.error == 0b100
    assert result.steps == (0b111,)
    assert result.unique
    assert result.algorithm == Algorithm.BORDER


def test_border_reduction_keeps_leaders(hamming_rep):
    reduced = reduce_border(border_from_phi(hamming_rep))
    for leader in hamming_rep.leaders.tolist():
        result = border_reduction(reduced, leader)
        assert result.codeword == 0
        assert result.steps == ()


def test_border_reduction_needs_a_border():
    with pytest.raises(ValueError):
        border_reduction(frozenset(), 0b101)


def test_border_reduction_threshold(hamming_rep):
    reduced = reduce_border(border_from_phi(hamming_rep))
    assert not border_reduction(reduced, unit(3, 7), t=0).unique
    assert border_reduction(frozenset({BorderElement(0b011, 0b100)}), 0b011).unique


def _assert_border_reduction_is_complete(code):
    rep = build_representation(code)
    reduced = reduce_border(border_from_phi(rep))
    words = all_words(code.n)
    oracle = ml_distances(code, words)
    for index, r in enumerate(words.tolist()):
        result = border_reduction(reduced, r)
        assert result.distance == oracle[index]
        assert result.error == rep.leader(rep.coset_index(r))
        assert code.is_codeword(result.codeword)


def test_border_reduction_reaches_the_coset_leader(desk_code):
    _assert_border_reduction_is_complete(desk_code)


def test_border_reduction_on_seeded_codes(sweep_code):
    _assert_border_reduction_is_complete(sweep_code)


def test_complete_decoding_on_seeded_codes(sweep_code):
    table = compact(build_representation(sweep_code))
    words = all_words(sweep_code.n)
    oracle = ml_distances(sweep_code, words)
    decoded = decode_batch(table, words)
    distances = [(int(c) ^ r).bit_count() for c, r in zip(decoded, words.tolist())]
    assert distances == oracle.tolist()
