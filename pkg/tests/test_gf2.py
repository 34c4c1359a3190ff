import itertools

import numpy as np
import pytest
from numpy.random import Generator, Philox

from gf2.binary_code import BinaryCode
from gf2.bitword import (
    Comparison,
    WeightOrder,
    check_length,
    from_hex,
    from_string,
    is_subset,
    popcount,
    support,
    to_string,
    unit,
    weight,
)
from gf2.errors import CodeFormatError, ScaleGuardError
from gf2.matrix import (
    generator_from_parity_check,
    is_orthogonal,
    null_space,
    parity_check_from_generator,
    rank,
    rref,
)
from harness.named_codes import random_code, trivial


def test_unit_and_support():
    assert unit(0, 4) == 0b1000
    assert unit(3, 4) == 0b0001
    assert support(0b1010, 4) == [0, 2]
    assert weight(0b1011) == 3


def test_is_subset():
    assert is_subset(0b1000, 0b1010)
    assert not is_subset(0b0100, 0b1010)
    assert is_subset(0, 0b1010)


def test_string_conversions():
    assert from_string("0110", 4) == 6
    assert to_string(6, 4) == "0110"
    assert from_hex("ff", 8) == 255


@pytest.mark.parametrize("text", ["012", "01", "0110"])
def test_from_string_rejects_malformed(text):
    with pytest.raises(CodeFormatError):
        from_string(text, 3)


def test_from_hex_rejects_long_words():
    with pytest.raises(CodeFormatError):
        from_hex("1ff", 8)
    with pytest.raises(CodeFormatError):
        from_hex("xyz", 8)


def test_check_length():
    check_length(15, 4)
    with pytest.raises(ValueError):
        check_length(16, 4)


def test_popcount():
    words = np.array([0, 7, (1 << 63) + 1], dtype=np.uint64)
    assert popcount(words).tolist() == [0, 3, 2]


def test_weight_order_sorts_by_weight_then_integer():
    order = WeightOrder(3)
    assert order.sorted(range(8)) == [0, 1, 2, 4, 3, 5, 6, 7]
    assert order.compare(4, 3) == Comparison.LT
    assert order.compare(2, 1) == Comparison.GT
    assert order.compare(5, 5) == Comparison.EQ
    assert order.minimum([6, 5, 4]) == 4


def test_rank_and_rref():
    assert rank([0b110, 0b011, 0b101], 3) == 2
    reduced, r, pivots = rref([0b011, 0b110], 3)
    assert r == 2
    assert pivots == [0, 1]
    assert reduced == [0b101, 0b011]


def test_null_space_of_systematic_matrix():
    rows = [0b1001, 0b0101]
    basis = null_space(rows, 4)
    assert basis == [0b0010, 0b1101]
    assert is_orthogonal(rows, basis)


def test_repetition_code_matrices(repetition_code):
    assert repetition_code.parity_check == (0b110, 0b101)
    assert repetition_code.syndrome(0b001) == 0b01
    assert repetition_code.is_codeword(0b111)
    assert str(repetition_code) == "[3,1] binary code"


def test_hamming_syndrome_of_unit_vector(hamming_code):
    assert hamming_code.syndrome(unit(2, 7)) == 0b110
    assert hamming_code.column_syndromes[6] == 0b111


def test_vectorised_syndromes_match_scalar(hamming_code):
    words = np.arange(128, dtype=np.uint64)
    expected = [hamming_code.syndrome(w) for w in range(128)]
    assert hamming_code.syndromes(words).tolist() == expected


def test_codewords_enumeration(hamming_code):
    codewords = hamming_code.codewords()
    assert len(set(codewords.tolist())) == 16
    assert int(codewords[0]) == 0
    assert all(hamming_code.is_codeword(int(c)) for c in codewords)


def test_codewords_guard():
    with pytest.raises(ScaleGuardError):
        trivial(21).codewords()


def test_rejects_wrong_row_count():
    with pytest.raises(CodeFormatError):
        BinaryCode(n=3, k=1, generator=(0b111,), parity_check=(0b110,))


def test_rejects_non_orthogonal_matrices():
    with pytest.raises(CodeFormatError):
        BinaryCode(n=3, k=1, generator=(0b111,), parity_check=(0b110, 0b100))


def test_rejects_rank_deficient_generator():
    with pytest.raises(CodeFormatError):
        BinaryCode.from_generator([0b110, 0b110], 3)


def test_text_format_round_trip(hamming_code):
    assert BinaryCode.from_text(hamming_code.to_text()) == hamming_code


def test_text_format_without_parity_check(repetition_code):
    text = "# repetition\n3 1\n\n111\n"
    assert BinaryCode.from_text(text) == repetition_code


@pytest.mark.parametrize("text", ["", "x y\n", "3 2\n111\n", "3 1\n111\nH\n110\n", "3 1\n121\n"])
def test_text_format_errors(text):
    with pytest.raises(CodeFormatError):
        BinaryCode.from_text(text)


def test_load_from_file(tmp_path, hamming_code):
    path = tmp_path / "hamming.txt"
    path.write_text(hamming_code.to_text(), encoding="utf-8")
    assert BinaryCode.load(path) == hamming_code


def test_weight_is_zero_only_for_zero_word():
    assert weight(0) == 0
    assert all(weight(w) > 0 for w in range(1, 1 << 10))
    assert weight(0b1010101) == 4


def test_compare_is_antisymmetric_and_transitive():
    n = 16
    order = WeightOrder(n)
    rng = Generator(Philox(5))
    for a, b, c in rng.integers(0, 1 << n, size=(2000, 3)).tolist():
        assert order.compare(a, b).value == -order.compare(b, a).value
        if order.compare(a, b) != Comparison.GT and order.compare(b, c) != Comparison.GT:
            assert order.compare(a, c) != Comparison.GT
    assert order.compare(0x8000, 0x0003) == Comparison.LT


@pytest.mark.parametrize("n", range(1, 8))
def test_compare_is_degree_compatible_on_all_pairs(n):
    order = WeightOrder(n)
    for a, b in itertools.product(range(1 << n), repeat=2):
        if a.bit_count() < b.bit_count():
            assert order.compare(a, b) == Comparison.LT


@pytest.mark.parametrize("n", [8, 9, 10])
def test_weight_order_never_decreases_weight(n):
    weights = [w.bit_count() for w in WeightOrder(n).sorted(range(1 << n))]
    assert weights == sorted(weights)


def test_compare_tie_break_reads_position_zero_first():
    assert WeightOrder(7).compare(0b1100000, 0b1010000) == Comparison.GT


def test_syndrome_is_linear(hamming_code):
    code = random_code(12, 5, 3)
    rng = Generator(Philox(2))
    for test_code in (hamming_code, code):
        for a, b in rng.integers(0, 1 << test_code.n, size=(500, 2)).tolist():
            expected = test_code.syndrome(a) ^ test_code.syndrome(b)
            assert test_code.syndrome(a ^ b) == expected


def test_generator_parity_check_round_trip_spans_same_code():
    for seed in range(10):
        code = random_code(10, 4, seed)
        parity_check = parity_check_from_generator(code.generator, 10)
        generator = generator_from_parity_check(parity_check, 10)
        assert len(parity_check) == 6
        assert rank(generator, 10) == 4
        assert rank(list(code.generator) + generator, 10) == 4


def test_random_code_generator_is_orthogonal_to_parity_check():
    code = random_code(10, 4, 7)
    assert is_orthogonal(code.generator, code.parity_check)
    for message in range(1 << 4):
        word = 0
        for i, row in enumerate(code.generator):
            if message >> i & 1:
                word ^= row
        assert code.syndrome(word) == 0


def test_systematic_generator_gives_transposed_parity_check():
    # G = [I | A] with A = (11, 01) gives H = [A^T | I]
    parity_check = parity_check_from_generator([0b1011, 0b0101], 4)
    assert sorted(parity_check) == sorted([0b1010, 0b1101])


def test_rank_deficient_parity_check_is_rejected():
    with pytest.raises(CodeFormatError):
        generator_from_parity_check([0b101, 0b101], 3)
