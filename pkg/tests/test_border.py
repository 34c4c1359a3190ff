import pytest

from border.border import (
    border_by_definition,
    border_from_phi,
    check_reduced_border,
    format_border,
    min_red,
    min_red_multiplicities,
    reduce_border,
)
from border.border_element import BorderElement, TestSet, TestSetKind
from border.minimal_codewords import minimal_codewords_bruteforce, verify_min_red_containment
from gf2.errors import ScaleGuardError
from harness.named_codes import random_code
from representation.groebner_representation import build_representation


def test_repetition_border(repetition_rep):
    border = border_from_phi(repetition_rep)
    assert border == {
        BorderElement(0b011, 0b100),
        BorderElement(0b101, 0b010),
        BorderElement(0b110, 0b001),
    }
    assert format_border(border, 3) == ["011 100", "101 010", "110 001"]


def test_repetition_min_red(repetition_rep):
    reduced = reduce_border(border_from_phi(repetition_rep))
    assert len(reduced) == 3
    assert min_red(reduced).words == (0b111,)
    assert min_red_multiplicities(reduced)[0b111] == 3


def test_hamming_reduced_border(hamming_rep):
    border = border_from_phi(hamming_rep)
    reduced = reduce_border(border)
    assert len(reduced) == 21
    assert all(b.head.bit_count() == 2 for b in reduced)
    test_set = min_red(reduced)
    assert len(test_set) == 7
    assert all(w.bit_count() == 3 for w in test_set.words)


def test_border_constructions_agree(desk_code):
    rep = build_representation(desk_code)
    assert border_from_phi(rep) == border_by_definition(desk_code, rep.leaders.tolist())


def test_reduced_border_conditions(desk_code):
    border = border_from_phi(build_representation(desk_code))
    assert check_reduced_border(border, reduce_border(border)) == []


def test_reduced_border_checker_reports_violations(hamming_rep):
    border = border_from_phi(hamming_rep)
    extra = BorderElement(0b1110000, 0)
    assert check_reduced_border(border, reduce_border(border) | {extra})
    assert check_reduced_border(border, set())


def test_trivial_border(trivial_code):
    border = border_from_phi(build_representation(trivial_code))
    assert border == {BorderElement(1 << j, 0) for j in range(4)}


def test_literal_border_guard():
    code = random_code(16, 3, 1)
    with pytest.raises(ScaleGuardError):
        border_by_definition(code, [0])


def test_hamming_minimal_codewords(hamming_code):
    minimal = minimal_codewords_bruteforce(hamming_code)
    assert len(minimal) == 14
    assert sorted(w.bit_count() for w in minimal.words) == [3] * 7 + [4] * 7
    assert minimal.kind == TestSetKind.MINIMAL_ALL


def test_min_red_is_contained_in_minimal_codewords(desk_code):
    report = verify_min_red_containment(desk_code)
    assert report.holds
    assert report.min_red.issubset(report.minimal)
    assert report.reduced_border_violations == ()


def test_min_red_is_contained_on_seeded_codes(wide_sweep_code):
    report = verify_min_red_containment(wide_sweep_code)
    assert report.holds, report.violations
    assert report.reduced_border_violations == ()


def test_containment_report_counts_duplicates(hamming_code):
    report = verify_min_red_containment(hamming_code)
    assert report.duplicated == 7
    assert report.summary().startswith("min_red=7 minimal=14 contained=True")


def test_test_set_rejects_zero():
    with pytest.raises(ValueError):
        TestSet([0, 3])


def test_test_set_is_sorted_and_deduplicated():
    assert TestSet([7, 3, 4, 3]).words == (4, 3, 7)


def test_test_set_for_code(repetition_code):
    assert 0b111 in TestSet.for_code(repetition_code, [0b111])
    with pytest.raises(ValueError):
        TestSet.for_code(repetition_code, [0b110])
