import struct
import zlib

import pytest

from cli.commands import run
from cli.cli_utils import ExitCode
from gf2.bitword import to_string
from harness.named_codes import hamming


@pytest.fixture
def hamming_file(tmp_path):
    path = tmp_path / "hamming.grep"
    assert run(["build", "--code", "hamming:3", "--out", str(path)]) == ExitCode.OK
    return path


@pytest.fixture
def words_file(tmp_path):
    path = tmp_path / "words.txt"
    lines = [to_string(w, 7) for w in range(0, 128, 5)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _stdout_lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_build_compact(tmp_path, capsys):
    path = tmp_path / "out.grep"
    assert run(["build", "--code", "hamming:3", "--compact", str(path)]) == ExitCode.OK
    out = capsys.readouterr().out
    assert "cosets=8 covering_radius=1 packing_radius=1" in out
    assert path.exists()


def test_build_refused_without_force():
    assert run(["build", "--code", "random:40,10,1"]) == ExitCode.USAGE


def test_build_then_inspect(tmp_path, capsys):
    path = tmp_path / "out.grep"
    run(["build", "--code", "hamming:3", "--compact", str(path)])
    built = _stdout_lines(capsys)
    assert run(["inspect", "--load", str(path)]) == ExitCode.OK
    inspected = _stdout_lines(capsys)
    assert inspected[0] == built[0]
    assert inspected[1] == built[-1].split(" ", 1)[1]


def test_inspect_missing_file(tmp_path):
    assert run(["inspect", "--load", str(tmp_path / "missing.grep")]) == ExitCode.DATA


def test_decoders_agree_on_file(hamming_file, words_file, capsys):
    outputs = {}
    for algorithm in ("l", "red", "compact"):
        argv = ["decode", "--load", str(hamming_file), "--in", str(words_file)]
        assert run(argv + ["--algorithm", algorithm]) == ExitCode.OK
        outputs[algorithm] = _stdout_lines(capsys)
    assert outputs["l"] == outputs["red"] == outputs["compact"]
    assert len(outputs["l"]) == 26
    assert outputs["l"][0] == "0000000 0 1 0"


def test_border_decoder_agrees_with_leader_descent(hamming_file, words_file, capsys):
    outputs = {}
    for algorithm in ("l", "border"):
        argv = ["decode", "--load", str(hamming_file), "--in", str(words_file)]
        assert run(argv + ["--algorithm", algorithm]) == ExitCode.OK
        outputs[algorithm] = [line.split()[:3] for line in _stdout_lines(capsys)]
    assert outputs["border"] == outputs["l"]


@pytest.mark.parametrize("algorithm", ["l", "ml", "border"])
def test_decode_lists_every_closest_codeword(tmp_path, algorithm, capsys):
    path = tmp_path / "words.txt"
    path.write_text("1100\n1000\n", encoding="utf-8")
    argv = ["decode", "--code", "repetition:4", "--in", str(path), "--all-leaders"]
    assert run(argv + ["--algorithm", algorithm]) == ExitCode.OK
    lines = _stdout_lines(capsys)
    assert len(lines) == 3
    assert lines[0].split()[1:3] == ["2", "0"]
    assert lines[1] == "    closest 0000 1111"
    assert lines[2].split()[:3] == ["0000", "1", "1"]


def test_decode_ml_and_test_set(words_file, capsys):
    for algorithm in ("ml", "ts"):
        argv = ["decode", "--code", "hamming:3", "--in", str(words_file)]
        assert run(argv + ["--algorithm", algorithm]) == ExitCode.OK
        lines = _stdout_lines(capsys)
        assert all(line.split()[1] in ("0", "1") for line in lines)


def test_decode_hex(tmp_path, capsys):
    path = tmp_path / "words.hex"
    path.write_text("01\n70\n", encoding="utf-8")
    assert run(["decode", "--code", "hamming:3", "--in", str(path), "--hex"]) == ExitCode.OK
    lines = _stdout_lines(capsys)
    assert lines[0] == "0000000 1 1 1"
    assert lines[1] == "1110000 0 1 0"


def test_decode_malformed_line(tmp_path, capsys):
    path = tmp_path / "words.txt"
    path.write_text("0000000\n00200\n", encoding="utf-8")
    assert run(["decode", "--code", "hamming:3", "--in", str(path)]) == ExitCode.DATA


def test_reduction_needs_full_table(tmp_path, words_file):
    path = tmp_path / "compact.grep"
    run(["build", "--code", "hamming:3", "--compact", str(path)])
    argv = ["decode", "--load", str(path), "--in", str(words_file), "--algorithm", "red"]
    assert run(argv) == ExitCode.USAGE


def test_border_decoder_needs_full_table(tmp_path, words_file):
    path = tmp_path / "compact.grep"
    run(["build", "--code", "hamming:3", "--compact", str(path)])
    argv = ["decode", "--load", str(path), "--in", str(words_file), "--algorithm", "border"]
    assert run(argv) == ExitCode.USAGE


def test_inspect_rejects_word_length_beyond_64(tmp_path):
    path = tmp_path / "wide.grep"
    body = struct.pack("<4sHHHB", b"GREP", 1, 72, 71, 0) + bytes(64)
    path.write_bytes(body + struct.pack("<I", zlib.crc32(body)))
    assert run(["inspect", "--load", str(path)]) == ExitCode.DATA


def test_border_minimal_words(capsys):
    assert run(["border", "--code", "hamming:3", "--minwords"]) == ExitCode.OK
    assert len(_stdout_lines(capsys)) == 14


def test_border_reduced(capsys):
    assert run(["border", "--code", "repetition:3", "--reduced"]) == ExitCode.OK
    assert _stdout_lines(capsys) == ["011 100", "101 010", "110 001"]


def test_border_verify_containment(hamming_file, capsys):
    assert run(["border", "--load", str(hamming_file), "--verify-prop1"]) == ExitCode.OK
    assert "contained=True" in capsys.readouterr().out


def test_border_needs_a_selection():
    assert run(["border", "--code", "hamming:3"]) == ExitCode.USAGE


@pytest.mark.parametrize("source", ["hamming:3", "trivial:4", "repetition:5"])
def test_verify_passes(source, capsys):
    assert run(["verify", "--code", source]) == ExitCode.OK
    assert capsys.readouterr().out.splitlines()[-1] == f"verify code={source} passed=1"


def test_verify_tampered_file(hamming_file, capsys):
    data = hamming_file.read_bytes()
    body = bytearray(data[:-4])
    offset = len(body) - 8 * 7 * 4
    body[offset : offset + 4] = struct.pack("<I", 1)
    hamming_file.write_bytes(bytes(body) + struct.pack("<I", zlib.crc32(bytes(body))))
    assert run(["verify", "--load", str(hamming_file)]) == ExitCode.INVARIANT
    assert run(["verify", "--load", str(hamming_file), "--trusted"]) == ExitCode.INVARIANT
    assert "FAIL phi_consistency" in capsys.readouterr().out


def test_simulate_is_reproducible(capsys):
    argv = ["simulate", "--code", "hamming:3", "--p", "0.05", "--trials", "3e3", "--seed", "7"]
    assert run(argv) == ExitCode.OK
    first = capsys.readouterr().out
    assert run(argv) == ExitCode.OK
    assert capsys.readouterr().out == first
    assert "seed=7" in first


def test_simulate_json(capsys):
    argv = ["simulate", "--code", "hamming:3", "--exhaustive", "--decoders", "l", "ml", "--json"]
    assert run(argv) == ExitCode.OK
    assert '"total_mismatches": 0' in capsys.readouterr().out


def test_simulate_without_seed_prints_one(capsys):
    assert run(["simulate", "--code", "repetition:3", "--trials", "10"]) == ExitCode.OK
    assert " seed=" in capsys.readouterr().out


def test_bench_is_reproducible(capsys):
    argv = ["bench", "--redundancies", "2,3", "--k", "3", "--seed", "1", "--code", "hamming:3"]
    argv += ["--trials", "500", "--algorithms", "batch", "l"]
    assert run(argv) == ExitCode.OK
    first = capsys.readouterr().out
    assert run(argv) == ExitCode.OK
    assert capsys.readouterr().out == first
    checksums = {line.split("checksum=")[1] for line in first.splitlines() if "checksum" in line}
    assert len(checksums) == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["build"],
        ["build", "--code", "bogus:1"],
        ["decode", "--code", "hamming:3", "--load", "x"],
    ],
)
def test_usage_errors(argv):
    assert run(argv) == ExitCode.USAGE


def test_code_file_source(tmp_path, capsys):
    path = tmp_path / "code.txt"
    path.write_text(hamming(3).to_text(), encoding="utf-8")
    assert run(["build", "--code", f"file:{path}"]) == ExitCode.OK
    assert "cosets=8" in capsys.readouterr().out


def test_bad_code_file(tmp_path):
    path = tmp_path / "code.txt"
    path.write_text("3 1\n1x1\n", encoding="utf-8")
    assert run(["build", "--code", f"file:{path}"]) == ExitCode.DATA
