import subprocess
import sys

import pytest

from hullnorm.cli import FALSIFIED, INVALID, OK, PARSE_ERROR, PRECONDITION, main

from .mutations import fixture_path

Z8 = str(fixture_path("z8.hn"))


def write(tmp_path, text, name="f.hn"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_validate_fixture(capsys):
    assert main(["validate", Z8]) == OK
    out = capsys.readouterr().out
    assert "monoid cyclic(8): ok (8 elements, group)" in out
    assert "filter F: ok" in out


def test_validate_missing_halving_set(tmp_path, capsys):
    path = write(tmp_path, "[monoid]\nspec cyclic(8)\n[filter F]\nbase {0,1}\n")
    assert main(["validate", path]) == INVALID
    assert "witness {0,1}" in capsys.readouterr().out


def test_validate_empty_file(tmp_path, capsys):
    assert main(["validate", write(tmp_path, "")]) == OK
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("text", ["[monoid\n", "[monoid]\nspec cyclic(4)\n[hull H]\nkind nope\n"])
def test_parse_errors(tmp_path, capsys, text):
    assert main(["validate", write(tmp_path, text)]) == PARSE_ERROR
    assert "parse error" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "absent.hn")]) == PARSE_ERROR


def test_usage_error_is_parse_error():
    with pytest.raises(SystemExit) as err:
        main(["synth"])
    assert err.value.code == PARSE_ERROR


def test_synth_z8(capsys):
    assert main(["synth", Z8, "--string", "U"]) == OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["0 0/1", "1 1/2", "2 1/1", "3 1/1", "4 1/1", "5 1/1", "6 1/1", "7 1/2",
                     "# sandwich-verified"]


def test_synth_regularised(capsys):
    assert main(["synth", Z8, "--string", "U", "--basic", "S"]) == OK
    assert capsys.readouterr().out.splitlines()[1] == "1 1/2"


def test_synth_symmetric_on_monoid(tmp_path, capsys):
    path = write(tmp_path, "[monoid]\nspec saturating_cube(3,1)\n"
                           "[string U]\nhull symmetric\nprefix {0,1}\ntail {0}\n")
    assert main(["synth", path, "--string", "U"]) == PRECONDITION
    assert "precondition failed" in capsys.readouterr().err


def test_synth_unknown_string(capsys):
    assert main(["synth", Z8, "--string", "nope"]) == INVALID


def test_suite_empty_corpus(capsys):
    assert main(["suite", "--corpus-size", "0"]) == OK
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 6 and all(ln.endswith("PASS 0 instances") for ln in out)


def test_suite_unknown_name():
    assert main(["suite", "--only", "nope"]) == PARSE_ERROR


def test_suite_small_corpus(tmp_path, capsys):
    code = main(["suite", "--corpus-size", "8", "--seed", "3", "--witness-dir", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == OK, out
    assert "fixtures" in out and "FAIL" not in out


def test_falsified_exit(tmp_path):
    bad = fixture_path("z8.hn").read_text().replace("2 1/1\n", "2 1/2\n", 1)
    assert main(["suite", "--corpus-size", "0", "--fixtures", write(tmp_path, bad, "z8.hn"),
                 "--witness-dir", str(tmp_path / "w")]) == FALSIFIED


def test_output_is_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "hullnorm", "synth", Z8, "--string", "U", "--basic", "S"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
    cmd = [sys.executable, "-m", "hullnorm", "suite", "--corpus-size", "4", "--witness-dir", str(tmp_path)]
    runs = [subprocess.run(cmd, capture_output=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
