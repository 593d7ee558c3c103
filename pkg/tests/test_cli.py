import json

import pytest

from heapmods.cli import main
from heapmods.fixtures import fixture_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_shipped_corpus(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0
    assert out.splitlines()[-1] == "verdict: true"


def test_validate_negative_corpus(capsys):
    code, out, _ = run(capsys, "validate", "--negative", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_validate_rejects_bad_file(tmp_path, capsys):
    p = tmp_path / "bad.heap"
    p.write_text("heap P {\n carrier a b\n bracket a a : a a\n bracket a b : a a\n"
                 " bracket b a : b b\n bracket b b : b b\n}\n", encoding="utf-8")
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 1
    assert "verdict: false" in out


def test_syntax_error_exit_code(tmp_path, capsys):
    p = tmp_path / "broken.heap"
    p.write_text("heap H {\n carrier a\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2
    assert "DslSyntaxError" in err


def test_validate_explicit_file(tmp_path, capsys):
    p = tmp_path / "copy.heap"
    p.write_text(fixture_text(), encoding="utf-8")
    code, _, _ = run(capsys, "validate", "-f", str(p))
    assert code == 0


def test_derive_rt_at_basepoint(capsys):
    code, out, _ = run(capsys, "derive", "rt", "T39", "--basepoint", "3", "--json")
    assert code == 0
    rep = json.loads(out)
    assert list(rep)[0] == "command" and list(rep)[-1] == "verdict"
    assert rep["result"]["zero"] == "(3,0)"
    assert "(9,0) * (9,0) = (3,0)" in rep["result"]["generator products"]


@pytest.mark.parametrize("argv", [
    ("derive", "rtu", "T39"),
    ("derive", "tu", "T39", "--basepoint", "9"),
    ("derive", "free", "T4"),
    ("derive", "free", "T4", "--unital"),
    ("derive", "quotient", "H4m", "0", "2"),
    ("derive", "product", "H2m", "H2m"),
    ("derive", "equalizer", "id4", "tau02"),
    ("derive", "pullback", "red", "id2"),
    ("derive", "coproduct", "Hstar", "Hstar"),
    ("derive", "coproduct", "Hstar", "Hstar", "--isotropic"),
    ("derive", "coequalizer", "id4", "tau02"),
    ("derive", "pushout", "id2", "id2"),
    ("derive", "slice-g", "H2m"),
    ("derive", "slice-m", "H2m"),
    ("derive", "affine", "H39"),
    ("check-exact", "seq_main"),
    ("check-exact", "dbl", "red", "--all-basepoints"),
    ("check-barr", "fork_kp", "--all-basepoints"),
    ("iso-search", "Habc", "H3"),
])
def test_successful_commands_are_deterministic(capsys, argv):
    code, first, _ = run(capsys, *argv)
    assert code == 0, first
    _, second, _ = run(capsys, *argv)
    assert first == second
    code, js, _ = run(capsys, *argv, "--json")
    assert json.loads(js)["verdict"] is True


@pytest.mark.parametrize("argv", [
    ("check-exact", "seq_ids"),
    ("check-barr", "fork_dbl"),
    ("iso-search", "H4m", "H4z"),
])
def test_false_verdicts_exit_one(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 1
    assert out.splitlines()[-1] == "verdict: false"


@pytest.mark.parametrize("argv", [
    ("derive", "rt", "Nope"),
    ("derive", "rt", "H4m"),
    ("iso-search", "H4m", "H2m"),
    ("derive", "quotient", "H4m", "0", "1"),
    ("verify-suite", "11"),
])
def test_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error:" in err


def test_json_errors_on_stdout(capsys):
    code, out, _ = run(capsys, "derive", "rt", "Nope", "--json")
    assert code == 2
    assert "error" in json.loads(out)


def test_verify_suite_subset(capsys):
    code, out, _ = run(capsys, "verify-suite", "2,6", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] is True
    _, again, _ = run(capsys, "verify-suite", "2,6", "--json")
    assert again == out


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2
