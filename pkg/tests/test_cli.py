import json

import pytest

from multiquad_iwasawa.cli import Report, SWEEP_HEADER, main, parse_levels, sweep_universe, validate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    doc = json.loads(out)
    validate(doc)
    return code, doc


@pytest.mark.parametrize("rads,value", [("7,3,-1", 3), ("-7", 1), ("-1", 0)])
def test_lambda_examples(capsys, rads, value):
    code, doc = run_json(capsys, "lambda", "-r", rads)
    assert code == 0 and doc["lambda"]["lambda2"] == value
    assert set(doc) == {"input", "field", "lambda", "parity", "genus", "splitting", "assumptions", "errors"}


def test_assumptions_recorded(capsys):
    _, doc = run_json(capsys, "lambda", "-r", "7,3,-1")
    assert doc["lambda"]["greenberg_assumed"] and doc["assumptions"]
    _, doc = run_json(capsys, "lambda", "-r", "7,3,-1", "--lambda-plus", "2")
    assert doc["lambda"]["lambda2"] == 5 and "supplied" in doc["assumptions"][0]
    _, doc = run_json(capsys, "lambda", "-r", "-7")
    assert doc["assumptions"] == []


def test_flags_before_or_after_verb(capsys):
    _, a = run_json(capsys, "lambda", "-r", "533,-1")
    code, out, _ = run(capsys, "--json", "-r", "533,-1", "lambda")
    assert code == 0 and json.loads(out)["lambda"] == a["lambda"]


def test_lambda_errors(capsys):
    code, doc = run_json(capsys, "lambda", "-r", "3,7")
    assert code == 3 and doc["errors"][0]["kind"] == "hypothesis"
    code, doc = run_json(capsys, "lambda", "-r", "3,x")
    assert code == 2 and doc["errors"][0]["kind"] == "input"
    code, doc = run_json(capsys, "lambda", "-r", "7,3,-1", "--no-assume-greenberg")
    assert code == 3
    code, _, err = run(capsys, "lambda")
    assert code == 2 and "radicands" in err


@pytest.mark.parametrize("rads,verdict", [("2,-11,33", "Odd"), ("2,-5", "EvenNotDiv4"), ("2,3", "Odd")])
def test_parity_examples(capsys, rads, verdict):
    code, doc = run_json(capsys, "parity", "-r", rads)
    assert code == 0 and doc["parity"]["verdict"] == verdict


def test_parity_out_of_scope_notice(capsys):
    code, out, err = run(capsys, "parity", "-r", "3,-1")
    assert code == 0 and "OutOfScope" in out and "notice" in err


def test_splitting_g_column(capsys):
    code, doc = run_json(capsys, "splitting", "-p", "7", "-n", "0..5")
    assert code == 0 and [r["g"] for r in doc["splitting"]] == [1, 2, 2, 2, 2, 2]


def test_splitting_behaviours(capsys):
    _, doc = run_json(capsys, "splitting", "-p", "3", "-n", "0..3", "-d", "5")
    assert [r["behavior"] for r in doc["splitting"]] == ["Inert", "Split", "Split", "Split"]
    _, doc = run_json(capsys, "splitting", "-p", "3", "-n", "0..3", "-d", "7")
    assert {r["behavior"] for r in doc["splitting"]} == {"Split"}


def test_splitting_errors(capsys):
    code, doc = run_json(capsys, "splitting", "-p", "2")
    assert code == 2 and "excluded" in doc["errors"][0]["message"]
    assert run_json(capsys, "splitting", "-p", "9")[0] == 2
    assert run_json(capsys, "splitting", "-p", "7", "-n", "3..1")[0] == 2


def test_parse_levels():
    assert list(parse_levels("0..3")) == [0, 1, 2, 3]
    assert list(parse_levels("4")) == [4]
    for bad in ("a..b", "-1..2", "5..2"):
        with pytest.raises(ValueError):
            parse_levels(bad)


def test_genus(capsys):
    code, doc = run_json(capsys, "genus", "-r", "3,5")
    assert code == 0 and doc["genus"]["narrow"] == "-1,3,5" and doc["genus"]["genus"] == "3,5"


def test_text_output(capsys):
    code, out, _ = run(capsys, "lambda", "-r", "7,3,-1")
    assert code == 0 and "lambda_2 = 3" in out
    code, out, _ = run(capsys, "splitting", "-p", "7", "-n", "0..2")
    assert out.splitlines()[0].split() == ["n", "e", "f", "g", "behavior"]


@pytest.mark.parametrize("argv", [["lambda", "-r", "7,3,-1"], ["parity", "-r", "2,-11,33"],
                                  ["genus", "-r", "3,5,-1"], ["splitting", "-p", "17", "-n", "0..6", "-d", "-3"],
                                  ["lambda", "-r", "3,5"]])
def test_round_trip(capsys, argv):
    _, out, _ = run(capsys, "--json", *argv)
    assert Report.from_json(out).to_json() == out


def test_bad_verb_is_input_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_sweep_csv(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "sweep", "--bound", "50", "-o", str(a))[0] == 0
    assert run(capsys, "sweep", "--bound", "50", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == ",".join(SWEEP_HEADER)
    assert len(lines) - 1 == len(sweep_universe(50))
    assert "-1,3,7,3,Even,," not in lines  # rank <= 2 only
    assert "-1,0,OutOfScope,," in lines


def test_sweep_bound_zero_is_header_only(capsys):
    code, out, _ = run(capsys, "sweep", "--bound", "0")
    assert code == 0 and out == ",".join(SWEEP_HEADER) + "\n"


def test_sweep_json_and_limits(tmp_path, capsys):
    code, out, _ = run(capsys, "sweep", "--bound", "12", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and rows and set(rows[0]) == set(SWEEP_HEADER)
    assert run(capsys, "sweep", "--bound", "10000")[0] == 2
    assert run(capsys, "sweep", "--bound", "20", "-o", str(tmp_path / "no" / "x.csv"))[0] == 2


def test_sweep_universe_ramification():
    fields = sweep_universe(8)
    texts = [K.to_text() for K in fields]
    assert "-1" in texts and "-7" in texts and "-1,5" in texts
    assert all(p < 8 for K in fields for p in K.ramified_odd_primes())
    assert sweep_universe(2) == []


def test_verify_empty_and_fault(tmp_path, capsys):
    empty = tmp_path / "empty.cfg"
    empty.write_text("suites =\n")
    code, _, err = run(capsys, "verify", str(empty))
    assert code == 0 and "no suites" in err
    fault = tmp_path / "fault.cfg"
    fault.write_text("suites = f2n\np_max = 100\nn_max = 8\ninject_fault = f2n\n")
    code, out, _ = run(capsys, "verify", str(fault))
    assert code == 1 and "FAIL f2n" in out
    code, out, _ = run(capsys, "--json", "verify", str(fault))
    doc = json.loads(out)
    validate(doc, "sweep")
    assert not doc["passed"]


def test_verify_bad_config(tmp_path, capsys):
    assert run(capsys, "verify", str(tmp_path / "missing.cfg"))[0] == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("suites = nonsense\n")
    assert run(capsys, "verify", str(bad))[0] == 2


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0 and "FAIL" not in out
