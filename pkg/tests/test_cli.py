import json
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from schubsig.cli import main, parse_report_rationals, parse_space
from schubsig.errors import ConfigurationError
from schubsig.exact import fstr


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(out):
    return {line.split("\t")[0]: line.split("\t")[1:] for line in out.splitlines()}


@pytest.mark.parametrize(
    "text,expected",
    [
        ("A,3,2", ("A", 3, 2)),
        ("G(2,4)", ("A", 3, 2)),
        ("G(3,7)", ("A", 6, 3)),
        ("Q4", ("D", 3, 1)),
        ("Q6", ("D", 4, 1)),
        ("Q3", ("B", 2, 1)),
        ("OP2", ("E6", 6, 1)),
        ("LG(3,6)", ("C", 3, 3)),
        ("E6,1", ("E6", 6, 1)),
        ("e,6,1", ("E6", 6, 1)),
    ],
)
def test_parse_space(text, expected):
    s = parse_space(text)
    assert (s.type_label, s.rank, s.node) == expected


@pytest.mark.parametrize("text", ["G(4,4)", "Q2", "LG(3,7)", "X", "A,3", "A,x,1"])
def test_parse_space_errors(text):
    with pytest.raises(ConfigurationError):
        parse_space(text)


def test_info_examples(capsys):
    code, out, _ = run(capsys, "info", "G(2,4)")
    f = fields(out)
    assert code == 0 and f["sigma"] == ["2"] and f["rank_bound"] == ["1"]
    code, out, _ = run(capsys, "info", "Q6")
    f = fields(out)
    assert f["sigma"] == ["0"] and f["rank_bound"] == ["2"]
    code, out, _ = run(capsys, "info", "OP2")
    f = fields(out)
    assert f["classes"] == ["27"] and f["N"] == ["16"] and f["rank_bound"] == ["1"]


def test_info_odd_and_bad(capsys):
    code, out, _ = run(capsys, "info", "G(1,4)")
    assert code == 0 and fields(out)["sigma"] == ["n/a"]
    code, _, err = run(capsys, "info", "G(5,4)")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "info", "A,9,1")
    assert code == 2


def test_info_json(tmp_path, capsys):
    path = tmp_path / "info.json"
    run(capsys, "info", "G(3,7)", "--out", str(path))
    info = json.loads(path.read_text())
    assert info["h_mid"] == 5 and sorted(info["U_hyp"]) == ["3,3", "4,1,1"]
    assert {e["label"] for e in info["U"]} == {"4,1,1", "3,2,1", "2,2,2", "4,2", "3,3"}


def write_input(tmp_path, obj):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(obj))
    return str(path)


def test_analyze_multiple_of_H(tmp_path, capsys):
    f = write_input(tmp_path, {"space": "G(2,4)", "a": {"1": 1}, "alpha": {"2": 3, "1,1": 3}})
    code, out, _ = run(capsys, "analyze", "G(2,4)", "--input", f)
    assert code == 0 and fields(out)["multiple_of_H"] == ["true"]


def test_analyze_violation(tmp_path, capsys):
    f = write_input(tmp_path, {"space": "Q6", "a": {"s2.s1": 1}, "alpha": {"s3.s2.s1": 1, "s4.s2.s1": 2}})
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", "Q6", "--input", f, "--out", str(out_path))
    assert code == 0
    f_ = fields(out)
    assert f_["multiple_of_H"] == ["false"] and f_["violation"] == ["s3.s2.s1", "s4.s2.s1"]
    report = json.loads(out_path.read_text())
    assert report["verdicts"]["multiple_of_H_violations"] == [["s3.s2.s1", "s4.s2.s1"]]
    assert report["q"] == [["-1/2", "1/2"], ["1/2", "-1/2"]]
    assert report["verdicts"]["cominuscule"]["ok"] is True


def test_analyze_with_lambda_round_trip(tmp_path, capsys):
    f = write_input(
        tmp_path, {"space": "G(2,4)", "a": {"1": 1}, "alpha": {"2": 1, "1,1": 2}, "lambda": {"1": "5/1"}}
    )
    out_path = tmp_path / "r.json"
    code, _, _ = run(capsys, "analyze", "G(2,4)", "--input", f, "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    report = json.loads(text)
    assert report["P"] == "0/1" and report["hodge"] == {"1": "1/1"} and report["q_value"] == "1/2"
    assert report["verdicts"]["rank_one"] is False and report["verdicts"]["eq1_crosscheck"] is True
    assert json.loads(json.dumps(report)) == report
    parsed = parse_report_rationals(report)
    assert parsed["q_value"] == Fraction(1, 2)
    assert parsed["q"] == [[Fraction(1, 2), Fraction(-1, 2)], [Fraction(-1, 2), Fraction(1, 2)]]
    for s in re.findall(r'"(-?\d+/\d+)"', text):
        assert fstr(Fraction(s)) == s


@pytest.mark.parametrize(
    "obj",
    [
        {"space": "G(2,4)", "alpha": {"2": 1, "1,1": 1}},
        {"space": "G(2,4)", "a": {"1": 0}, "alpha": {"2": 1, "1,1": 1}},
        {"space": "G(2,4)", "a": {"1": 1}, "alpha": {"2": 1}},
        {"space": "Q6", "a": {"1": 1}, "alpha": {"2": 1, "1,1": 1}},
        [1, 2],
    ],
)
def test_analyze_validation_exit_2(tmp_path, capsys, obj):
    f = write_input(tmp_path, obj)
    code, _, err = run(capsys, "analyze", "G(2,4)", "--input", f)
    assert code == 2 and err.startswith("error:")


def test_analyze_names_offending_label(tmp_path, capsys):
    f = write_input(tmp_path, {"a": {"1": -1}, "alpha": {"2": 1, "1,1": 1}})
    code, _, err = run(capsys, "analyze", "G(2,4)", "--input", f)
    assert code == 2 and "a[1]" in err and "cumbersome" in err


def test_analyze_missing_file(capsys):
    code, _, _ = run(capsys, "analyze", "G(2,4)", "--input", "/nonexistent.json")
    assert code == 2


def test_verify_default_set(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "20")
    rows = [line.split("\t") for line in out.splitlines()]
    assert code == 0
    assert [r[0] for r in rows] == ["G(2,4)", "G(2,5)", "G(2,6)", "G(3,7)", "Q4", "Q6", "Q8", "OP2"]
    assert all(r[1] == r[2] == "20" and r[3] == "pass" for r in rows)


def test_verify_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--trials", "1", "--seed", "7", "--out", str(a))
    run(capsys, "verify", "--trials", "1", "--seed", "7", "--out", str(b))
    assert a.read_text() == b.read_text()


def test_verify_detects_corruption(capsys):
    code, out, err = run(capsys, "verify", "--spaces", "G(3,7);Q6", "--trials", "3", "--corrupt")
    assert code == 1
    assert "reproduce: space=G(3,7) seed=0 trial=0 a=" in err
    assert "FAIL" in out


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "--trials", "0")[0] == 2
    assert run(capsys, "verify", "--spaces", "G(1,4)")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--trials", "x"])
    assert exc.value.code == 2


def scan_rows(out):
    lines = [line.split("\t") for line in out.splitlines()]
    header, rows = lines[0], lines[1:]
    return [dict(zip(header, r)) for r in rows]


def test_scan_lines(capsys):
    code, out, _ = run(capsys, "scan", "--types", "A", "--node", "2", "--max-rank", "7")
    rows = scan_rows(out)
    assert code == 0 and len(rows) == 6
    assert all(r["definite"] == "true" and r["rank_bound"] == "1" for r in rows)


def test_scan_quadrics(capsys):
    _, out, _ = run(capsys, "scan", "--types", "D", "--node", "first", "--max-rank", "6")
    for r in scan_rows(out):
        assert (r["definite"] == "true") == (int(r["N"]) % 4 == 0)


def test_scan_lagrangian(capsys):
    _, out, _ = run(capsys, "scan", "--types", "C", "--node", "last", "--max-rank", "4", "--even-only")
    rows = {r["space"]: r for r in scan_rows(out)}
    assert rows["C3/P3"]["definite"] == "false"
    assert all(r["N"] != "n/a" and int(r["N"]) % 2 == 0 for r in rows.values())


def test_scan_resource_error(capsys, monkeypatch):
    monkeypatch.setenv("SCHUBSIG_MAX_CLASSES", "50")
    code, _, err = run(capsys, "scan", "--types", "E", "--max-rank", "6", "--node", "2")
    assert code == 2 and "cap" in err


@pytest.mark.parametrize("p,m", [(2, 4), (3, 7), (1, 2)])
def test_oracle_check(capsys, p, m):
    code, out, _ = run(capsys, "oracle-check", "--p", str(p), "--m", str(m))
    assert code == 0 and "pass" in out


def test_oracle_check_out_of_range(capsys):
    assert run(capsys, "oracle-check", "--p", "2", "--m", "9")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "schubsig", "info", "Q6"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and "sigma\t0" in proc.stdout
