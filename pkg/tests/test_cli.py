import json
import math

import pytest

from schatten_lab.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from schatten_lab.serialize import csv_text, dumps, fmt_float


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize(
    "x, expected",
    [(0.0, "0.0"), (1.0, "1.0"), (0.1, "0.10000000000000001"), (float("nan"), "null"), (-2.5e-20, "-2.4999999999999999e-20")],
)
def test_fmt_float(x, expected):
    assert fmt_float(x) == expected


def test_dumps_round_trips():
    doc = {"a": [1.5, 2, None], "b": {"c": True, "d": "x"}, "e": [], "f": {}, "g": float("inf")}
    back = json.loads(dumps(doc))
    assert back == {"a": [1.5, 2, None], "b": {"c": True, "d": "x"}, "e": [], "f": {}, "g": None}
    assert float(json.loads(dumps(0.1))) == 0.1
    with pytest.raises(TypeError):
        dumps(object())


def test_csv_text():
    assert csv_text(("t", "gap"), [(0.0, float("nan")), (1.0, 0.5)]) == "t,gap\n0.0,\n1.0,0.5\n"


def test_construct_example(capsys):
    code, out = run(["construct", "--lamA", "2,0", "--lamB", "1,-1", "--target", "2", "--which", "1"], capsys)
    assert code == EXIT_OK
    B = json.loads(out)["results"]["B"]
    expected = [[-0.5, math.sqrt(3) / 2], [math.sqrt(3) / 2, 0.5]]
    assert all(abs(B[i][j] - expected[i][j]) <= 1e-12 for i in range(2) for j in range(2))


def test_construct_inadmissible(capsys):
    code, out = run(["construct", "--lamA", "3,1", "--lamB", "2,-1", "--target", "6"], capsys)
    assert code == EXIT_VIOLATION
    assert json.loads(out)["error"]["reason"] == "inadmissible-target"


def test_sweep_csv(capsys):
    code, out = run(["sweep", "--grid", "2", "--s", "0.25,0.5"], capsys)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "t,s,gap"
    assert len(lines) == 1 + 2 * 2


def test_sweep_negative_spectrum_argument(capsys):
    code, out = run(["sweep", "--lamA", "-3,-5.5", "--lamB", "1,0", "--grid", "3", "--s", "0.5"], capsys)
    assert code == EXIT_OK
    assert len(out.splitlines()) == 4


def test_sweep_svg(capsys):
    code, out = run(["sweep", "--grid", "31", "--format", "svg"], capsys)
    assert code == EXIT_OK
    assert 'width="800"' in out and 'height="600"' in out
    assert out.count("<polyline") == 3
    assert "zero-line" in out


def test_sweep_json_reports_sign_changes(capsys):
    code, out = run(["sweep", "--grid", "181", "--s", "0.5", "--format", "json"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["summary"]["violations"] > 0
    assert doc["summary"]["sign_changes"]["0.5"]


def test_verify_outputs_and_exit(capsys):
    code, out = run(["verify", "--ineq", "reverse-minkowski", "--trials", "5", "--dims", "2"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert set(doc) == {"config", "results", "summary"}
    assert doc["summary"]["violations"] == 0
    assert "threads" not in doc["config"]


def test_verify_reports_violation(capsys):
    code, _ = run(["verify", "--ineq", "svr2", "--trials", "3", "--dims", "2", "--s", "0.5"], capsys)
    assert code == EXIT_OK
    code, out = run(["verify", "--ineq", "reverse-hanner", "--trials", "200", "--dims", "2", "--s", "-2"], capsys)
    assert code == EXIT_VIOLATION
    assert json.loads(out)["summary"]["violations"] > 0


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--ineq", "nonsense"],
        ["verify"],
        ["sweep", "--grid", "1"],
        ["sweep", "--lamA", "1,2,3"],
        ["bogus"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_io_error(tmp_path):
    assert main(["calibrate", "--s", "0.5", "--out", str(tmp_path / "missing" / "x.json")]) == EXIT_IO


def test_out_file(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert main(["calibrate", "--out", str(path)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    rows = json.loads(path.read_text())["results"]
    assert all(r["constant_error"] <= 1e-9 for r in rows)
    deep = [r for r in rows if r["s"] == -3.3][0]
    assert deep["literal_kernel_error"] > 0.1


def test_calibrate_empty(capsys):
    code, out = run(["calibrate", "--s", ""], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["results"] == []


def test_search(capsys):
    code, out = run(["search", "--trials", "4", "--s", "0.5"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["summary"]["violations"] >= 1
    assert doc["summary"]["samples"] == 4
