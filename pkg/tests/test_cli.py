import json

import pytest

from ordcurves.cli import main


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def square(tmp_path):
    return write(
        tmp_path, "square.json",
        {"d": 1, "points": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]},
    )


@pytest.fixture
def octet(tmp_path):
    pts = [[0, 0], [1, 0], [0, 1], [3, 5], [2, 7], [5, 1], [1, 4], [6, 2]]
    return write(tmp_path, "octet.json", {"d": 2, "points": [[str(x), str(y)] for x, y in pts]})


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ordinary_square(square, capsys):
    code, out, _ = run(["ordinary", "--input", square, "--n", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["curves"]) == 6
    assert all(len(c["incidence"]) == 2 for c in data["curves"])


def test_ordinary_below_threshold_is_empty(octet, capsys):
    code, out, _ = run(["ordinary", "--input", octet, "--n", "4"], capsys)
    assert code == 0
    assert json.loads(out)["curves"] == []


def test_lift_roundtrip(square, capsys):
    code, out, _ = run(["lift", "--input", square], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["lifted"][1] == ["1", "0"]


def test_bad_rational_exit_2(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"d": 1, "points": [["3/0", "0"], ["1", "1"]]})
    code, _, err = run(["lift", "--input", path], capsys)
    assert code == 2 and "bad rational" in err


def test_duplicate_points_exit_2(tmp_path, capsys):
    path = write(tmp_path, "dup.json", {"d": 1, "points": [["1", "0"], ["1", "0"]]})
    code, _, err = run(["lift", "--input", path], capsys)
    assert code == 2 and "duplicate" in err


def test_json_syntax_error_reports_location(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"d": 1,\n  "points": [[}')
    code, _, err = run(["lift", "--input", str(path)], capsys)
    assert code == 2 and "line 2" in err


def test_float_coordinates_rejected(tmp_path, capsys):
    path = write(tmp_path, "fl.json", {"d": 1, "points": [[0.5, 1], [1, 1]]})
    code, _, err = run(["lift", "--input", path], capsys)
    assert code == 2 and "float" in err


def test_precondition_exit_3(tmp_path, capsys):
    path = write(tmp_path, "coll.json", {"d": 1, "points": [["0", "0"], ["1", "0"], ["2", "0"]]})
    code, _, err = run(["determined", "--input", path], capsys)
    assert code == 3 and "hypothesis violated" in err


def test_richness_report(octet, capsys):
    code, out, _ = run(["richness", "--input", octet, "--e", "1", "--threshold", "3/4"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["max_richness"] >= 2
    assert data["regularity"]["threshold"] == "3/4"


def test_nd_verify_and_grow_and_project(octet, capsys):
    code, out, _ = run(["nd-verify", "--input", octet, "--basis", "0,1,2"], capsys)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(["nd-grow", "--input", octet, "--seed", "7"], capsys)
    assert code == 0
    grown = json.loads(out)
    assert grown["success"]
    basis = ",".join(str(i) for i in grown["chain"])
    code, out, _ = run(["project", "--input", octet, "--basis", basis], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["trace"]["filtered"] == 0
    assert data["trace"]["emitted"] == len(data["curves"]["curves"])


def test_construct_output_feeds_back(tmp_path, capsys):
    code, out, _ = run(
        ["construct", "--kind", "theorem6", "--d", "2", "--m", "7", "--seed", "1"], capsys
    )
    assert code == 0
    data = json.loads(out)
    path = write(tmp_path, "t6.json", {"d": data["d"], "points": data["points"]})
    code, out, _ = run(["ordinary", "--input", path, "--n", "5"], capsys)
    assert code == 0
    assert len(json.loads(out)["curves"]) <= 6


def test_sigma_count(capsys):
    code, out, _ = run(["sigma-count", "--degrees", "1,1", "--d", "3"], capsys)
    assert code == 0
    assert json.loads(out)["count"] == 3


def test_sweep_deterministic_bytes(capsys):
    args = ["sweep", "--d", "2", "--n", "5", "--sizes", "8:9", "--seed", "3", "--no-timing"]
    code1, out1, _ = run(args, capsys)
    code2, out2, _ = run(args, capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    lines = out1.strip().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "A_size,d,n,determined_count,ordinary_count,max_richness,runtime_ms"
    assert len(lines) == 4


def test_command_output_deterministic_bytes(octet, capsys):
    code1, out1, _ = run(["ordinary", "--input", octet, "--n", "5"], capsys)
    code2, out2, _ = run(["ordinary", "--input", octet, "--n", "5"], capsys)
    assert out1 == out2 and code1 == code2 == 0


def test_workers_equivalence(octet, capsys):
    _, out1, _ = run(["determined", "--input", octet], capsys)
    _, out2, _ = run(["--workers", "2", "determined", "--input", octet], capsys)
    assert out1 == out2


def test_workers_env_default(octet, capsys, monkeypatch):
    monkeypatch.setenv("ORDCURVES_WORKERS", "2")
    _, out_env, _ = run(["determined", "--input", octet], capsys)
    monkeypatch.delenv("ORDCURVES_WORKERS")
    _, out_serial, _ = run(["determined", "--input", octet], capsys)
    assert out_env == out_serial


def test_oracle_check(square, octet, capsys):
    code, out, _ = run(["oracle-check", "--input", square], capsys)
    assert code == 0
    assert all(r["agree"] for r in json.loads(out))
    code, out, _ = run(["oracle-check", "--input", octet, "--nd-size", "3"], capsys)
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 1 + 56
    assert all(r["agree"] for r in reports)


def test_output_to_file(square, tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(["lift", "--input", square, "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["d"] == 1


def test_invariant_violation_exit_4(square, capsys, monkeypatch):
    from ordcurves import cli
    from ordcurves.errors import InvariantViolation

    def boom(config, workers=None):
        raise InvariantViolation("synthetic defect", {"detail": 1})

    monkeypatch.setattr(cli, "enumerate_determined", boom)
    code, _, err = run(["determined", "--input", square], capsys)
    assert code == 4
    assert "internal invariant violated" in err and '"repro"' in err
