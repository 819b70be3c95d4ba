import json
import subprocess
import sys

import pytest

from brickforge import verify
from brickforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_demazure(capsys):
    assert run_json(capsys, "demazure", "--system", "A2", "--word", "1212") == {"demazure": "121"}
    assert run_json(capsys, "demazure", "--system", "B2", "--word", "21122112") == {"demazure": "1212"}


def test_roots(capsys):
    data = run_json(capsys, "roots", "--system", "B2")
    assert data["positive_roots"] == [[1, 0], [0, 1], [1, 1], [1, 2]]
    assert data["weights"] == [[[1, 1], [1, 1]], [[1, 2], [1, 1]]]
    assert data["order"] == 8 and data["longest_element"] == "1212"


def test_custom_cartan(capsys, tmp_path):
    path = tmp_path / "g2.json"
    path.write_text(json.dumps({"cartan": [[2, -1], [-3, 2]]}))
    data = run_json(capsys, "roots", "--cartan", str(path))
    assert len(data["positive_roots"]) == 6
    data = run_json(capsys, "roots", "--cartan", "[[2,0],[0,2]]")
    assert data["positive_roots"] == [[1, 0], [0, 1]]


def test_facets_b3(capsys):
    data = run_json(capsys, "facets", "--system", "B3", "--word", "123123123", "--target", "1")
    assert [f["positions"] for f in data["facets"]] == [
        [1, 2, 3, 4, 5, 6, 8, 9], [1, 2, 3, 5, 6, 7, 8, 9], [2, 3, 4, 5, 6, 7, 8, 9],
    ]
    assert data["facets"][0]["roots"][6] == [1, 1, 0]
    assert data["upper_labels"] == [[0, 1, 0], [0, 0, 1], [1, 1, 0]]


def test_flips(capsys):
    data = run_json(capsys, "flips", "--system", "A2", "--word", "1212", "--target", "12", "--facet", "12")
    first = data["flips"][0]
    assert first == {"facet": [1, 2], "position": 1, "root": [1, 0], "flippable": True, "to": [2, 3], "new_position": 3}
    assert data["flips"][1]["flippable"] is False
    code, _, err = run(capsys, "flips", "--system", "A2", "--word", "1212", "--target", "12", "--facet", "13")
    assert code == 2 and "not a facet" in err


def test_antigreedy(capsys):
    data = run_json(capsys, "antigreedy", "--system", "B2", "--word", "21122112", "--target", "12",
                    "--functional=-2,1")
    assert data["facet"] == [1, 3, 5, 6, 7, 8]
    assert [s["condition"] for s in data["trace"]] == [1, 4, 2, 4, 2, 1, 1, 2]
    code, _, err = run(capsys, "antigreedy", "--system", "A2", "--word", "1212", "--target", "12",
                       "--functional=1,-1")
    assert code == 2 and "negative" in err


def test_brickpoly_parts(capsys):
    data = run_json(capsys, "brickpoly", "--system", "A2", "--word", "11212", "--target", "12",
                    "--emit", "vrep,hrep,kappa,normalfan")
    assert data["vrep"]["points"] == [[[-8, 3], [-7, 3]], [[-2, 3], [-7, 3]], [[1, 3], [-4, 3]]]
    assert data["vrep"]["rays"] == [[0, 1]]
    assert len(data["hrep"]) == 4
    assert [k["element"] for k in data["kappa"]] == ["e", "1", "12"]
    assert [n["chambers"] for n in data["normal_fan"]] == [["e"], ["1"], ["12"]]


def test_svg_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "plot", "--system", "B2", "--word", "2221", "--target", "2")
    assert code == 0 and out.startswith("<svg") and "</svg>" in out and "http" not in out.replace(
        'xmlns="http://www.w3.org/2000/svg"', "")
    data = run_json(capsys, "brickpoly", "--system", "A2", "--word", "11212", "--target", "12", "--emit", "vrep,svg")
    assert data["svg"].startswith("<svg")
    target = tmp_path / "b.svg"
    data = run_json(capsys, "brickpoly", "--system", "A2", "--word", "11212", "--target", "12",
                    "--emit", "vrep,svg", "--svg-output", str(target))
    assert "svg" not in data and target.read_text().startswith("<svg")
    code, _, err = run(capsys, "plot", "--system", "B3", "--word", "123", "--target", "1")
    assert code == 2


def test_bruhat_cone(capsys):
    data = run_json(capsys, "bruhat-cone", "--system", "B3", "--from", "1", "--to", "w0")
    assert data["upper_labels"] == [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
    code, _, err = run(capsys, "bruhat-cone", "--system", "A2", "--from", "12", "--to", "21")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys, "demazure", "--system", "A2", "--word", "13")[0] == 2
    assert run(capsys, "roots", "--system", "Z9")[0] == 2
    assert run(capsys, "facets", "--system", "A2", "--word", "12", "--target", "21")[0] == 2
    assert run(capsys, "verify", "--checks", "nonsense")[0] == 2
    assert run(capsys, "brickpoly", "--system", "A2", "--word", "12", "--target", "e", "--emit", "bogus")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["facets", "--system", "A2"])
    assert exc.value.code == 2


def test_verify_pass_and_report(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--system", "A2", "--system", "B2", "--max-word-length", "3",
                       "--checks", "cone_equality,oracles,dyer", "--output", str(report))
    assert code == 0
    assert out.count("PASS") == 6 and "FAIL" not in out
    rows = json.loads(report.read_text())
    assert {(r["system"], r["check"]) for r in rows} >= {("A2", "dyer"), ("B2", "oracles")}


def test_verify_reports_failures(capsys, monkeypatch):
    monkeypatch.setitem(verify.INSTANCE_CHECKS, "cone_equality", lambda inst, **_: ["forced"])
    code, out, _ = run(capsys, "verify", "--system", "A2", "--max-word-length", "1", "--checks", "cone_equality")
    assert code == 1
    assert "FAIL" in out and "counterexample: Q=1, w=e: forced" in out


def test_output_is_deterministic(capsys):
    argv = ["brickpoly", "--system", "B2", "--word", "21122112", "--target", "12", "--emit", "vrep,hrep,kappa"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "brickforge.cli", "demazure", "--system", "A2", "--word", "1212"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out) == {"demazure": "121"}
