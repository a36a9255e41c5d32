import json

import jsonschema
import pytest

from compident.cli import main
from compident.families import cycle
from compident.model import dumps_model, load_model
from compident.report import report_schema


@pytest.fixture
def golden_file(tmp_path):
    path = tmp_path / "golden.json"
    path.write_text(dumps_model(cycle(4, outputs=(3,))))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_text(capsys, golden_file):
    code, out, _ = run(capsys, "analyze", str(golden_file))
    assert code == 0
    assert "coefficient map (m = 5)" in out
    assert "verdict: identifiable (certified)  generic rank 4 of required 4" in out


def test_analyze_json_matches_schema(capsys, golden_file):
    code, out, _ = run(capsys, "analyze", str(golden_file), "--format", "json")
    report = json.loads(out)
    jsonschema.validate(report, report_schema())
    assert code == 0
    assert report["coefficient_map"]["m"] == 5
    assert report["coefficient_map"]["entries"][3] == {"label": "y3:rhs:u1:s^1",
                                                       "poly": "k_{2,1}*k_{3,2}"}
    assert "timing_seconds" not in report


def test_timing_is_opt_in(capsys, golden_file):
    _, out, _ = run(capsys, "analyze", str(golden_file), "--format", "json", "--timing")
    report = json.loads(out)
    jsonschema.validate(report, report_schema())
    assert report["timing_seconds"] >= 0


def test_reports_are_byte_identical(capsys, golden_file):
    first = run(capsys, "analyze", str(golden_file), "--format", "json", "--seed", "9")
    second = run(capsys, "analyze", str(golden_file), "--format", "json", "--seed", "9")
    assert first == second


def test_unidentifiable_exit_code(capsys):
    code, out, _ = run(capsys, "family", "cycle", "--n", "3", "--leak", "1,2", "--analyze",
                       "--format", "json")
    assert code == 1
    report = json.loads(out)
    jsonschema.validate(report, report_schema())
    assert report["verdict"]["certified"] is True


@pytest.mark.parametrize("text", ['{"n": 3, "edges": [[1, 2]', '{"n": 2, "edges": [[1, 1]], "out": [1]}'])
def test_bad_model_exit_code(capsys, tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, out, err = run(capsys, "analyze", str(path))
    assert code == 2 and out == "" and err.startswith("error:")


def test_missing_file_and_bad_flags(capsys, tmp_path):
    assert run(capsys, "analyze", str(tmp_path / "nope.json"))[0] == 2
    assert run(capsys, "family", "cycle")[0] == 2
    assert run(capsys, "family", "cycle", "--n", "4", "--leak", "x")[0] == 2
    assert run(capsys, "suite", "no-such-suite")[0] == 2


def test_not_strongly_connected_is_an_error(capsys, tmp_path):
    path = tmp_path / "path.json"
    path.write_text('{"n": 3, "edges": [[1, 2], [2, 3]], "in": [1], "out": [3]}')
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "strongly connected" in err


def test_family_emit_round_trip(capsys, tmp_path):
    path = tmp_path / "wing.json"
    code, out, _ = run(capsys, "family", "wing", "--n", "5", "--leak", "3", "--emit", str(path))
    assert code == 0 and out == ""
    m = load_model(path)
    assert m.n == 5 and m.leaks == (3,) and len(m.edges) == 8


def test_family_prints_model(capsys):
    code, out, _ = run(capsys, "family", "cycle", "--n", "5", "--add-outgoing", "3,4")
    assert code == 0
    assert json.loads(out)["edges"] == [[1, 2], [1, 3], [1, 4], [2, 3], [3, 4], [4, 5], [5, 1]]


def test_family_analyze(capsys):
    code, out, _ = run(capsys, "family", "fin", "--n", "4", "--leak", "2", "--analyze")
    assert code == 0 and "identifiable (certified)" in out


def test_suite_command(capsys):
    code, out, _ = run(capsys, "suite", "vandermonde", "--max-n", "4")
    assert code == 0
    assert out.splitlines()[-1] == "4 instances, 0 failures"
    again = run(capsys, "suite", "vandermonde", "--max-n", "4")
    assert again == (code, out, "")
