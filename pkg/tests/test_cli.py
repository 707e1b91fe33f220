import json
from pathlib import Path

import pytest

from src.cli import build_family, main
from src.utils import InputFormatError, load_arrangement

from tests.conftest import running_arrangement


DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


def test_chambers_of_the_running_example(capsys):
    assert run(capsys, "chambers", "--input", DATA / "running.json") == (0, "10", "")


@pytest.mark.parametrize("engine", ["simple", "extended", "symmetry"])
def test_whitney_from_a_matrix_file(capsys, engine):
    code, out, _ = run(
        capsys, "whitney", "--matrix", DATA / "running_matrix.json", "--group", DATA / "running_group.json",
        "--engine", engine,
    )
    assert code == 0
    assert out == "1 4 5"


def test_json_output(capsys):
    code, out, _ = run(capsys, "whitney", "gen", "resonance", "3", "--orbit-id", "exact", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"whitney": [1, 7, 15, 9], "chambers": 32, "charpoly": "t^3 - 7*t^2 + 15*t - 9"}


def test_charpoly_without_level_skipping(capsys):
    code, out, _ = run(capsys, "charpoly", "--input", DATA / "running.json", "--no-skip-levels", "--validate", "exhaustive")
    assert (code, out) == (0, "t^2 - 4*t + 5")


def test_gen_then_count(capsys, tmp_path):
    target = tmp_path / "threshold2.json"
    assert run(capsys, "gen", "threshold", "2", "--output", target)[0] == 0
    arrangement, group = load_arrangement(target)
    assert arrangement.n == 4
    assert group is not None and group.order() == 8
    assert run(capsys, "chambers", "--input", target) == (0, "14", "")


def test_gen_prints_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "separability", DATA / "square_points.json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 3
    assert len(payload["hyperplanes"]) == 4


def test_validate_group(capsys, tmp_path):
    assert run(capsys, "validate-group", "--input", DATA / "running.json") == (0, "true", "")
    bad = tmp_path / "bad_group.json"
    bad.write_text(json.dumps([[4, 2, 3, 1]]), encoding="utf-8")
    code, out, _ = run(capsys, "validate-group", "--input", DATA / "running.json", "--group", bad)
    assert (code, out) == (3, "false")


def test_malformed_json_reports_its_position(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"dim": 2,\n  "hyperplanes": [}\n', encoding="utf-8")
    code, out, err = run(capsys, "chambers", "--input", broken)
    assert code == 2
    assert out == ""
    error = json.loads(err.splitlines()[-1])
    assert error["error"] == "InputFormatError"
    assert error["line"] == 2


def test_bad_scalar_is_a_parse_error(capsys, tmp_path):
    path = tmp_path / "float.json"
    path.write_text(json.dumps({"dim": 1, "hyperplanes": [{"coeffs": ["1/0"]}]}), encoding="utf-8")
    code, _, err = run(capsys, "chambers", "--input", path)
    assert code == 2
    error = json.loads(err.splitlines()[-1])
    assert error["error"] == "InputFormatError"
    assert "hyperplane 1, coefficient 1" in error["message"]


def test_bad_scalar_reports_hyperplane_and_line(capsys, tmp_path):
    path = tmp_path / "bad_scalar.json"
    path.write_text(
        '{\n  "dim": 2,\n  "hyperplanes": [\n    {"coeffs": ["1", "0"]},\n    {"coeffs": ["1", "x/3"]}\n  ]\n}\n',
        encoding="utf-8",
    )
    with pytest.raises(InputFormatError) as caught:
        load_arrangement(path)
    assert (caught.value.line, caught.value.column) == (5, 22)
    assert caught.value.path == str(path)
    assert "hyperplane 2, coefficient 2" in str(caught.value)
    code, _, err = run(capsys, "chambers", "--input", path)
    assert code == 2
    error = json.loads(err.splitlines()[-1])
    assert (error["error"], error["line"], error["column"]) == ("InputFormatError", 5, 22)


def test_malformed_points_and_groups_are_parse_errors(capsys, tmp_path):
    points = tmp_path / "points.json"
    points.write_text(json.dumps({"field": "Z", "points": [[0, 1]]}), encoding="utf-8")
    code, _, err = run(capsys, "gen", "separability", points)
    assert code == 2
    assert json.loads(err.splitlines()[-1])["error"] == "InputFormatError"

    bad_point = tmp_path / "bad_point.json"
    bad_point.write_text(json.dumps({"points": [[0, 1], [1, "1//2"]]}), encoding="utf-8")
    code, _, err = run(capsys, "gen", "separability", bad_point)
    assert code == 2
    assert "point 2, coordinate 2" in json.loads(err.splitlines()[-1])["message"]

    group = tmp_path / "group.json"
    group.write_text(json.dumps([[2, 1, 3, 4], 5]), encoding="utf-8")
    code, _, err = run(capsys, "validate-group", "--input", DATA / "running.json", "--group", group)
    assert code == 2
    assert json.loads(err.splitlines()[-1])["error"] == "InputFormatError"

    embedded = tmp_path / "embedded.json"
    payload = json.loads((DATA / "running.json").read_text(encoding="utf-8"))
    payload["group"] = "2 1 3 4"
    embedded.write_text(json.dumps(payload), encoding="utf-8")
    assert run(capsys, "chambers", "--input", embedded)[0] == 2


def test_missing_file_and_missing_source(capsys, tmp_path):
    assert run(capsys, "chambers", "--input", tmp_path / "absent.json")[0] == 2
    assert run(capsys, "chambers")[0] == 2
    assert run(capsys, "whitney", "gen", "resonance")[0] == 2


def test_group_of_the_wrong_degree_is_a_domain_error(capsys):
    code, _, err = run(capsys, "whitney", "gen", "resonance", "2", "--group", DATA / "running_group.json")
    assert code == 3
    assert json.loads(err.splitlines()[-1])["error"] == "GroupError"


def test_zero_normal_is_a_domain_error(capsys, tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({"dim": 2, "hyperplanes": [{"coeffs": [0, 0], "constant": 1}]}), encoding="utf-8")
    assert run(capsys, "chambers", "--input", path)[0] == 3


def test_report_writes_html_and_figure(capsys, tmp_path):
    html, figure = tmp_path / "report.html", tmp_path / "levels.png"
    code, out, _ = run(
        capsys, "report", "gen", "resonance", "3", "--html", html, "--figure", figure, "--format", "json"
    )
    assert code == 0
    runs = json.loads(out)
    assert [entry["orbit_identification"] for entry in runs] == ["pseudo", "exact", "none"]
    assert all(entry["chambers"] == 32 for entry in runs)
    assert html.exists() and figure.exists()
    assert "Summary" in html.read_text(encoding="utf-8")


def test_build_family_arguments():
    arrangement, group = build_family("resonance", ["3"], extended=True)
    assert (arrangement.n, group.order()) == (7, 24)
    assert build_family("platonic", ["icosahedron"])[0].n == 12
    with pytest.raises(InputFormatError):
        build_family("resonance", ["three"])
    with pytest.raises(InputFormatError):
        build_family("platonic", ["cube"])
    with pytest.raises(InputFormatError):
        build_family("hexagon", ["3"])


def test_loaded_file_matches_the_fixture():
    arrangement, group = load_arrangement(DATA / "running.json")
    assert arrangement == running_arrangement()
    assert group.order() == 6
