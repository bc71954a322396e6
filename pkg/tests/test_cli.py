import json
import subprocess
import sys

import pytest

from conftest import bundle_json
from toric_parliament import cli
from toric_parliament.bundlefile import dump_bundle
from toric_parliament.errors import ConsistencyError
from toric_parliament.fan import projective_space
from toric_parliament.klyachko import ToricBundle, make_filtration


@pytest.fixture
def golden_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(bundle_json(name)))
        return str(path)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("command", cli.COMMANDS)
def test_every_command_succeeds_on_a_golden_bundle(capsys, golden_file, command):
    code, out, _ = run(capsys, command, "--input", golden_file("hirzebruch_gg_h1"))
    assert code == 0
    assert isinstance(json.loads(out), dict)


@pytest.mark.parametrize("kind", ["p2", "hirzebruch", "p3"])
def test_random_fan_report_is_deterministic(capsys, kind):
    first = run(capsys, "report", "--random-fan", kind, "--seed", "3", "--no-cohomology")
    second = run(capsys, "report", "--random-fan", kind, "--seed", "3", "--no-cohomology")
    assert first[0] == 0 and first == second


def test_restrict_reports_degrees(capsys, golden_file):
    code, out, _ = run(capsys, "restrict", "--input", golden_file("hirzebruch_gg_h1"))
    walls = json.loads(out)["walls"]
    assert code == 0 and len(walls) == 4
    assert all(len(w["degrees"]) == 2 for w in walls)


@pytest.mark.parametrize("flag", [["--character", "-1,0"], ["--character=-1,0"]])
def test_cohomology_single_character(capsys, golden_file, flag):
    code, out, _ = run(capsys, "cohomology", "--input", golden_file("hirzebruch_gg_h1"), *flag)
    assert code == 0 and json.loads(out)["h"] == [0, 1, 0]


def test_euler_characteristic_line(capsys, golden_file):
    code, out, _ = run(capsys, "cohomology", "--input", golden_file("tangent_p2"), "--euler")
    data = json.loads(out)
    assert code == 0
    assert sum(t["coefficient"] for t in data["terms"]) == 8


def test_text_format(capsys, golden_file):
    code, out, _ = run(capsys, "positivity", "--input", golden_file("p2_ample_not_gg"),
                       "--format", "text")
    assert code == 0
    lines = dict(line.split("\t", 1) for line in out.splitlines())
    assert lines["globally_generated"] == "false"


def test_output_file_and_svg(capsys, golden_file, tmp_path):
    target = tmp_path / "out.json"
    svg = tmp_path / "fig" / "p.svg"
    code, out, _ = run(capsys, "parliament", "--input", golden_file("p2_gg_not_very_ample"),
                       "--output", str(target), "--svg", str(svg))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["figures"] == [str(svg)]
    assert svg.read_text().startswith("<?xml")


def test_figures_dir(capsys, golden_file, tmp_path):
    code, out, _ = run(capsys, "report", "--input", golden_file("tangent_p2"),
                       "--figures-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "tangent_p2_parliament.svg").exists()


def test_parse_error_exits_one(capsys, golden_file, tmp_path):
    data = bundle_json("tangent_p2")
    data["bundle"]["filtrations"][0]["steps"][0]["span"][0][0] = "x"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, err = run(capsys, "validate", "--input", str(path))
    assert code == 1
    assert json.loads(out)["error"]["details"]["path"] == \
        "$.bundle.filtrations[0].steps[0].span[0][0]"
    assert "parse_error" in err


def test_usage_error_exits_one(capsys):
    assert run(capsys, "report")[0] == 1
    assert run(capsys, "nonsense", "--random-fan", "p2")[0] == 1


def test_invalid_fan_exits_one(capsys, tmp_path):
    data = bundle_json("tangent_p2")
    data["max_cones"].pop()
    path = tmp_path / "fan.json"
    path.write_text(json.dumps(data))
    for command in ("validate", "sections"):
        code, out, _ = run(capsys, command, "--input", str(path))
        assert code == 1 and json.loads(out)["error"]["code"] == "invalid_fan"


def test_incompatible_filtrations_exit_two(capsys, tmp_path):
    lines = [(1, 0), (0, 1), (1, 1)]
    filtrations = [make_filtration(0, [(0, [(1, 0), (0, 1)])], 2)]
    filtrations += [make_filtration(i, [(0, [(1, 0), (0, 1)]), (1, [lines[i - 1]])], 2)
                    for i in (1, 2, 3)]
    path = tmp_path / "inc.json"
    path.write_text(dump_bundle(ToricBundle(projective_space(3), 2, tuple(filtrations))))
    code, out, _ = run(capsys, "positivity", "--input", str(path))
    assert code == 2
    assert json.loads(out)["error"]["code"] == "incompatible_filtrations"


def test_consistency_violation_exits_three(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise ConsistencyError("forced")
    monkeypatch.setattr(cli.rep, "sections_record", broken)
    code, out, _ = run(capsys, "sections", "--random-fan", "p2")
    assert code == 3 and json.loads(out)["error"]["code"] == "internal_consistency"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toric_parliament", "validate",
                           "--random-fan", "p2", "--seed", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)
