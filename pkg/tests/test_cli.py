import json

from typer.testing import CliRunner

from treedyn.cli import app
from treedyn.patternfile import parse_pattern_text
from treedyn.snowflake import decompose
from treedyn.tree_core import ReducedShape, reduce

runner = CliRunner()

STAR = "edge o a\nedge o b\nedge o c\ncycle a b c\n"
STEFAN = "edge x1 x2\nedge x2 x3\ncycle x2 x3 x1\n"


def _invoke(*args):
    return runner.invoke(app, ["--quiet", *args])


def test_analyze_json(tmp_path):
    path = tmp_path / "star.txt"
    path.write_text(STAR)
    result = _invoke("analyze", str(path), "--format", "json")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["snowflake"]["levels"] == [1, 3]
    assert report["oracle"]["periods"] == [1, 3]


def test_analyze_writes_report(tmp_path):
    path = tmp_path / "stefan.txt"
    path.write_text(STEFAN)
    out = tmp_path / "report.txt"
    result = _invoke("analyze", str(path), "--cutoff", "4", "--out", str(out))
    assert result.exit_code == 0
    assert out.read_text() == result.stdout
    assert "oracle.periods: [1, 2, 3, 4]" in result.stdout


def test_analyze_rejects_malformed_files(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("edge a b\nloop a\n")
    assert _invoke("analyze", str(path)).exit_code == 2


def test_analyze_reports_budget(tmp_path):
    path = tmp_path / "stefan.txt"
    path.write_text(STEFAN)
    assert _invoke("analyze", str(path), "--budget", "1").exit_code == 3


def test_thresholds():
    result = _invoke("thresholds", "3", "3", "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["misiurewicz_threshold"] == 24
    assert _invoke("thresholds", "1", "1").exit_code == 2
    accepted = _invoke("thresholds", "3", "3", "--tol", "1e-9", "--budget", "10", "--format", "json")
    assert accepted.exit_code == 0
    assert accepted.stdout == result.stdout


def test_sweep_refuses_large_limits():
    assert _invoke("sweep", "--max-period", "12").exit_code == 2


def test_small_sweep():
    result = _invoke("sweep", "--max-period", "3", "--max-endpoints", "2", "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["counterexamples"] == []


def test_synth_period_set(tmp_path):
    dump = tmp_path / "map.txt"
    result = _invoke(
        "synth", "period-set", "--tree", "3-star", "--n", "3", "--key", "2",
        "--cutoff", "15", "--map-out", str(dump), "--format", "json",
    )
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["periods"] == [1, 3, 6]
    assert report["verified"] is True
    assert dump.read_text().startswith("# kind: period-set\n")


def test_synth_prop3():
    result = _invoke("synth", "prop3", "--m", "3", "--k", "1", "--format", "json")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["snowflake_levels"] == [1, 3, 6]
    assert len(report["orbit"]) == 6


def test_synth_prop3_writes_the_orbit_pattern(tmp_path):
    target = tmp_path / "orbit.txt"
    result = _invoke("synth", "prop3", "--m", "3", "--k", "1", "--pattern-out", str(target))
    assert result.exit_code == 0
    parsed = parse_pattern_text(target.read_text())
    assert parsed.pattern.period == 6
    assert decompose(parsed.pattern).snowflake_type.levels == (1, 3, 6)
    assert reduce(parsed.ambient) == ReducedShape(3, 3)
    assert _invoke("synth", "interval", "--pattern-out", str(target)).exit_code == 2


def test_synth_snowflake_refuses_non_snowflakes(tmp_path):
    path = tmp_path / "stefan.txt"
    path.write_text(STEFAN)
    assert _invoke("synth", "snowflake", "--pattern", str(path)).exit_code == 4
    assert _invoke("synth", "snowflake").exit_code == 2


def test_synth_precondition_failures():
    assert _invoke("synth", "period-set", "--n", "5").exit_code == 4
    assert _invoke("synth", "interval", "--key", "0").exit_code == 4
