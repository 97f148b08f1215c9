import json

import pytest
from typer.testing import CliRunner

from main import app
from utils.config_loader import settings

runner = CliRunner()


@pytest.fixture(autouse=True)
def _settings(isolated_settings):
    return isolated_settings


def test_classify_f4():
    result = runner.invoke(app, ["classify", "--type", "F4", "--crossed", "a"])
    assert result.exit_code == 0, result.output
    assert "24 elements, 8 Kostant, 5 standard" in result.output


def test_classify_singular_block():
    result = runner.invoke(app, ["classify", "--type", "E7", "--crossed", "7", "--J", "1"])
    assert result.exit_code == 0, result.output
    assert "12 elements" in result.output
    assert "(D6,D5)" in result.output


def test_tables_for_e6():
    result = runner.invoke(app, ["tables", "--only", "E6", "--table", "table1"])
    assert result.exit_code == 0, result.output
    assert "E6: 9 11 15 19 15 9" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["classify", "--type", "E5", "--crossed", "1"],
        ["classify", "--crossed", "1"],
        ["poset", "--type", "A3", "--crossed", "2", "--format", "svg"],
        ["tables", "--table", "table9"],
        ["resolution", "--type", "F4", "--crossed", "1"],
    ],
)
def test_bad_flags_exit_with_two(args):
    assert runner.invoke(app, args).exit_code == 2


def test_oversized_quotients_exit_with_three():
    result = runner.invoke(app, ["poset", "--type", "E8", "--crossed", "4"])
    assert result.exit_code == 3


def test_json_output_is_stable_across_cache_states(tmp_path):
    args = ["poset", "--type", "A3", "--crossed", "2", "--format", "json", "--cache-dir", str(tmp_path / "c")]
    cold = runner.invoke(app, args)
    warm = runner.invoke(app, args)
    verified = runner.invoke(app, args + ["--verify-cache"])
    assert cold.exit_code == warm.exit_code == verified.exit_code == 0
    assert cold.stdout == warm.stdout == verified.stdout
    assert len(json.loads(cold.stdout)["elements"]) == 6


def test_classify_json_round_trips(tmp_path):
    args = ["classify", "--type", "D4", "--crossed", "1,3", "--format", "json", "--cache-dir", str(tmp_path)]
    first = runner.invoke(app, args)
    second = runner.invoke(app, args)
    assert first.stdout == second.stdout
    assert sum(v["kostant"] for v in json.loads(first.stdout)["verdicts"]) == 22


def test_resolution_by_type():
    result = runner.invoke(app, ["resolution", "--type", "A3", "--crossed", "2"])
    assert result.exit_code == 0, result.output
    assert "0 -> R(-2) -> R -> 0" in result.output


def test_dot_output():
    result = runner.invoke(app, ["poset", "--type", "F4", "--crossed", "1", "--format", "dot"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph poset {")


def test_bgg_and_klpoly():
    result = runner.invoke(app, ["bgg", "--type", "A3", "--crossed", "2"])
    assert result.exit_code == 0, result.output
    assert "term sizes 1 1 2 1 1" in result.output

    result = runner.invoke(app, ["klpoly", "--type", "A3", "--crossed", "2", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["convention"] == "maximal_representative"


def test_workbook_export(tmp_path):
    target = tmp_path / "f4.xlsx"
    result = runner.invoke(app, ["classify", "--type", "F4", "--crossed", "1", "--xlsx", str(target)])
    assert result.exit_code == 0, result.output
    assert target.exists()


def test_info_reads_app_metadata(monkeypatch):
    monkeypatch.setattr(settings, "app_env", "testing")
    result = runner.invoke(app, ["info"])
    assert result.exit_code == 0
    assert "Kostant Modules Toolkit 1.0.0 (testing)" in result.stdout
