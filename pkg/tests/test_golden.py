import pytest
import yaml

from reports import golden
from reports.golden import checks_frame, first_divergence, run_golden, table1_frame, table1_rows, table2_frame
from utils.errors import GoldenMismatchError


def test_first_divergence():
    assert first_divergence([1, 2, 3], [1, 2, 3]) is None
    assert first_divergence([1, 2, 3], [1, 5, 3]) == "[1]: expected 2, got 5"
    assert first_divergence([[0], [2]], [[0], [3]]) == "[1][0]: expected 2, got 3"
    assert first_divergence([1, 2], [1, 2, 3]) == "length 2 != 3"


def test_table2_is_reproduced():
    checks = run_golden(tables=["table2"])
    assert checks and all(c.passed for c in checks)
    frame = table2_frame(["E7"])
    assert list(frame["D'"]) == ["(D6,D5)", "(A1,empty)", "empty"]


def test_e6_row_of_table1():
    checks = run_golden(only=["E6"], tables=["table1"])
    assert table1_rows(checks) == {"E6": [9, 11, 15, 19, 15, 9]}
    assert all(checks_frame(checks)["Passed"])
    frame = table1_frame(checks)
    assert list(frame.columns) == ["Type", "r=1", "r=2", "r=3", "r=4", "r=5", "r=6"]
    assert frame.iloc[0]["r=4"] == 19


def test_regular_figures():
    checks = run_golden(only=["F4", "D4", "A3"], tables=["figures"])
    assert {c.item for c in checks} >= {"F4:[1]:kostant", "D4:[1, 3]:kostant", "A3:[2]:elements"}


def test_small_resolution_golden():
    checks = run_golden(only=["A3"], tables=["resolution"])
    assert [c.item for c in checks] == ["(A3,A1xA1):k=1:betti", "(A3,A1xA1):k=1:shifts"]


def test_mismatches_name_the_table_and_item(tmp_path, monkeypatch):
    (tmp_path / "table1.yaml").write_text(yaml.safe_dump({"A3": {"kostant": {2: 4}, "sizes": {2: 6}}}))
    monkeypatch.setattr(golden, "GOLDEN_DIR", tmp_path)
    with pytest.raises(GoldenMismatchError) as caught:
        run_golden(tables=["table1"])
    error = caught.value
    assert error.exit_code == 4
    assert error.expected == 4 and error.actual == 5
    assert error.context["item"] == "A3:2"
    assert error.context["divergence"] == "expected 4, got 5"
