import pandas as pd
from openpyxl import load_workbook

from kostant.classifier import classify_regular
from utils.excel_writer import ReportWorkbook


def test_classification_sheet(tmp_path, a3_middle):
    path = tmp_path / "out" / "a3.xlsx"
    report = classify_regular(a3_middle)
    assert ReportWorkbook(path).write_frames({"Classification": report.to_frame()}) == path

    ws = load_workbook(path)["Classification"]
    header = [c.value for c in ws[1]]
    assert header[:3] == ["Element", "Position", "Length"]
    assert ws.max_row == 7
    kostant = header.index("Kostant") + 1
    values = [ws.cell(row=r, column=kostant).value for r in range(2, 8)]
    assert sum(bool(v) for v in values) == 5
    fills = {ws.cell(row=r, column=kostant).fill.start_color.rgb[-6:] for r in range(2, 8)}
    assert fills == {"C6EFCE", "FFC7CE"}
    assert ws.freeze_panes == "A2"


def test_sheets_are_replaced_not_duplicated(tmp_path):
    path = tmp_path / "tables.xlsx"
    ReportWorkbook(path).write_frames({"Golden_Checks": pd.DataFrame({"Item": ["A3:2"], "Passed": [True]})})
    book = ReportWorkbook(path)
    book.write_frames(
        {
            "Golden_Checks": pd.DataFrame({"Item": ["E6:1", "E6:2"], "Passed": [True, False]}),
            "Resolution": pd.DataFrame({"Index": [0, 1], "Shifts": [[0], [2, 2]]}),
        }
    )
    assert book.sheet_names == ["Golden_Checks", "Resolution"]
    workbook = load_workbook(path)
    assert workbook["Golden_Checks"].max_row == 3
    assert workbook["Resolution"]["B3"].value == "2 2"


def test_long_sheet_names_are_truncated(tmp_path):
    book = ReportWorkbook(tmp_path / "x.xlsx")
    ws = book.write_frame(pd.DataFrame({"a": [1]}), "Table1_Maximal_Parabolics_With_A_Long_Suffix")
    assert len(ws.title) == 31
