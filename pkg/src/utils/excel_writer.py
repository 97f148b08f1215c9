"""Workbook export of report frames: classifications, Table 1/Table 2 reproductions, resolutions, golden checks."""

from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from openpyxl import Workbook, load_workbook
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils.dataframe import dataframe_to_rows
from openpyxl.worksheet.worksheet import Worksheet

from utils.config_loader import settings
from utils.logging_utils import execution_logger

HEADER_FONT = Font(bold=True, color="FFFFFF")
HEADER_FILL = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
VERDICT_FILLS = {
    True: PatternFill(start_color="C6EFCE", end_color="C6EFCE", fill_type="solid"),
    False: PatternFill(start_color="FFC7CE", end_color="FFC7CE", fill_type="solid"),
}
# Boolean columns shaded green/red
VERDICT_COLUMNS = {"Kostant", "Standard", "Passed", "Palindromic"}
MAX_SHEET_NAME = 31


def _cell_value(value: Any) -> Any:
    """Lists of element ids and shifts become space separated text."""
    if isinstance(value, (list, tuple, set, frozenset)):
        return " ".join(str(v) for v in value)
    if isinstance(value, dict):
        return "; ".join(f"{k}: {_cell_value(v)}" for k, v in value.items())
    return value


class ReportWorkbook:
    """One .xlsx file; each frame replaces its own sheet and leaves the others in place."""

    def __init__(self, filepath: Optional[Union[str, Path]] = None):
        default = Path(settings.output.base_dir) / settings.output.excel.filename
        self.filepath = Path(filepath) if filepath else default
        self.filepath.parent.mkdir(parents=True, exist_ok=True)
        self.workbook = self._open()

    def _open(self) -> Workbook:
        if self.filepath.exists():
            try:
                return load_workbook(self.filepath)
            except Exception as e:
                execution_logger.logger.warning("Unreadable workbook replaced", path=str(self.filepath), error=str(e))
        workbook = Workbook()
        workbook.remove(workbook.active)
        return workbook

    def write_frame(self, frame: pd.DataFrame, sheet_name: str) -> Worksheet:
        sheet_name = sheet_name[:MAX_SHEET_NAME]
        if sheet_name in self.workbook.sheetnames:
            self.workbook.remove(self.workbook[sheet_name])
        ws = self.workbook.create_sheet(sheet_name)

        verdict_cols = set()
        for r_idx, row in enumerate(dataframe_to_rows(frame, index=False, header=True), 1):
            for c_idx, value in enumerate(row, 1):
                cell = ws.cell(row=r_idx, column=c_idx, value=_cell_value(value))
                if r_idx == 1:
                    cell.font = HEADER_FONT
                    cell.fill = HEADER_FILL
                    cell.alignment = Alignment(horizontal="center", vertical="center")
                    if value in VERDICT_COLUMNS:
                        verdict_cols.add(c_idx)
                elif c_idx in verdict_cols and value is not None:
                    cell.fill = VERDICT_FILLS[bool(value)]

        excel = settings.output.excel
        if excel.autosize_columns:
            for column in ws.columns:
                width = max((len(str(c.value)) for c in column if c.value is not None), default=0)
                ws.column_dimensions[column[0].column_letter].width = min(width + 2, 50)
        if excel.freeze_panes:
            ws.freeze_panes = excel.freeze_panes

        execution_logger.log_action("write_sheet", sheet_name, rows=len(frame), columns=len(frame.columns))
        return ws

    @property
    def sheet_names(self) -> List[str]:
        return list(self.workbook.sheetnames)

    def write_frames(self, frames: Dict[str, pd.DataFrame]) -> Path:
        """Write every frame to its sheet and save once."""
        for sheet_name, frame in frames.items():
            self.write_frame(frame, sheet_name)
        self.workbook.save(self.filepath)
        return self.filepath
