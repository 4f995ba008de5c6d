from .base import ReportWriter
from .csv_report import CsvReport
from .excel_report import ExcelReport
from .json_report import JsonReport


def writer_for(path) -> ReportWriter:
    suffix = str(path).lower().rsplit(".", 1)[-1] if "." in str(path) else ""
    if suffix == "json":
        return JsonReport(path)
    if suffix in ("xlsx", "xlsm"):
        return ExcelReport(path)
    return CsvReport(path)


__all__ = ["ReportWriter", "CsvReport", "ExcelReport", "JsonReport", "writer_for"]
