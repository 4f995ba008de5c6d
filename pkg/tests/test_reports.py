import pandas as pd
import pytest

from core.reports import CsvReport, ExcelReport, JsonReport, writer_for
from core.sweep import run_sweep


@pytest.mark.parametrize(
    "name,cls",
    [("out.csv", CsvReport), ("out.json", JsonReport), ("out.xlsx", ExcelReport), ("out", CsvReport)],
)
def test_writer_for_suffix(tmp_path, name, cls):
    assert isinstance(writer_for(tmp_path / name), cls)


def test_csv_round_trip_keeps_hex_as_text(tmp_path):
    df = run_sweep(6).to_frame()
    report = CsvReport(tmp_path / "nested" / "sweep.csv")
    assert report.write_table(df) == 21
    back = report.read_table()
    assert list(back.columns) == list(df.columns)
    assert back["weight_hex"].tolist() == df["weight_hex"].tolist()


def test_json_report_is_an_array(tmp_path):
    df = pd.DataFrame([{"n": 7, "d": 2, "kind": "OpenCase2"}])
    report = JsonReport(tmp_path / "r.json")
    report.write_table(df)
    text = (tmp_path / "r.json").read_text()
    assert text.lstrip().startswith("[")
    assert report.read_table().to_dict(orient="records") == [{"n": 7, "d": 2, "kind": "OpenCase2"}]


def test_excel_report_sheets(tmp_path):
    path = tmp_path / "r.xlsx"
    report = ExcelReport(path)
    report.write_table(pd.DataFrame({"n": [1, 2]}), name="a")
    report.write_table(pd.DataFrame({"n": [3]}), name="b")
    assert report.read_table("a")["n"].tolist() == [1, 2]
    assert report.read_table("b")["n"].tolist() == [3]


def test_excel_needs_a_path():
    with pytest.raises(ValueError):
        ExcelReport(None).write_table(pd.DataFrame({"n": [1]}))


def test_csv_to_stdout(capsys):
    CsvReport(None).write_table(pd.DataFrame({"n": [1], "d": [1]}))
    assert capsys.readouterr().out == "n,d\n1,1\n"
