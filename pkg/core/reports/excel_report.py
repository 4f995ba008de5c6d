from typing import Optional

import pandas as pd

from .base import ReportWriter


class ExcelReport(ReportWriter):
    def render(self, df: pd.DataFrame) -> str:
        raise ValueError("relatórios Excel exigem um arquivo de saída")

    def write_table(self, df: pd.DataFrame, name: str = "report") -> int:
        if self.path is None:
            raise ValueError("caminho é obrigatório para escrita Excel")
        self._prepare()
        mode = "a" if self.path.exists() else "w"
        kwargs = {"if_sheet_exists": "replace"} if mode == "a" else {}
        with pd.ExcelWriter(self.path, engine="openpyxl", mode=mode, **kwargs) as writer:
            df.to_excel(writer, sheet_name=name[:31], index=False)
        return len(df)

    def read_table(self, name: Optional[str] = None) -> pd.DataFrame:
        if self.path is None:
            raise ValueError("caminho é obrigatório para leitura Excel")
        return pd.read_excel(self.path, sheet_name=name or 0, engine="openpyxl", dtype={"weight_hex": str})
