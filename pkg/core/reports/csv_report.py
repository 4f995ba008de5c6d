import sys
from typing import Optional

import pandas as pd

from .base import ReportWriter


class CsvReport(ReportWriter):
    def render(self, df: pd.DataFrame) -> str:
        return df.to_csv(index=False)

    def write_table(self, df: pd.DataFrame, name: str = "report") -> int:
        text = self.render(df)
        if self.path is None:
            sys.stdout.write(text)
        else:
            self._prepare()
            self.path.write_text(text, encoding="utf-8")
        return len(df)

    def read_table(self, name: Optional[str] = None) -> pd.DataFrame:
        if self.path is None:
            raise ValueError("caminho é obrigatório para leitura CSV")
        return pd.read_csv(self.path, dtype={"weight_hex": str}, keep_default_na=False)
