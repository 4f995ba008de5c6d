import json
import sys
from typing import Optional

import pandas as pd

from .base import ReportWriter


class JsonReport(ReportWriter):
    def render(self, df: pd.DataFrame) -> str:
        # records as a JSON array; values are already plain ints/strings
        return json.dumps(df.to_dict(orient="records"), indent=2, ensure_ascii=False) + "\n"

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
            raise ValueError("caminho é obrigatório para leitura JSON")
        rows = json.loads(self.path.read_text(encoding="utf-8"))
        return pd.DataFrame(rows)
