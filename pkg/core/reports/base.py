from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional, Union

import pandas as pd


class ReportWriter(ABC):
    def __init__(self, path: Union[str, Path, None]):
        # None means stdout for text formats
        self.path = Path(path) if path is not None else None

    def _prepare(self) -> None:
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)

    @abstractmethod
    def write_table(self, df: pd.DataFrame, name: str = "report") -> int:
        ...

    @abstractmethod
    def read_table(self, name: Optional[str] = None) -> pd.DataFrame:
        ...

    @abstractmethod
    def render(self, df: pd.DataFrame) -> str:
        ...
