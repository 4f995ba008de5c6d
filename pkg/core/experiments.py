"""Weight-sign experiments over d = 2^t + 2^s with n = 2^{t+1} l + r."""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from multiprocessing import Pool
from typing import Dict, Iterator, Optional, Tuple

import pandas as pd

from .errors import InvalidParametersError
from .weights import Esbf, Trichotomy, weight_exact

logger = logging.getLogger(__name__)


class Expectation(str, Enum):
    ALL_LESS = "AllLess"
    ALL_GREATER = "AllGreater"
    # no Equal anywhere and at least one Greater witness
    MIXED = "Mixed"
    PER_CASE = "PerCase"


@dataclass(frozen=True)
class ExperimentPair:
    t: int
    s: int
    l: int
    r: int

    @property
    def n(self) -> int:
        return (self.l << (self.t + 1)) + self.r

    @property
    def d(self) -> int:
        return (1 << self.t) + (1 << self.s)


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    t_values: Tuple[int, ...]
    l_min: int
    l_max: int
    r_values: Tuple[int, ...] = (0, 1, 2)
    # None means every s with t < s <= floor(log2 n)
    s_values: Optional[Tuple[int, ...]] = None
    expectation: Expectation = Expectation.ALL_LESS
    per_case: Dict[int, Trichotomy] = field(default_factory=dict)

    def __post_init__(self):
        if not self.t_values or min(self.t_values) < 1:
            raise InvalidParametersError("t deve ser >= 1")
        if self.l_min < 1 or self.l_min % 2 == 0 or self.l_max < self.l_min:
            raise InvalidParametersError(f"intervalo de l inválido: {self.l_min}..{self.l_max}")
        if not set(self.r_values) <= {-1, 0, 1, 2}:
            raise InvalidParametersError(f"r deve estar em {{-1,0,1,2}}, recebido {self.r_values}")
        if self.expectation is Expectation.PER_CASE and not self.per_case:
            raise InvalidParametersError("expectativa PerCase exige a tabela por s")

    def l_values(self) -> range:
        return range(self.l_min, self.l_max + 1, 2)

    def pairs(self) -> Iterator[ExperimentPair]:
        for t in self.t_values:
            for l in self.l_values():
                for r in self.r_values:
                    n = (l << (t + 1)) + r
                    s_range = self.s_values if self.s_values is not None else range(t + 1, n.bit_length())
                    for s in s_range:
                        pair = ExperimentPair(t, s, l, r)
                        if t < s and pair.d <= n:
                            yield pair

    def expected(self, pair: ExperimentPair) -> Optional[Trichotomy]:
        if self.expectation is Expectation.ALL_LESS:
            return Trichotomy.LESS
        if self.expectation is Expectation.ALL_GREATER:
            return Trichotomy.GREATER
        if self.expectation is Expectation.PER_CASE:
            return self.per_case.get(pair.s)
        return None

    def scaled(self, scale: Optional[float] = None, l_max: Optional[int] = None) -> "ExperimentSpec":
        """Copy with a smaller upper l bound, rounded down to odd and never below l_min."""
        if l_max is None:
            if scale is None or scale == 1.0:
                return self
            if scale <= 0:
                raise InvalidParametersError(f"escala deve ser > 0, recebido {scale}")
            l_max = int(self.l_max * scale)
        l_max = max(self.l_min, l_max if l_max % 2 == 1 else l_max - 1)
        return replace(self, l_max=l_max)


PRESETS: Dict[str, ExperimentSpec] = {
    "t1": ExperimentSpec("t1", t_values=(1,), l_min=3, l_max=181),
    "t2-l3": ExperimentSpec(
        "t2-l3",
        t_values=(2,),
        l_min=3,
        l_max=3,
        s_values=(3, 4),
        expectation=Expectation.PER_CASE,
        per_case={3: Trichotomy.GREATER, 4: Trichotomy.LESS},
    ),
    "t2": ExperimentSpec("t2", t_values=(2,), l_min=5, l_max=121),
    "t3plus": ExperimentSpec("t3plus", t_values=(3,), l_min=3, l_max=31, expectation=Expectation.MIXED),
}


def preset(name: str) -> ExperimentSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidParametersError(f"preset desconhecido {name!r}; opções: {', '.join(PRESETS)}")


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    rows: pd.DataFrame
    deviations: pd.DataFrame
    witnesses: pd.DataFrame

    @property
    def ok(self) -> bool:
        if not self.deviations.empty:
            return False
        if self.spec.expectation is Expectation.MIXED:
            return not self.witnesses.empty
        return True

    def summary_line(self) -> str:
        return (
            f"preset={self.spec.name} l={self.spec.l_min}..{self.spec.l_max} pares={len(self.rows)} "
            f"desvios={len(self.deviations)} testemunhas_greater={len(self.witnesses)}"
        )


REPORT_COLUMNS = ["t", "s", "l", "r", "n", "d", "trichotomy", "expected", "deviation"]


def _evaluate(pair: ExperimentPair) -> Tuple[ExperimentPair, Trichotomy]:
    return pair, weight_exact(Esbf(pair.n, pair.d)).trichotomy


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentReport:
    # grouped by n so each worker reuses one Pascal row
    pairs = sorted(spec.pairs(), key=lambda p: (p.n, p.d))
    logger.info("experimento %s: %d pares", spec.name, len(pairs))
    if workers > 1 and len(pairs) > 1:
        with Pool(processes=workers) as pool:
            results = pool.map(_evaluate, pairs, chunksize=max(1, len(pairs) // (4 * workers)))
    else:
        results = [_evaluate(p) for p in pairs]

    rows = []
    for pair, trichotomy in results:
        expected = spec.expected(pair)
        deviation = trichotomy is Trichotomy.EQUAL or (expected is not None and trichotomy is not expected)
        rows.append(
            {
                "t": pair.t,
                "s": pair.s,
                "l": pair.l,
                "r": pair.r,
                "n": pair.n,
                "d": pair.d,
                "trichotomy": trichotomy.value,
                "expected": expected.value if expected is not None else "",
                "deviation": deviation,
            }
        )
    df = pd.DataFrame(rows, columns=REPORT_COLUMNS)
    df["deviation"] = df["deviation"].astype(bool)
    deviations = df[df["deviation"]].reset_index(drop=True)
    witnesses = df[df["trichotomy"] == Trichotomy.GREATER.value].reset_index(drop=True)
    for row in deviations.itertuples(index=False):
        logger.warning("desvio em n=%d d=%d: %s (esperado %s)", row.n, row.d, row.trichotomy, row.expected or "-")
    report = ExperimentReport(spec, df, deviations, witnesses)
    logger.info(report.summary_line())
    return report
