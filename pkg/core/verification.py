"""Cross-check every closed form against exact integer arithmetic."""
import logging
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd
from tqdm import tqdm

from .closed_forms import (
    ClosedFormEval,
    quarter_trichotomy_pow2_plus1,
    residue_class_sum_closed,
    trichotomy_weight_pow2,
    weight_pow2_closed,
    weight_pow2_plus1_closed,
    weight_two_powers_closed,
)
from .combinatorics import residue_class_sum
from .config import DEFAULT_SETTINGS, Settings
from .errors import InvalidParametersError, PrecisionInsufficientError
from .weights import Esbf, Trichotomy, weight_exact

logger = logging.getLogger(__name__)

FAILURE_COLUMNS = ["form", "n", "params", "expected", "got", "reason"]
ESCALATION_COLUMNS = ["form", "n", "params", "precision_bits", "escalations"]


@dataclass
class FormCheck:
    form: str
    n: int
    params: str
    expected: int
    evaluate: Callable[[], ClosedFormEval]


def _checks_for(n: int, precision_bits: Optional[int], settings: Settings) -> List[FormCheck]:
    kw = {"precision_bits": precision_bits, "settings": settings}
    checks = []
    for p in range(1, n.bit_length() + 1):
        L = 1 << p
        for i in range(L):
            checks.append(
                FormCheck(
                    "residue_class_sum", n, f"p={p},i={i}", residue_class_sum(n, L, i),
                    partial(residue_class_sum_closed, n, p, i, **kw),
                )
            )
    t = 1
    while (1 << t) <= n:
        checks.append(
            FormCheck(
                "weight_pow2", n, f"t={t}", weight_exact(Esbf(n, 1 << t)).weight,
                partial(weight_pow2_closed, n, t, **kw),
            )
        )
        if (1 << t) + 1 <= n:
            checks.append(
                FormCheck(
                    "weight_pow2_plus1", n, f"t={t}", weight_exact(Esbf(n, (1 << t) + 1)).weight,
                    partial(weight_pow2_plus1_closed, n, t, **kw),
                )
            )
        s = t + 1
        while (1 << t) + (1 << s) <= n:
            checks.append(
                FormCheck(
                    "weight_two_powers", n, f"t={t},s={s}", weight_exact(Esbf(n, (1 << t) + (1 << s))).weight,
                    partial(weight_two_powers_closed, n, t, s, **kw),
                )
            )
            s += 1
        t += 1
    return checks


def _sign_failures(n: int) -> List[Dict]:
    """Residue-table and quarter-weight claims that disagree with exact weights."""
    failures = []
    t = 1
    while (1 << t) <= n:
        exact = weight_exact(Esbf(n, 1 << t)).trichotomy
        predicted = trichotomy_weight_pow2(n, t)
        if predicted is not exact:
            failures.append(_failure("trichotomy_pow2", n, f"t={t}", exact.value, predicted.value, "tabela de resíduos"))
        if (1 << t) + 1 <= n:
            claim = quarter_trichotomy_pow2_plus1(n, t)
            if claim is not None:
                weight = weight_exact(Esbf(n, (1 << t) + 1)).weight
                actual = Trichotomy.compare(weight, 1 << (n - 2))
                if actual is not claim:
                    failures.append(_failure("quarter_pow2_plus1", n, f"t={t}", actual.value, claim.value, "sinal"))
        t += 1
    return failures


def _failure(form, n, params, expected, got, reason) -> Dict:
    return {"form": form, "n": n, "params": params, "expected": str(expected), "got": str(got), "reason": reason}


def verify_row(n: int, precision_bits: Optional[int] = None, settings: Settings = DEFAULT_SETTINGS):
    """All checks for one n; returns (count, failures, escalations)."""
    failures = _sign_failures(n)
    escalations = []
    checks = _checks_for(n, precision_bits, settings)
    for check in checks:
        try:
            result = check.evaluate()
        except PrecisionInsufficientError as exc:
            failures.append(_failure(check.form, n, check.params, check.expected, "-", str(exc)))
            continue
        if result.escalations:
            escalations.append(
                {
                    "form": check.form,
                    "n": n,
                    "params": check.params,
                    "precision_bits": result.precision_bits,
                    "escalations": result.escalations,
                }
            )
        if result.nearest != check.expected:
            failures.append(_failure(check.form, n, check.params, check.expected, result.nearest, "arredondamento"))
    return len(checks), failures, escalations


@dataclass
class VerificationReport:
    n_max: int
    checks: int = 0
    failures: pd.DataFrame = field(default_factory=lambda: pd.DataFrame(columns=FAILURE_COLUMNS))
    escalations: pd.DataFrame = field(default_factory=lambda: pd.DataFrame(columns=ESCALATION_COLUMNS))

    @property
    def ok(self) -> bool:
        return self.failures.empty

    def summary_line(self) -> str:
        return (
            f"n_max={self.n_max} verificações={self.checks} falhas={len(self.failures)} "
            f"escalonamentos={len(self.escalations)}"
        )


def verify_closed_forms(
    n_max: int,
    precision_bits: Optional[int] = None,
    workers: int = 1,
    progress: bool = False,
    settings: Settings = DEFAULT_SETTINGS,
) -> VerificationReport:
    if not isinstance(n_max, int) or n_max < 4:
        raise InvalidParametersError(f"n_max deve ser >= 4, recebido {n_max!r}")
    compute = partial(verify_row, precision_bits=precision_bits, settings=settings)
    ns = list(range(1, n_max + 1))
    results: Dict[int, Tuple] = {}
    with tqdm(total=len(ns), desc="formas fechadas", unit=" n", disable=not progress) as bar:
        if workers > 1:
            with Pool(processes=workers) as pool:
                for n, result in zip(ns, pool.imap(compute, ns)):
                    results[n] = result
                    bar.update(1)
        else:
            for n in ns:
                results[n] = compute(n)
                bar.update(1)

    failures: List[Dict] = []
    escalations: List[Dict] = []
    checks = 0
    for n in ns:
        count, fails, escs = results[n]
        checks += count
        failures.extend(fails)
        escalations.extend(escs)
    report = VerificationReport(
        n_max=n_max,
        checks=checks,
        failures=pd.DataFrame(failures, columns=FAILURE_COLUMNS),
        escalations=pd.DataFrame(escalations, columns=ESCALATION_COLUMNS),
    )
    for row in report.failures.itertuples(index=False):
        logger.warning("falha %s n=%d %s: esperado %s, obtido %s (%s)", row.form, row.n, row.params, row.expected, row.got, row.reason)
    if not report.escalations.empty:
        logger.info("%d avaliações precisaram de mais precisão", len(report.escalations))
    logger.info(report.summary_line())
    return report
