"""Exhaustive (n, d) sweeps with an append-only JSONL checkpoint.

Work is partitioned by n: a worker computes the whole row d = 1..n so the
Pascal row of n is built once. Only the main process touches the checkpoint,
one write per finished row, and the final record list is sorted by (n, d).
"""
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from functools import partial
from multiprocessing import Pool
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import pandas as pd
from tqdm import tqdm

from .classifier import VerdictKind, classify
from .config import DEFAULT_SETTINGS, Settings
from .errors import CheckpointIOError, CorruptCheckpointError, InvalidParametersError
from .weights import Esbf, Trichotomy, weight_exact

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["n", "d", "trichotomy", "verdict_kind", "rule", "weight_hex"]
RECORD_FIELDS = ("n", "d", "weight_hex", "trichotomy", "verdict_kind", "rule")


@dataclass(frozen=True, order=True)
class SweepRecord:
    n: int
    d: int
    weight_hex: str
    trichotomy: str
    verdict_kind: str
    rule: str

    def to_line(self, schema_version: int) -> str:
        payload = {"schema": schema_version}
        payload.update(asdict(self))
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_payload(cls, payload: Dict) -> "SweepRecord":
        return cls(**{name: payload[name] for name in RECORD_FIELDS})


def sweep_row(n: int, compare_only: bool = False) -> List[SweepRecord]:
    started = time.perf_counter()
    rows = []
    for d in range(1, n + 1):
        e = Esbf(n, d)
        report = weight_exact(e)
        verdict = classify(e)
        rows.append(
            SweepRecord(
                n=n,
                d=d,
                weight_hex="" if compare_only else report.weight_hex,
                trichotomy=report.trichotomy.value,
                verdict_kind=verdict.kind.value,
                rule=verdict.rule,
            )
        )
    logger.debug("linha n=%d em %.3fs", n, time.perf_counter() - started)
    return rows


def soundness_violation(record: SweepRecord) -> Optional[str]:
    """Reason the verdict contradicts the exact weight, or None."""
    kind = VerdictKind(record.verdict_kind)
    trichotomy = Trichotomy(record.trichotomy)
    if record.weight_hex and Trichotomy.compare(int(record.weight_hex, 16), 1 << (record.n - 1)) is not trichotomy:
        return "weight_hex diverge da tricotomia"
    if kind.not_balanced and trichotomy is Trichotomy.EQUAL:
        return "veredito não balanceado com peso igual a 2^(n-1)"
    if kind.balanced and trichotomy is not Trichotomy.EQUAL:
        return "veredito balanceado com peso diferente de 2^(n-1)"
    if kind is VerdictKind.NOT_BALANCED_LESS and trichotomy is Trichotomy.GREATER:
        return "direção Less com peso maior"
    if kind is VerdictKind.NOT_BALANCED_GREATER and trichotomy is Trichotomy.LESS:
        return "direção Greater com peso menor"
    if trichotomy is Trichotomy.EQUAL and record.d >= 2 and kind is not VerdictKind.BALANCED_POW2_FAMILY:
        return "par balanceado fora da família 2^t"
    return None


def in_balanced_family(n: int, d: int) -> bool:
    """(n, d) = (2^{t+1} l - 1, 2^t) for some t >= 1, l >= 1."""
    if d < 2 or d & (d - 1) or d > n:
        return False
    return (n + 1) % (2 * d) == 0


@dataclass
class SweepSummary:
    records: int = 0
    per_kind: Dict[str, int] = field(default_factory=dict)
    per_trichotomy: Dict[str, int] = field(default_factory=dict)
    violations: List[Tuple[int, int, str]] = field(default_factory=list)
    balanced_nonlinear: List[Tuple[int, int]] = field(default_factory=list)
    family_mismatches: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.family_mismatches

    def line(self) -> str:
        kinds = " ".join(f"{k.value}={self.per_kind.get(k.value, 0)}" for k in VerdictKind)
        return (
            f"records={self.records} {kinds} balanced_d>=2={len(self.balanced_nonlinear)} "
            f"violations={len(self.violations)}"
        )

    def to_dict(self) -> Dict:
        return {
            "records": self.records,
            "per_kind": dict(self.per_kind),
            "per_trichotomy": dict(self.per_trichotomy),
            "violations": [list(v) for v in self.violations],
            "balanced_nonlinear": [list(p) for p in self.balanced_nonlinear],
            "family_mismatches": [list(p) for p in self.family_mismatches],
        }


def summarize(records: Iterable[SweepRecord]) -> SweepSummary:
    summary = SweepSummary()
    for record in records:
        summary.records += 1
        summary.per_kind[record.verdict_kind] = summary.per_kind.get(record.verdict_kind, 0) + 1
        summary.per_trichotomy[record.trichotomy] = summary.per_trichotomy.get(record.trichotomy, 0) + 1
        reason = soundness_violation(record)
        if reason is not None:
            summary.violations.append((record.n, record.d, reason))
        balanced = record.trichotomy == Trichotomy.EQUAL.value
        if balanced and record.d >= 2:
            summary.balanced_nonlinear.append((record.n, record.d))
        if record.d >= 2 and balanced != in_balanced_family(record.n, record.d):
            summary.family_mismatches.append((record.n, record.d))
    for n, d, reason in summary.violations:
        logger.warning("violação em (%d, %d): %s", n, d, reason)
    return summary


class SweepCheckpoint:
    """Append-only JSONL file of finished rows."""

    def __init__(self, path: Union[str, Path], settings: Settings = DEFAULT_SETTINGS):
        self.path = Path(path)
        self.schema_version = settings.checkpoint_schema_version

    def reset(self) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text("", encoding="utf-8")
        except OSError as exc:
            raise CheckpointIOError(f"não foi possível criar o checkpoint {self.path}: {exc}") from exc

    def append_row(self, rows: List[SweepRecord]) -> None:
        text = "".join(r.to_line(self.schema_version) + "\n" for r in rows)
        try:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(text)
                fh.flush()
                os.fsync(fh.fileno())
        except OSError as exc:
            raise CheckpointIOError(f"falha ao gravar checkpoint {self.path}: {exc}") from exc

    def _parse(self, line: str, line_no: int) -> SweepRecord:
        payload = json.loads(line)
        if not isinstance(payload, dict):
            raise ValueError("linha não é um objeto JSON")
        if payload.get("schema") != self.schema_version:
            raise CorruptCheckpointError(
                self.path, line_no, f"versão de schema {payload.get('schema')!r}, esperado {self.schema_version}"
            )
        record = SweepRecord.from_payload(payload)
        Esbf(record.n, record.d)
        Trichotomy(record.trichotomy)
        VerdictKind(record.verdict_kind)
        return record

    def load(self) -> Dict[int, List[SweepRecord]]:
        """Completed rows keyed by n; a torn final line is cut off the file."""
        if not self.path.exists():
            return {}
        try:
            raw = self.path.read_bytes()
        except OSError as exc:
            raise CheckpointIOError(f"falha ao ler checkpoint {self.path}: {exc}") from exc

        lines = raw.split(b"\n")
        # a complete file ends with "\n", leaving an empty last element
        if lines and lines[-1] == b"":
            lines.pop()
        by_key: Dict[Tuple[int, int], SweepRecord] = {}
        good_bytes = 0
        for idx, chunk in enumerate(lines):
            line_no = idx + 1
            is_last = idx == len(lines) - 1
            try:
                record = self._parse(chunk.decode("utf-8"), line_no)
            except CorruptCheckpointError:
                raise
            except (ValueError, KeyError, TypeError, UnicodeDecodeError) as exc:
                if not is_last:
                    raise CorruptCheckpointError(self.path, line_no, str(exc)) from exc
                logger.warning("checkpoint %s: linha final %d incompleta, truncando", self.path, line_no)
                self._truncate(good_bytes)
                break
            by_key[(record.n, record.d)] = record
            good_bytes += len(chunk) + 1
        else:
            if raw and not raw.endswith(b"\n"):
                # last line parsed but lacks its terminator
                try:
                    with open(self.path, "a", encoding="utf-8") as fh:
                        fh.write("\n")
                except OSError as exc:
                    raise CheckpointIOError(f"falha ao gravar checkpoint {self.path}: {exc}") from exc

        rows: Dict[int, List[SweepRecord]] = {}
        for record in by_key.values():
            rows.setdefault(record.n, []).append(record)
        complete = {n: sorted(rs) for n, rs in rows.items() if len(rs) == n}
        partial_rows = sorted(set(rows) - set(complete))
        if partial_rows:
            logger.info("checkpoint %s: linhas parciais serão recalculadas: %s", self.path, partial_rows)
        return complete

    def _truncate(self, size: int) -> None:
        try:
            with open(self.path, "r+b") as fh:
                fh.truncate(max(size, 0))
        except OSError as exc:
            raise CheckpointIOError(f"falha ao truncar checkpoint {self.path}: {exc}") from exc


@dataclass
class SweepResult:
    records: List[SweepRecord]
    summary: SweepSummary
    resumed_rows: int = 0

    def to_frame(self) -> pd.DataFrame:
        return records_frame(self.records)


def records_frame(records: Iterable[SweepRecord]) -> pd.DataFrame:
    rows = [asdict(r) for r in records]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def run_sweep(
    n_max: int,
    workers: Optional[int] = None,
    checkpoint: Union[str, Path, None] = None,
    compare_only: bool = False,
    resume: bool = False,
    progress: bool = False,
    settings: Settings = DEFAULT_SETTINGS,
) -> SweepResult:
    if not isinstance(n_max, int) or n_max < 3:
        raise InvalidParametersError(f"n_max deve ser >= 3, recebido {n_max!r}")
    workers = settings.workers if workers is None else workers
    if workers < 1:
        raise InvalidParametersError(f"workers deve ser >= 1, recebido {workers}")

    store = SweepCheckpoint(checkpoint, settings) if checkpoint is not None else None
    done: Dict[int, List[SweepRecord]] = {}
    if store is not None:
        if resume:
            done = {n: rows for n, rows in store.load().items() if n <= n_max}
            for rows in done.values():
                if any(bool(r.weight_hex) == compare_only for r in rows):
                    raise CorruptCheckpointError(store.path, 0, "modo compare-only diverge do checkpoint")
            logger.info("retomando: %d linhas já concluídas", len(done))
        else:
            store.reset()

    pending = [n for n in range(1, n_max + 1) if n not in done]
    logger.info("sweep n<=%d: %d linhas pendentes, %d workers", n_max, len(pending), workers)
    compute = partial(sweep_row, compare_only=compare_only)

    with tqdm(total=len(pending), desc="sweep", unit=" linha", file=sys.stderr, disable=not progress) as bar:
        if workers == 1 or len(pending) <= 1:
            finished = map(compute, pending)
            _collect(finished, done, store, bar)
        else:
            # larger rows first so the tail of the pool is not one huge row
            order = sorted(pending, reverse=True)
            with Pool(processes=workers) as pool:
                _collect(pool.imap_unordered(compute, order), done, store, bar)

    records = sorted(r for rows in done.values() for r in rows)
    summary = summarize(records)
    logger.info("sweep concluído: %s", summary.line())
    return SweepResult(records, summary, resumed_rows=n_max - len(pending))


def _collect(finished, done: Dict[int, List[SweepRecord]], store: Optional[SweepCheckpoint], bar) -> None:
    for rows in finished:
        if store is not None:
            store.append_row(rows)
        done[rows[0].n] = rows
        bar.update(1)
