"""Command-line front end: python -m app.cli <subcomando> ...

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""
import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from core.classifier import classify, open_cases, two_power_certificate
from core.config import Settings
from core.errors import (
    CheckpointIOError,
    ConfigurationError,
    CorruptCheckpointError,
    InvalidParametersError,
    PrecisionInsufficientError,
)
from core.experiments import PRESETS, Expectation, ExperimentSpec, preset, run_experiment
from core.logs import configure_logging
from core.reports import JsonReport, writer_for
from core.sweep import run_sweep
from core.verification import verify_closed_forms
from core.weights import Esbf, weight_exact

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _print_lines(lines: List[str]) -> None:
    for line in lines:
        print(line)


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def _write_report(df: pd.DataFrame, output: Optional[str], as_json: bool, name: str) -> None:
    if output:
        writer_for(output).write_table(df, name=name)
        logger.info("relatório gravado em %s (%d linhas)", output, len(df))
    elif as_json:
        JsonReport(None).write_table(df, name=name)
    else:
        writer_for(None).write_table(df, name=name)


def cmd_weight(args, settings: Settings) -> int:
    e = Esbf(args.n, args.d)
    report = weight_exact(e)
    payload = {
        "n": e.n,
        "d": e.d,
        "weight": str(report.weight),
        "weight_hex": report.weight_hex,
        "half": str(e.half),
        "trichotomy": report.trichotomy.value,
        "balanced": report.balanced,
    }
    if args.json:
        _print_json(payload)
    else:
        _print_lines([f"{k}={str(v).lower() if isinstance(v, bool) else v}" for k, v in payload.items()])
    return EXIT_OK


def cmd_classify(args, settings: Settings) -> int:
    verdict = classify(Esbf(args.n, args.d))
    if args.json:
        _print_json(verdict.to_dict())
        return EXIT_OK
    lines = [f"n={args.n} d={args.d}", f"kind={verdict.kind.value}", f"rule={verdict.rule}", "trace:"]
    lines += [f"  [{'x' if step.outcome else ' '}] {step.condition}" for step in verdict.trace]
    _print_lines(lines)
    return EXIT_OK


def cmd_sweep(args, settings: Settings) -> int:
    result = run_sweep(
        args.n_max,
        workers=args.workers or settings.workers,
        checkpoint=args.checkpoint,
        compare_only=args.compare_only,
        resume=args.resume,
        progress=args.progress,
        settings=settings,
    )
    _write_report(result.to_frame(), args.output, args.json, "sweep")
    if args.output and Path(args.output).suffix.lower() == ".json":
        companion = Path(args.output).with_suffix(".summary.json")
        companion.write_text(json.dumps(result.summary.to_dict(), indent=2) + "\n", encoding="utf-8")
    print(result.summary.line(), file=sys.stderr)
    for n, d, reason in result.summary.violations:
        print(f"violação ({n},{d}): {reason}", file=sys.stderr)
    for n, d in result.summary.family_mismatches:
        print(f"par fora da família balanceada esperada: ({n},{d})", file=sys.stderr)
    return EXIT_OK if result.summary.ok else EXIT_VERIFICATION


def cmd_open_cases(args, settings: Settings) -> int:
    rows: List[Dict] = []
    for e in open_cases(args.n_max):
        verdict = classify(e)
        cert = two_power_certificate(e)
        rows.append(
            {
                "n": e.n,
                "d": e.d,
                "kind": verdict.kind.value,
                "rule": verdict.rule,
                "certificate": f"t={cert[0]},s={cert[1]}" if cert else "",
            }
        )
    df = pd.DataFrame(rows, columns=["n", "d", "kind", "rule", "certificate"])
    _write_report(df, args.output, args.json, "open_cases")
    print(f"casos em aberto: {len(df)}", file=sys.stderr)
    return EXIT_OK


def _experiment_from_args(args) -> ExperimentSpec:
    if args.t_values is None:
        if args.preset is None:
            raise InvalidParametersError("informe um preset ou --t/--l-max")
        return preset(args.preset)
    if args.preset is not None:
        raise InvalidParametersError("preset e --t são mutuamente exclusivos")
    if args.l_max is None:
        raise InvalidParametersError("--t exige --l-max")
    return ExperimentSpec(
        "custom",
        t_values=tuple(args.t_values),
        l_min=args.l_min,
        l_max=args.l_max,
        r_values=tuple(args.r_values),
        s_values=tuple(args.s_values) if args.s_values is not None else None,
        expectation=Expectation(args.expect),
    )


def cmd_reproduce(args, settings: Settings) -> int:
    scale = args.scale if args.scale is not None else settings.section5_scale
    spec = _experiment_from_args(args).scaled(scale=scale, l_max=args.l_max)
    report = run_experiment(spec, workers=args.workers or settings.workers)
    if args.output:
        _write_report(report.rows, args.output, args.json, spec.name)
    print(report.summary_line(), file=sys.stderr)
    if args.json and not args.output:
        _print_json(
            {
                "preset": spec.name,
                "l_range": [spec.l_min, spec.l_max],
                "pairs": len(report.rows),
                "ok": report.ok,
                "deviations": report.deviations.to_dict(orient="records"),
                "witnesses": report.witnesses.to_dict(orient="records"),
            }
        )
    else:
        for row in report.deviations.itertuples(index=False):
            print(f"desvio: n={row.n} d={row.d} t={row.t} s={row.s} l={row.l} r={row.r} {row.trichotomy}")
        for row in report.witnesses.itertuples(index=False):
            print(f"greater: n={row.n} d={row.d} t={row.t} s={row.s} l={row.l} r={row.r}")
    if not report.ok and report.deviations.empty:
        print("nenhuma testemunha Greater encontrada", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def cmd_verify(args, settings: Settings) -> int:
    report = verify_closed_forms(
        args.n_max,
        precision_bits=args.precision_bits,
        workers=args.workers or settings.workers,
        progress=args.progress,
        settings=settings,
    )
    print(report.summary_line(), file=sys.stderr)
    if args.output:
        _write_report(report.failures, args.output, args.json, "failures")
    elif args.json:
        _print_json(
            {
                "n_max": report.n_max,
                "checks": report.checks,
                "failures": report.failures.to_dict(orient="records"),
                "escalations": report.escalations.to_dict(orient="records"),
            }
        )
    else:
        for row in report.failures.itertuples(index=False):
            print(f"falha: {row.form} n={row.n} {row.params} esperado={row.expected} obtido={row.got} ({row.reason})")
        for row in report.escalations.itertuples(index=False):
            print(f"escalonamento: {row.form} n={row.n} {row.params} bits={row.precision_bits}")
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def _common_flags(argument_default=None) -> argparse.ArgumentParser:
    # accepted before and after the subcommand; the subcommand copy only sets what was given
    common = argparse.ArgumentParser(add_help=False, argument_default=argument_default)
    common.add_argument("--json", action="store_true", help="saída em JSON")
    common.add_argument("--workers", type=int, help="processos paralelos")
    common.add_argument("--checkpoint", type=str, help="arquivo JSONL de checkpoint")
    common.add_argument("--resume", action="store_true", help="retoma a partir do checkpoint")
    common.add_argument("--scale", type=float, help="fator para o limite superior de l")
    common.add_argument("--precision-bits", type=int, help="precisão inicial em bits")
    common.add_argument("--output", type=str, help="arquivo de relatório (.csv, .json, .xlsx)")
    common.add_argument("--progress", action="store_true", help="barra de progresso em stderr")
    common.add_argument("--log-level", type=str, help="DEBUG, INFO, WARNING...")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="esbf",
        description="Pesos e balanceamento de funções booleanas simétricas elementares",
        parents=[_common_flags()],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weight", parents=[common], help="peso exato de σ_{n,d}")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("classify", parents=[common], help="veredito do classificador")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", parents=[common], help="varredura exaustiva 1 <= d <= n <= n_max")
    p.add_argument("n_max", type=int)
    p.add_argument("--compare-only", action="store_true", help="omite weight_hex")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("open-cases", parents=[common], help="pares não decididos pelos teoremas")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_open_cases)

    p = sub.add_parser("reproduce-section5", parents=[common], help="experimentos sobre d = 2^t + 2^s")
    p.add_argument("preset", nargs="?", choices=sorted(PRESETS), help="omitido quando --t é informado")
    p.add_argument("--t", dest="t_values", type=int, nargs="+", default=None, help="valores de t do experimento")
    p.add_argument("--s", dest="s_values", type=int, nargs="+", default=None, help="valores de s (padrão: todos)")
    p.add_argument("--r", dest="r_values", type=int, nargs="+", default=[0, 1, 2], help="resíduos r em {-1,0,1,2}")
    p.add_argument("--l-min", type=int, default=3, help="limite inferior (ímpar) para l")
    p.add_argument("--l-max", type=int, default=None, help="limite superior explícito para l")
    p.add_argument(
        "--expect",
        choices=[e.value for e in Expectation if e is not Expectation.PER_CASE],
        default=Expectation.ALL_LESS.value,
        help="resultado esperado para todos os pares",
    )
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("verify-closed-forms", parents=[common], help="confere as formas fechadas")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = Settings.from_env()
        level = args.log_level or settings.log_level
        configure_logging(level)
        settings = replace(settings, log_level=level)
        return args.func(args, settings)
    except (InvalidParametersError, ConfigurationError) as exc:
        print(f"erro: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CheckpointIOError, CorruptCheckpointError, OSError) as exc:
        print(f"erro de E/S: {exc}", file=sys.stderr)
        return EXIT_IO
    except PrecisionInsufficientError as exc:
        print(f"falha de verificação: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
