# quadselmer/main.py
from __future__ import annotations

import argparse
import json
import sys

from .config import Config, load_config
from .errors import DomainError, UsageError
from .field import RATIONAL, make_field
from .logger import setup_logging
from .report import FieldReport, render, to_json, to_text
from .symbols import PairingKind, PairingVerdict, pairing_matrix
from .verify import Verdict, reciprocity_fuzz, scan, verify_field

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _parse_d(text: str) -> int | str:
    if text.strip().upper() == RATIONAL:
        return RATIONAL
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"d debe ser un entero o 'Q': {text!r}")


def _exit_code(reports: list[FieldReport]) -> int:
    if any(r.has_fail for r in reports):
        return EXIT_FAIL
    if any(r.has_inconclusive for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ===============================
# PARSER
# ===============================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    common.add_argument("--bound", type=int, default=None, help="cota de norma para búsquedas de primos")
    common.add_argument("--jobs", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--height", type=int, default=None)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="quadselmer",
        description="Grupos de 2-Selmer de cuerpos cuadráticos y sus teoremas de dualidad.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", parents=[common], help="reporte completo de un campo")
    p.add_argument("--d", type=_parse_d, required=True)

    p = sub.add_parser("verify", parents=[common], help="exit 0 si todas las comprobaciones pasan")
    p.add_argument("--d", type=_parse_d, required=True)

    p = sub.add_parser("scan", parents=[common], help="verifica todos los d libres de cuadrados del rango")
    p.add_argument("--min", dest="d_min", type=int, required=True)
    p.add_argument("--max", dest="d_max", type=int, required=True)

    p = sub.add_parser("pairing", parents=[common], help="matriz de símbolos de un emparejamiento")
    p.add_argument("--d", type=_parse_d, required=True)
    p.add_argument("--kind", choices=[k.value for k in PairingKind], required=True)

    p = sub.add_parser("fuzz-reciprocity", parents=[common], help="pares aleatorios para la reciprocidad")
    p.add_argument("--d", type=_parse_d, required=True)

    return parser


# ===============================
# SUBCOMANDOS
# ===============================
def _cmd_report(args, cfg: Config) -> int:
    rep = verify_field(args.d, cfg)
    print(to_json(rep) if cfg.output_format == "json" else render([rep], cfg.output_format))
    return _exit_code([rep])


def _cmd_verify(args, cfg: Config) -> int:
    rep = verify_field(args.d, cfg)
    if cfg.output_format == "text":
        for name, verdict in rep.checks.items():
            print(f"{name:<28}{verdict}")
    else:
        print(to_json(rep) if cfg.output_format == "json" else render([rep], cfg.output_format))
    return _exit_code([rep])


def _cmd_scan(args, cfg: Config) -> int:
    result = scan(args.d_min, args.d_max, cfg)
    print(render(result.reports, cfg.output_format))

    agg = result.aggregate
    if cfg.output_format == "text":
        print(f"\n{agg.fields} campos; fallos: {agg.failing or '-'}; sin decidir: {agg.inconclusive or '-'}")

    if agg.stopped_at is not None:
        print(f"barrido detenido en d={agg.stopped_at}", file=sys.stderr)
        print(to_text(result.reports[-1]), file=sys.stderr)
    return _exit_code(result.reports)


def _cmd_pairing(args, cfg: Config) -> int:
    F = make_field(args.d)
    rep = pairing_matrix(F, args.kind, bound=cfg.prime_bound(F.disc))
    payload = rep.to_dict()
    if cfg.output_format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(f"{payload['kind']}  d={F.label}  rango {rep.achieved_rank}/{rep.expected_rank}  {rep.verdict.value}")
        print(f"  Selmer: {', '.join(str(a) for a in rep.selmer_side.basis) if rep.selmer_side else '-'}")
        for P, row in zip(payload["row_ideals"], payload["symbols"]):
            print(f"  {P:<20}{' '.join(f'{x:+d}' for x in row)}")
    return {
        PairingVerdict.PERFECT: EXIT_OK,
        PairingVerdict.RANK_DEFICIT: EXIT_FAIL,
        PairingVerdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[rep.verdict]


def _cmd_fuzz(args, cfg: Config) -> int:
    F = make_field(args.d)
    res = reciprocity_fuzz(F, cfg.fuzz_trials, cfg.fuzz_height, cfg.seed)
    if cfg.output_format == "json":
        print(json.dumps({**res.to_dict(), "d": res.d, "mismatches": res.mismatches}, ensure_ascii=False, indent=2))
    else:
        print(
            f"d={res.d}  pares={res.passed + res.failed}/{res.trials}  fallos={res.failed}  "
            f"descartados={res.skipped}  semilla={res.seed}"
        )
        for a, b in res.mismatches:
            print(f"  α={a}  β={b}")
    return {Verdict.PASS: EXIT_OK, Verdict.FAIL: EXIT_FAIL, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}[res.verdict]


COMMANDS = {
    "report": _cmd_report,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "pairing": _cmd_pairing,
    "fuzz-reciprocity": _cmd_fuzz,
}


# ===============================
# ENTRADA
# ===============================
def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse ya escribió el uso en stderr
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    setup_logging("DEBUG" if args.verbose > 1 else "INFO" if args.verbose else None)

    try:
        cfg = load_config(
            prime_norm_bound=args.bound,
            parallelism=args.jobs,
            seed=args.seed,
            fuzz_trials=args.trials,
            fuzz_height=args.height,
            output_format=args.format,
        )
        return COMMANDS[args.command](args, cfg)
    except (UsageError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
