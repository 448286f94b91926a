"""Command-line front end for reproducible random-access-code experiments.

Exit codes: 0 success, 1 configuration error, 2 domain precondition violated
(invalid state, degenerate correlations, out-of-range parameter), 3 I/O error,
4 reference reproduction found a failing claim.

Commands that write a data file also render a matplotlib figure next to it
(same stem, .png) unless --no-figures is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import figures
from .classical_rac import (
    concatenated_classical_search,
    evaluate_strategy,
    exhaustive_search,
    pruned_search,
)
from .errors import RacError
from .optimize import (
    CSV_HEADER,
    ComparisonRow,
    StateFamilyConstraint,
    best_separable_bell_diagonal,
    crossover_analysis,
    discord_efficiency_table,
    separable_beats_werner,
)
from .qstate import (
    BellDiagonalSpec,
    geometric_discord_bell_diagonal,
    is_separable,
    state_from_json_dict,
    werner,
)
from .quantum_rac import (
    canonical_protocol,
    concatenated_pmin_formula,
    concatenated_pmin_recursive,
    evaluate,
    prepare_and_measure_pmin,
    protocol_from_json_dict,
)
from .reproduce import reproduce_paper

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_MISMATCH = 4

WORKERS_ENV = "RAC_LAB_THREADS"


class ConfigError(Exception):
    """Invalid command line or input-file structure."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); route to the config path
        raise ConfigError(message)


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--output", type=Path, help="write results to this file")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--seed", type=int, default=42, help="seed for sampled searches")
    common.add_argument("--workers", type=int, default=None,
                        help=f"parallel workers (default: ${WORKERS_ENV} or 1)")
    common.add_argument("--tolerance", type=float, default=None,
                        help="numeric tolerance where a command uses one")
    common.add_argument("--no-figures", action="store_true",
                        help="do not render figures next to --output")

    parser = _Parser(prog="rac-lab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classical-search", parents=[common],
                       help="search classical strategies assisted by two shared bits")
    p.add_argument("--n", type=int, required=True, choices=(2, 3, 4),
                   help="input length: 2 exhaustive, 3 pruned, 4 sampled concatenation")
    p.add_argument("--constraint", choices=("none", "bob-mixed"), default="none")
    p.add_argument("--samples", type=int, default=100000,
                   help="samples for the n=4 concatenated search")
    p.add_argument("--spot-checks", type=int, default=1000,
                   help="LP spot checks for the n=3 pruned search")

    p = sub.add_parser("quantum-eval", parents=[common],
                       help="evaluate a quantum protocol on a shared two-qubit state")
    p.add_argument("--canonical", type=int, choices=(2, 3),
                   help="use the canonical n->1 protocol built from the state")
    p.add_argument("--protocol", type=Path, help="protocol JSON file")
    p.add_argument("--werner", type=float, help="Werner state with this parameter")
    p.add_argument("--bell-diagonal", type=str, metavar="E1,E2,E3",
                   help="Bell-diagonal state components")
    p.add_argument("--state", type=Path, help="state JSON file")

    p = sub.add_parser("optimize-separable", parents=[common],
                       help="maximise the canonical code efficiency over separable states")
    p.add_argument("--n", type=int, required=True, choices=(2, 3))
    p.add_argument("--grid-step", type=float, default=0.01)
    p.add_argument("--refine-tol", type=float, default=None)
    p.add_argument("--allow-entangled", action="store_true",
                   help="drop the separability requirement")

    p = sub.add_parser("crossover", parents=[common],
                       help="compare the separable optimum with Werner-assisted codes")
    p.add_argument("--q", type=str, help="comma-separated Werner parameters")

    p = sub.add_parser("discord-table", parents=[common],
                       help="discord versus efficiency across state families")
    p.add_argument("--werner-q", type=str,
                   help="comma-separated Werner parameters inside (0.3536, 0.5)")

    p = sub.add_parser("concatenate", parents=[common],
                       help="efficiency of m-level concatenated 2->1 codes")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--discord", type=float, help="discord of the assisting pairs")
    group.add_argument("--base-p", type=float, help="per-stage success probability")
    p.add_argument("--levels", type=int, default=8, help="maximum concatenation depth")

    p = sub.add_parser("prepare-measure", parents=[common],
                       help="noisy single-qubit 2->1 code over a noise grid")
    p.add_argument("--q", type=str, help="comma-separated noise parameters")
    p.add_argument("--q-step", type=float, default=0.01, help="grid step when --q is absent")

    p = sub.add_parser("reproduce-paper", parents=[common],
                       help="recompute every reference value and report pass/fail")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--spot-checks", type=int, default=1000)
    p.add_argument("--random-cases", type=int, default=1000)

    return parser


# --- small helpers -----------------------------------------------------------


def _resolve_workers(args) -> int:
    workers = args.workers
    if workers is None:
        raw = os.environ.get(WORKERS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError as exc:
            raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from exc
    if workers < 1:
        raise ConfigError(f"--workers must be at least 1, got {workers}")
    return workers


def _check_tolerance(args) -> float | None:
    if args.tolerance is not None and args.tolerance <= 0:
        raise ConfigError(f"--tolerance must be positive, got {args.tolerance}")
    return args.tolerance


def _parse_float_list(text: str, what: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"could not parse {what}: {text!r}") from exc
    if not values:
        raise ConfigError(f"{what} must contain at least one number")
    return values


def _load_json_file(path: Path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_text(header, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str) -> None:
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _figure_path(args) -> Path | None:
    if args.output is None or args.no_figures:
        return None
    return args.output.with_suffix(".png")


def _evaluation_csv(result) -> str:
    rows = list(result.rows())
    rows.append(("p_min", "", result.p_min))
    return _csv_text(("x", "i", "probability"), rows)


# --- command handlers --------------------------------------------------------


def _cmd_classical_search(args) -> int:
    workers = _resolve_workers(args)
    if args.n == 2:
        report = exhaustive_search(2, args.constraint, workers=workers)
    elif args.n == 3:
        report = pruned_search(3, spot_checks=args.spot_checks, seed=args.seed)
    else:
        if args.samples < 1:
            raise ConfigError("--samples must be at least 1")
        report = concatenated_classical_search(args.samples, args.seed)

    fmt = args.format or ("human" if args.output is None else "json")
    if fmt == "json":
        text = _json_text(report.to_json_dict())
    elif fmt == "csv":
        if args.n == 4:
            from .classical_rac import evaluate_concatenated

            result = evaluate_concatenated(report.best_strategy, report.best_distribution)
        else:
            result = evaluate_strategy(report.best_strategy, report.best_distribution)
        text = _evaluation_csv(result)
    else:
        text = report.human_table() + "\n"
    _emit(args, text)

    figure = _figure_path(args)
    if figure is not None:
        if args.n == 4:
            from .classical_rac import evaluate_concatenated

            result = evaluate_concatenated(report.best_strategy, report.best_distribution)
        else:
            result = evaluate_strategy(report.best_strategy, report.best_distribution)
        figures.save_evaluation_figure(
            result, figure, title=f"best classical {args.n}->1 strategy found"
        )
    return EXIT_OK


def _load_state(args):
    sources = [s for s in (args.werner, args.bell_diagonal, args.state) if s is not None]
    if len(sources) != 1:
        raise ConfigError("provide exactly one of --werner, --bell-diagonal, --state")
    if args.werner is not None:
        return werner(args.werner).to_state()
    if args.bell_diagonal is not None:
        components = _parse_float_list(args.bell_diagonal, "--bell-diagonal")
        if len(components) != 3:
            raise ConfigError("--bell-diagonal needs exactly three components")
        return BellDiagonalSpec(*components).validate().to_state()
    obj = _load_json_file(args.state)
    try:
        return state_from_json_dict(obj)
    except ValueError as exc:
        raise ConfigError(f"invalid state file {args.state}: {exc}") from exc


def _cmd_quantum_eval(args) -> int:
    if (args.canonical is None) == (args.protocol is None):
        raise ConfigError("provide exactly one of --canonical or --protocol")
    state = _load_state(args)
    if args.canonical is not None:
        protocol = canonical_protocol(args.canonical, state)
    else:
        obj = _load_json_file(args.protocol)
        try:
            protocol = protocol_from_json_dict(obj)
        except ValueError as exc:
            raise ConfigError(f"invalid protocol file {args.protocol}: {exc}") from exc
    result = evaluate(protocol, state)

    fmt = args.format or "csv"
    if fmt == "json":
        text = _json_text(result.to_json_dict())
    else:
        text = _evaluation_csv(result)
    _emit(args, text)

    figure = _figure_path(args)
    if figure is not None:
        figures.save_evaluation_figure(result, figure, title=f"{protocol.n}->1 quantum code")
    return EXIT_OK


def _cmd_optimize_separable(args) -> int:
    refine_tol = args.refine_tol if args.refine_tol is not None else (_check_tolerance(args) or 1e-6)
    if args.grid_step <= 0 or refine_tol <= 0:
        raise ConfigError("--grid-step and --refine-tol must be positive")
    constraint = StateFamilyConstraint(
        separability="ignored" if args.allow_entangled else "required"
    )
    spec, p_min = best_separable_bell_diagonal(
        args.n, constraint, grid_step=args.grid_step, refine_tol=refine_tol
    )
    row = ComparisonRow(
        label=f"optimum-{args.n}to1",
        spec=spec,
        discord=geometric_discord_bell_diagonal(spec),
        p_min=p_min,
        separable=is_separable(spec.to_state()),
    )
    fmt = args.format or "csv"
    if fmt == "json":
        summary = row.to_json_dict()
        summary.update({"n": args.n, "grid_step": args.grid_step, "refine_tol": refine_tol})
        text = _json_text(summary)
    else:
        text = _csv_text(CSV_HEADER, [row.csv_row()])
    _emit(args, text)

    figure = _figure_path(args)
    if figure is not None:
        figures.save_optimize_figure(args.n, spec, p_min, figure)
    return EXIT_OK


def _cmd_crossover(args) -> int:
    if args.q is not None:
        q_values = _parse_float_list(args.q, "--q")
    else:
        q_values = [round(0.05 * k, 2) for k in range(21)]
    rows = crossover_analysis(q_values)
    flags = [{"q": q, "separable_wins": separable_beats_werner(q)} for q in q_values]

    fmt = args.format or "csv"
    if fmt == "json":
        text = _json_text({"rows": [r.to_json_dict() for r in rows], "flags": flags})
    else:
        text = _csv_text(CSV_HEADER, [r.csv_row() for r in rows])
    _emit(args, text)

    figure = _figure_path(args)
    if figure is not None:
        figures.save_crossover_figure(rows, figure)
    return EXIT_OK


def _cmd_discord_table(args) -> int:
    if args.werner_q is not None:
        rows = discord_efficiency_table(_parse_float_list(args.werner_q, "--werner-q"))
    else:
        rows = discord_efficiency_table()

    fmt = args.format or "csv"
    if fmt == "json":
        text = _json_text({"rows": [r.to_json_dict() for r in rows]})
    else:
        text = _csv_text(CSV_HEADER, [r.csv_row() for r in rows])
    _emit(args, text)

    figure = _figure_path(args)
    if figure is not None:
        figures.save_discord_figure(rows, figure)
    return EXIT_OK


def _cmd_concatenate(args) -> int:
    if args.levels < 1:
        raise ConfigError("--levels must be at least 1")
    if args.discord is not None:
        discord = args.discord
        base_p = 0.5 * (1.0 + discord / math.sqrt(2.0))
    else:
        base_p = args.base_p
        discord = (2.0 * base_p - 1.0) * math.sqrt(2.0)
    entries = [
        (m, concatenated_pmin_formula(discord, m), concatenated_pmin_recursive(base_p, m))
        for m in range(1, args.levels + 1)
    ]

    fmt = args.format or "csv"
    if fmt == "json":
        text = _json_text(
            {
                "discord": discord,
                "base_p": base_p,
                "levels": [
                    {"m": m, "closed_form": c, "recursion": r} for m, c, r in entries
                ],
            }
        )
    else:
        text = _csv_text(("levels", "closed_form", "recursion"), entries)
    _emit(args, text)

    figure = _figure_path(args)
    if figure is not None:
        figures.save_concatenation_figure(entries, figure)
    return EXIT_OK


def _cmd_prepare_measure(args) -> int:
    if args.q is not None:
        qs = _parse_float_list(args.q, "--q")
    else:
        if args.q_step <= 0:
            raise ConfigError("--q-step must be positive")
        qs = list(np.arange(0.0, 1.0 + args.q_step / 2.0, args.q_step))
    pairs = [(float(q), prepare_and_measure_pmin(float(q))) for q in qs]

    fmt = args.format or "csv"
    if fmt == "json":
        text = _json_text({"rows": [{"q": q, "p_min": p} for q, p in pairs]})
    else:
        text = _csv_text(("q", "p_min"), pairs)
    _emit(args, text)

    figure = _figure_path(args)
    if figure is not None:
        figures.save_prepare_measure_figure(pairs, figure)
    return EXIT_OK


def _cmd_reproduce_paper(args) -> int:
    workers = _resolve_workers(args)
    if args.samples < 1 or args.spot_checks < 1 or args.random_cases < 1:
        raise ConfigError("--samples, --spot-checks and --random-cases must be at least 1")
    report = reproduce_paper(
        samples=args.samples,
        seed=args.seed,
        spot_checks=args.spot_checks,
        random_cases=args.random_cases,
        workers=workers,
    )

    fmt = args.format or ("human" if args.output is None else "json")
    if fmt == "json":
        text = _json_text(report.to_json_dict())
    elif fmt == "csv":
        header = ("criterion", "claim_id", "reference", "computed", "tolerance",
                  "comparison", "status")
        text = _csv_text(header, report.csv_rows())
    else:
        text = report.human_table() + "\n"
    _emit(args, text)

    figure = _figure_path(args)
    if figure is not None:
        figures.save_reproduction_figure(report, figure)
    return EXIT_OK if report.overall_pass else EXIT_MISMATCH


_HANDLERS = {
    "classical-search": _cmd_classical_search,
    "quantum-eval": _cmd_quantum_eval,
    "optimize-separable": _cmd_optimize_separable,
    "crossover": _cmd_crossover,
    "discord-table": _cmd_discord_table,
    "concatenate": _cmd_concatenate,
    "prepare-measure": _cmd_prepare_measure,
    "reproduce-paper": _cmd_reproduce_paper,
}


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        _check_tolerance(args)
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, RacError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
