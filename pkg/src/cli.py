"""
Command-line front end.

    python main.py chambers --input data/running.json
    python main.py whitney gen resonance 4 --engine symmetry
    python main.py charpoly gen threshold 2
    python main.py gen platonic icosahedron --output output/icosahedron.json
    python main.py validate-group --input data/running.json --group data/running_group.json
    python main.py report gen resonance 5 --html output/report.html --figure output/figures/resonance5.png

Results go to stdout; failures print one JSON object to stderr and exit with
2 (unreadable input), 3 (inconsistent input) or 1 (anything else).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple

from src.arrangement import Arrangement, ArrangementError
from src.automorphisms import ValidationError, ValidationMode, validate_subgroup_of_aut
from src.counting import Engine, run_report
from src.exact import FieldMismatchError, ScalarParseError
from src.families import FAMILIES, PLATONIC
from src.permgroup import GroupError, OrbitBudgetExceeded, PermGroup
from src.polynomial import WhitneyVector
from src.report import RunReport, generate_report, summary_frame
from src.settings import DEFAULT_SEED, DEFAULT_WORKERS
from src.symmetry_engine import EngineOptions, OrbitIdentification
from src.utils import (
    InputFormatError,
    arrangement_to_payload,
    configure_logging,
    dump_json,
    load_arrangement,
    load_group,
    load_points,
)
from src.visualization import plot_level_profile


LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3

PARSE_ERRORS = (InputFormatError, ScalarParseError, FileNotFoundError)
DOMAIN_ERRORS = (ArrangementError, GroupError, FieldMismatchError, ValidationError)


def _int_params(family: str, params: Sequence[str], count: Tuple[int, int]) -> List[int]:
    low, high = count
    if not low <= len(params) <= high:
        expected = str(low) if low == high else f"{low} to {high}"
        raise InputFormatError(f"gen {family} takes {expected} integer parameters, got {list(params)}")
    try:
        return [int(value) for value in params]
    except ValueError as exc:
        raise InputFormatError(f"gen {family}: parameters must be integers, got {list(params)}") from exc


def build_family(name: str, params: Sequence[str], extended: bool = False) -> Tuple[Arrangement, PermGroup]:
    """Instantiate a family from command-line words, e.g. ``resonance 4``."""
    if name not in FAMILIES:
        raise InputFormatError(f"Unknown family {name!r}; choose from {sorted(FAMILIES)}")
    if name == "platonic":
        if len(params) != 1 or params[0] not in PLATONIC:
            raise InputFormatError(f"gen platonic takes one of {list(PLATONIC)}")
        return FAMILIES[name](params[0])
    if name == "separability":
        if len(params) != 1:
            raise InputFormatError("gen separability takes one points file")
        points, field = load_points(params[0])
        return FAMILIES[name](points, field=field)
    if name == "discriminantal":
        values = _int_params(name, params, (2, 3))
        return FAMILIES[name](*values)
    (d,) = _int_params(name, params, (1, 1))
    if name == "resonance":
        return FAMILIES[name](d, extended=extended)
    return FAMILIES[name](d)


def resolve_source(args: argparse.Namespace) -> Tuple[Arrangement, Optional[PermGroup]]:
    source = list(getattr(args, "source", None) or [])
    if source:
        if source[0] != "gen" or len(source) < 2:
            raise InputFormatError(f"Expected 'gen <family> <params>', got {' '.join(source)}")
        arrangement, group = build_family(source[1], source[2:], extended=args.extended)
    elif args.input or args.matrix:
        arrangement, group = load_arrangement(args.input or args.matrix)
    else:
        raise InputFormatError("No arrangement given; use --input FILE, --matrix FILE or gen <family>")
    if args.group:
        group = load_group(args.group, arrangement.n)
    if group is not None and group.degree != arrangement.n:
        raise GroupError(
            f"Group acts on {group.degree} points but the arrangement has {arrangement.n} hyperplanes"
        )
    return arrangement, group


def _validate(args: argparse.Namespace, arrangement: Arrangement, group: Optional[PermGroup]) -> None:
    if args.validate == "none" or group is None:
        return
    if not validate_subgroup_of_aut(group, arrangement, ValidationMode(args.validate), seed=args.seed):
        raise GroupError("The supplied group does not act by automorphisms of the arrangement")


def engine_options(args: argparse.Namespace, identification: Optional[str] = None) -> EngineOptions:
    return EngineOptions(
        orbit_identification=OrbitIdentification(identification or args.orbit_id),
        seed=args.seed,
        workers=args.threads,
        skip_levels=not args.no_skip_levels,
        central_shortcut=not args.no_central_shortcut,
        progress=args.progress,
    )


def _compute(args: argparse.Namespace) -> WhitneyVector:
    arrangement, group = resolve_source(args)
    _validate(args, arrangement, group)
    report = run_report(arrangement, group, engine_options(args), engine=args.engine)
    return WhitneyVector(report.whitney)


def _emit(args: argparse.Namespace, plain: str, payload: Any) -> None:
    print(plain if args.format == "plain" else json.dumps(payload))


def cmd_whitney(args: argparse.Namespace) -> int:
    whitney = _compute(args)
    _emit(
        args,
        str(whitney),
        {"whitney": whitney.to_list(), "chambers": whitney.chambers(), "charpoly": str(whitney.charpoly())},
    )
    return EXIT_OK


def cmd_charpoly(args: argparse.Namespace) -> int:
    charpoly = _compute(args).charpoly()
    _emit(args, str(charpoly), {"charpoly": str(charpoly), "coefficients": list(charpoly.coefficients)})
    return EXIT_OK


def cmd_chambers(args: argparse.Namespace) -> int:
    chambers = _compute(args).chambers()
    _emit(args, str(chambers), {"chambers": chambers})
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    arrangement, group = build_family(args.family, args.params, extended=args.extended)
    text = dump_json(arrangement_to_payload(arrangement, group), args.output)
    if args.output is None:
        print(text)
    return EXIT_OK


def cmd_validate_group(args: argparse.Namespace) -> int:
    arrangement, group = resolve_source(args)
    if group is None:
        raise InputFormatError("No group given; use --group FILE or a family with a built-in group")
    mode = None if args.validate == "none" else ValidationMode(args.validate)
    valid = validate_subgroup_of_aut(group, arrangement, mode, seed=args.seed, progress=args.progress)
    _emit(args, "true" if valid else "false", {"valid": valid, "order": group.order()})
    return EXIT_OK if valid else EXIT_DOMAIN


def cmd_report(args: argparse.Namespace) -> int:
    arrangement, group = resolve_source(args)
    _validate(args, arrangement, group)
    reports: List[RunReport] = []
    for identification in args.compare:
        try:
            reports.append(
                run_report(arrangement, group, engine_options(args, identification), label=identification)
            )
        except OrbitBudgetExceeded as exc:
            LOGGER.warning("Skipping %s orbit identification: %s", identification, exc)
    if args.figure:
        plot_level_profile(reports, args.figure)
    if args.html:
        generate_report(reports, args.html, figure_path=args.figure)
    if args.format == "plain":
        print(summary_frame(reports).to_string(index=False))
    else:
        print(json.dumps([report.to_dict() for report in reports]))
    return EXIT_OK


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("source", nargs="*", help="Optional 'gen <family> <params>' instead of a file.")
    parser.add_argument("--input", type=Path, help="Arrangement JSON file.")
    parser.add_argument("--matrix", type=Path, help="JSON file with a d x n coefficient matrix and constants.")
    parser.add_argument("--group", type=Path, help="JSON list of generators in one-line notation.")
    parser.add_argument("--extended", action="store_true", help="Use the full (d+1)! group for resonance.")


def _add_engine_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--engine", choices=[e.value for e in Engine], default=Engine.SYMMETRY.value)
    parser.add_argument(
        "--orbit-id",
        choices=[o.value for o in OrbitIdentification],
        default=OrbitIdentification.PSEUDO.value,
        help="Orbit identification used by the symmetry engine.",
    )
    parser.add_argument("--threads", type=int, default=DEFAULT_WORKERS, help="Worker processes.")
    parser.add_argument("--no-central-shortcut", action="store_true")
    parser.add_argument("--no-skip-levels", action="store_true", help="Advance every node one level at a time.")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--format", choices=["plain", "json"], default="plain")
    parser.add_argument(
        "--validate",
        choices=["none"] + [m.value for m in ValidationMode],
        default="none",
        help="Check the group against the arrangement before computing.",
    )
    parser.add_argument("--progress", action="store_true", help="Show progress bars.")
    parser.add_argument("--log-level", default="WARNING", help="Python logging level (default: WARNING).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrangements",
        description="Exact Whitney numbers, characteristic polynomials and chamber counts of hyperplane arrangements.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    for name, handler, help_text in (
        ("whitney", cmd_whitney, "Print the Whitney numbers b_0 ... b_d."),
        ("charpoly", cmd_charpoly, "Print the characteristic polynomial."),
        ("chambers", cmd_chambers, "Print the number of chambers."),
    ):
        sub = commands.add_parser(name, help=help_text)
        _add_source_arguments(sub)
        _add_engine_arguments(sub)
        _add_common_arguments(sub)
        sub.set_defaults(handler=handler)

    gen = commands.add_parser("gen", help="Write a family member as an arrangement JSON file.")
    gen.add_argument("family", choices=sorted(FAMILIES))
    gen.add_argument("params", nargs="*")
    gen.add_argument("--extended", action="store_true")
    gen.add_argument("--output", type=Path)
    gen.add_argument("--log-level", default="WARNING")
    gen.set_defaults(handler=cmd_gen)

    validate = commands.add_parser("validate-group", help="Check that a group acts by automorphisms.")
    _add_source_arguments(validate)
    _add_common_arguments(validate)
    validate.set_defaults(handler=cmd_validate_group)

    report = commands.add_parser("report", help="Compare orbit identifications level by level.")
    _add_source_arguments(report)
    _add_engine_arguments(report)
    _add_common_arguments(report)
    report.add_argument(
        "--compare",
        nargs="+",
        choices=[o.value for o in OrbitIdentification],
        default=[o.value for o in OrbitIdentification],
    )
    report.add_argument("--html", type=Path)
    report.add_argument("--figure", type=Path)
    report.set_defaults(handler=cmd_report)
    return parser


def _error_payload(exc: BaseException) -> str:
    return json.dumps(
        {
            "error": type(exc).__name__,
            "message": str(exc),
            "line": getattr(exc, "line", None),
            "column": getattr(exc, "column", None),
        }
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except PARSE_ERRORS as exc:
        code = EXIT_PARSE
        error = exc
    except DOMAIN_ERRORS as exc:
        code = EXIT_DOMAIN
        error = exc
    except Exception as exc:
        LOGGER.debug("Unhandled error", exc_info=True)
        code = EXIT_FAILURE
        error = exc
    print(_error_payload(error), file=sys.stderr)
    return code


__all__ = ["build_family", "build_parser", "main"]
