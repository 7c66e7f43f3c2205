"""Command-line front-end: one subcommand per experiment kind.

Every subcommand accepts ``--manifest`` with a JSON manifest; flags given on
the command line override the matching manifest keys. The payload goes to
stdout, logs go to stderr.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from src.cli.io import load_manifest, manifest_from_data, render
from src.cli.models import Command, OutputFormat, RunRecord
from src.cli.runner import run
from src.config import validate_startup_config
from src.constants import EXIT_CODE_ERROR, EXIT_CODE_GATE_FAILURE, EXIT_CODE_PASS
from src.entropy_mixing import MixingRoute
from src.exceptions import create_exception_handler
from src.logging import setup_logging
from src.normality import EquivalenceForm
from src.types import Verdict

logger = logging.getLogger(__name__)

_GATE_FAILURES = frozenset({Verdict.FAIL, Verdict.INVALID})

_HELP = {
    Command.EXPAND: "Certified digit expansions of points",
    Command.CYLINDER: "Cylinder endpoints, or all cylinders of a rank",
    Command.MEASURE: "Invariant measure of an interval and its invariance defect",
    Command.DENSITY: "Invariant density table or Gauss fixed-point check",
    Command.NORMALITY: "Sliding pattern frequencies against cylinder measures",
    Command.JOINT: "Joint pattern frequencies or joint ergodic averages",
    Command.EQUIDIST: "Joint equidistribution on a box grid",
    Command.ENTROPY: "Shannon-McMillan-Breiman entropy estimates",
    Command.LEVY: "Growth rate of continued fraction denominators",
    Command.PROPE: "Mass of cylinders with typical measure",
    Command.MIXING: "Correlation decay of a cylinder against an interval",
    Command.EQUIVALENCE: "Cross-check equivalent characterizations of normality",
}


def _int_list(text: str) -> list[int]:
    """``"3"``, ``"0,2,5"`` or a range ``"0-20"``."""
    values: list[int] = []
    for part in text.split(","):
        if "-" in part.strip()[1:]:
            start, end = part.split("-", 1)
            values.extend(range(int(start), int(end) + 1))
        elif part.strip():
            values.append(int(part))
    return values


def _seeds(text: str) -> int | list[int]:
    """A bare count n means seeds 0..n-1; a comma list names the seeds."""
    if "," in text:
        return _int_list(text)
    return int(text)


def _symbols(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def _target(text: str) -> list[str]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2:
        error_message = f"target must be 'lower,upper', got {text!r}"
        raise argparse.ArgumentTypeError(error_message)
    return parts


def _precision(text: str) -> int | str:
    return text if text == "auto" else int(text)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", type=Path, help="JSON manifest file")
    common.add_argument("--map", dest="maps", action="append", help="Map, e.g. timesb:2")
    common.add_argument("--point", dest="points", action="append", help="Explicit point")
    common.add_argument("--seeds", type=_seeds, help="Seed count or comma-separated seeds")
    common.add_argument("-N", dest="N", type=int, help="Orbit length or window count")
    common.add_argument("--n-max", type=int, help="Deepest rank of a series")
    common.add_argument("--format", dest="output", choices=[f.value for f in OutputFormat])
    common.add_argument("--precision-bits", dest="precision", type=_precision, help="n or auto")
    common.add_argument("--workers", type=int, help="Worker processes for seed fan-out")
    common.add_argument("--gate-sigma", type=float)
    common.add_argument("--min-pass-rate", type=float)
    common.add_argument("--relative-tolerance", type=float)
    return common


def _add_command_arguments(parser: argparse.ArgumentParser, command: Command) -> None:
    if command in {Command.NORMALITY, Command.EQUIVALENCE}:
        parser.add_argument("--max-pattern-length", type=int)
        parser.add_argument("--symbol-cap", type=int)
    if command == Command.JOINT:
        parser.add_argument(
            "--pattern", dest="patterns", type=_symbols, action="append", help="e.g. 0,1"
        )
    if command in {Command.JOINT, Command.EQUIDIST}:
        parser.add_argument("--independent-points", action="store_true", default=None)
    if command in {Command.EQUIDIST, Command.EQUIVALENCE}:
        parser.add_argument("--bins", type=int)
    if command == Command.EQUIVALENCE:
        parser.add_argument(
            "--form", dest="forms", action="append", choices=[f.value for f in EquivalenceForm]
        )
    if command in {Command.CYLINDER, Command.MIXING}:
        parser.add_argument("--digits", dest="cylinder", type=_symbols, help="e.g. 1,1")
    if command == Command.CYLINDER:
        parser.add_argument("--rank", type=int)
    if command in {Command.MEASURE, Command.MIXING}:
        parser.add_argument("--target", type=_target, help="lower,upper")
    if command == Command.MIXING:
        parser.add_argument("--lags", type=_int_list, help="e.g. 0-20")
        parser.add_argument("--route", choices=[route.value for route in MixingRoute])
        parser.add_argument("--tail-tolerance", type=float)
    if command == Command.PROPE:
        parser.add_argument("--epsilon", type=float)
        parser.add_argument("--ranks", type=_int_list, help="e.g. 1-15")
        parser.add_argument("--samples", type=int)
    if command in {Command.MEASURE, Command.DENSITY, Command.CYLINDER, Command.MIXING}:
        parser.add_argument("--grid-size", type=int)


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per experiment kind."""
    parser = argparse.ArgumentParser(
        prog="joint-normality",
        description="Certified experiments on normality and joint ergodicity of interval maps",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    for command in Command:
        subparser = subparsers.add_parser(command.value, parents=[common], help=_HELP[command])
        _add_command_arguments(subparser, command)
    return parser


_MANIFEST_KEYS = (
    "maps",
    "points",
    "seeds",
    "N",
    "n_max",
    "output",
    "precision",
    "patterns",
    "max_pattern_length",
    "symbol_cap",
    "independent_points",
    "bins",
    "forms",
    "cylinder",
    "rank",
    "target",
    "lags",
    "route",
    "tail_tolerance",
    "epsilon",
    "ranks",
    "samples",
    "grid_size",
)
_GATE_KEYS = ("gate_sigma", "min_pass_rate", "relative_tolerance")


def manifest_data(args: argparse.Namespace) -> dict[str, Any]:
    """Manifest file contents with command-line overrides applied."""
    data = load_manifest(args.manifest) if args.manifest else {}
    data["command"] = args.command
    for key in _MANIFEST_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    gates = dict(data.get("gates") or {})
    for key in _GATE_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            gates[key] = value
    if gates:
        data["gates"] = gates
    return data


def exit_code_for(record: RunRecord) -> int:
    """0 on pass, 2 when a gate fails, 1 when every start raised."""
    if record.results and record.aggregate.errors == len(record.results):
        return EXIT_CODE_ERROR
    if record.aggregate.verdict in _GATE_FAILURES:
        return EXIT_CODE_GATE_FAILURE
    return EXIT_CODE_PASS


def execute(args: argparse.Namespace) -> int:
    """Validate the manifest, run it and write the payload to stdout."""
    manifest = manifest_from_data(manifest_data(args))
    record = run(manifest, workers=args.workers)
    payload = render(record, manifest.output)
    sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")
    code = exit_code_for(record)
    logger.info("Exit code %d", code)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``joint-normality`` script."""
    args = build_parser().parse_args(argv)
    setup_logging()
    validate_startup_config()
    return create_exception_handler(execute)(args)


if __name__ == "__main__":
    sys.exit(main())
