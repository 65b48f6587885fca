import argparse
from pathlib import Path
from typing import List, Optional

from app.models.run_config import Command, OutputFormat, RunConfig


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, type=Path, help="JSON spec document")
    common.add_argument("--max-degree", type=int, help="highest resolution degree N")
    common.add_argument("--field", help="field override: Q or Fp:p")
    common.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value, help="report format"
    )
    common.add_argument("--rewrite-step-cap", type=int, help="rewrite steps allowed per normal form")
    common.add_argument("--basis-cap", type=int, help="largest irreducible basis enumerated")
    common.add_argument("--solver-size-cap", type=int, help="largest number of unknowns per linear solve")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="quiverhh",
        description="Exact Hochschild cohomology, homotopy liftings and deformations of quiver algebras",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    commands.add_parser(Command.VALIDATE.value, parents=[common], help="parse and validate a spec document")
    commands.add_parser(Command.DIAMOND.value, parents=[common], help="check the overlap ambiguities")
    commands.add_parser(Command.BASIS.value, parents=[common], help="list the irreducible paths")
    commands.add_parser(Command.RESOLUTION.value, parents=[common], help="build and verify the resolution")

    hh = commands.add_parser(Command.HH.value, parents=[common], help="Hochschild cohomology in one degree")
    hh.add_argument("--degree", type=int, required=True, help="cohomological degree n")
    hh.add_argument("--shift", type=int, help="internal grading shift")

    lift = commands.add_parser(Command.LIFT.value, parents=[common], help="homotopy lifting of a cocycle")
    lift.add_argument("--cocycle", type=Path, required=True, help="cochain document")
    lift.add_argument("--recurrence", action="store_true", help="also run the single-scalar recurrence")

    bracket = commands.add_parser(Command.BRACKET.value, parents=[common], help="Gerstenhaber bracket")
    bracket.add_argument("--left", type=Path, required=True, help="left cochain document")
    bracket.add_argument("--right", type=Path, required=True, help="right cochain document")

    mc = commands.add_parser(Command.MC_CHECK.value, parents=[common], help="Maurer-Cartan check of a 2-cocycle")
    mc.add_argument("--cocycle", type=Path, required=True, help="cochain document")

    deform = commands.add_parser(Command.DEFORM.value, parents=[common], help="first-order deformations")
    deform.add_argument("--crosscheck", action="store_true", help="compare with homotopy-lifting MC checks")
    return parser


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    """argparse namespace to RunConfig; unset options fall back to settings."""
    namespace = build_parser().parse_args(argv)
    values = {key: value for key, value in vars(namespace).items() if value is not None}
    return RunConfig(**values)
