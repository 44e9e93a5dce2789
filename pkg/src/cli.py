"""
Command-line front end.

Configuration resolves as built-in defaults < schemas/run_config.yaml <
YAML file (--config, else PFHKIT_CONFIG) < flags. Rows and reports go to
stdout, logs to stderr. Exit codes: 0 success, 1 domain error, 2 orbit-set
parse error, 3 failed verification.
"""
import argparse
import json
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import ValidationError

from src.runner.emitter import emit_report, emit_rows
from src.runner.runner import CommandRunner, load_yaml
from src.utils.errors import PFHKitError
from src.utils.logging import get_logger, setup_from_env, setup_logger
from src.validator.data_model import RunConfig

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFICATION = 3

DEFAULT_CONFIG = Path(__file__).resolve().parent.parent / "schemas" / "run_config.yaml"

# argparse dest -> RunConfig key (alias where the model has one)
CONFIG_FLAGS = {
    "degree": "degree",
    "genus": "genus",
    "fiber_area": "fiber_area",
    "half_width": "lambda",
    "morse_pos": "morse_positive",
    "morse_neg": "morse_negative",
    "morse_saddle": "morse_saddle",
    "format": "format",
    "cap": "cap",
    "log_level": "log_level",
}


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="YAML configuration file")
    parser.add_argument("--degree", "--degree-bound", dest="degree", type=int, help="Degree bound Q")
    parser.add_argument("--genus", type=int, help="Fibre genus g(F)")
    parser.add_argument("--fiber-area", type=float)
    parser.add_argument("--lambda", dest="half_width", type=float, help="Half-width of the twist annulus")
    parser.add_argument("--morse-pos", type=int, help="Interior critical points with positive Hessian")
    parser.add_argument("--morse-neg", type=int, help="Interior critical points with negative Hessian")
    parser.add_argument("--morse-saddle", type=int, help="Interior saddle points")
    parser.add_argument("--format", choices=["json", "csv", "table"])
    parser.add_argument("--cap", type=int, help="Largest number of generators to enumerate")
    parser.add_argument("--log-level")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfhkit", description="PFH index calculus on Dehn-twist mapping tori")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _add_config_flags(p)
        return p

    command("generators", "Enumerate ECH generators of degree Q")

    p = command("index", "ECH index of an orbit set, or of every generator of degree Q")
    p.add_argument("--set", dest="orbit_set")
    p.add_argument("--fiber-mult", type=int)

    p = command("qtau", "Relative self-intersection terms")
    p.add_argument("--set", dest="orbit_set")
    p.add_argument("--max-q", type=int)
    p.add_argument("--verify-oracle", action="store_true")

    p = command("energy", "Energy of an orbit set plus fibre classes")
    p.add_argument("--set", dest="orbit_set")
    p.add_argument("--fiber-mult", type=int)

    p = command("verify-orbit", "Check a slope orbit against the model map")
    p.add_argument("--slope", required=True, help="p/q with 0 < p/q < 1")
    p.add_argument("--y0", type=float, default=0.0)
    p.add_argument("--samples", type=int)
    p.add_argument("--tol", type=float)

    p = command("verify-pullback", "Check the 1-form pullback at random points")
    p.add_argument("--samples", type=int)
    p.add_argument("--step", type=float)
    p.add_argument("--direction", choices=["random", "vertical", "radial"], default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)

    command("homology", "Homology groups of the mapping torus and the cobordism")

    p = command("cobordism", "Cobordism map on the generators of degree Q")
    p.add_argument("--audit", action="store_true", help="Run the low-degree index audit instead")
    p.add_argument("--max-fiber-mult", type=int, default=3)

    p = command("selfcheck", "Run the invariant suite")
    p.add_argument("--ranges", type=Path, help="YAML file of sweep ranges")
    p.add_argument("--small", action="store_true", help="Use the reduced sweep ranges")
    return parser


def _canonical_keys(values: Dict) -> Dict:
    """Rename field names to their file aliases so file and flag keys merge."""
    out = dict(values)
    for name, field in RunConfig.model_fields.items():
        if field.alias and field.alias != name and name in out:
            out[field.alias] = out.pop(name)
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values: Dict = {}
    if DEFAULT_CONFIG.is_file():
        values.update(_canonical_keys(load_yaml(DEFAULT_CONFIG)))
    config_path = args.config or (Path(os.environ["PFHKIT_CONFIG"]) if os.environ.get("PFHKIT_CONFIG") else None)
    if config_path is not None:
        values.update(_canonical_keys(load_yaml(config_path)))
    for dest, key in CONFIG_FLAGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            values[key] = value
    return RunConfig(**values)


def _dispatch(args: argparse.Namespace, config: RunConfig) -> int:
    runner = CommandRunner(config)
    fmt = config.output_format
    if args.command == "generators":
        emit_rows(runner.generators(), fmt)
    elif args.command == "index":
        emit_rows(runner.index(args.orbit_set, args.fiber_mult), fmt)
    elif args.command == "qtau":
        rows = runner.qtau(args.orbit_set, args.max_q, args.verify_oracle)
        emit_rows(rows, fmt)
        if args.verify_oracle and not all(row["agree"] for row in rows):
            return EXIT_VERIFICATION
    elif args.command == "energy":
        emit_rows(runner.energy(args.orbit_set, args.fiber_mult), fmt)
    elif args.command == "verify-orbit":
        report = runner.verify_orbit(args.slope, args.y0, args.samples, args.tol)
        emit_report(report)
        return EXIT_OK if report.passed else EXIT_VERIFICATION
    elif args.command == "verify-pullback":
        report = runner.verify_pullback(args.samples, args.step, args.direction, args.seed, args.tol)
        emit_report(report)
        return EXIT_OK if report.passed else EXIT_VERIFICATION
    elif args.command == "homology":
        sys.stdout.write(json.dumps(runner.homology(), indent=2) + "\n")
    elif args.command == "cobordism":
        if args.audit:
            audit = runner.audit(args.max_fiber_mult)
            emit_report(audit)
            return EXIT_OK if audit.clean else EXIT_VERIFICATION
        emit_rows(runner.cobordism(), fmt)
    elif args.command == "selfcheck":
        suite = runner.selfcheck(args.ranges, args.small)
        emit_report(suite)
        return EXIT_OK if suite.passed else EXIT_VERIFICATION
    return EXIT_OK


def main(argv: Optional[List[str]] = None, log_file_path: Optional[Path] = None) -> int:
    setup_from_env()
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        setup_logger(level=config.log_level, log_file_path=log_file_path)
        logger.debug(f"Resolved configuration: {config.model_dump(by_alias=True)}")
        return _dispatch(args, config)
    except PFHKitError as e:
        logger.error(str(e))
        return e.exit_code
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
