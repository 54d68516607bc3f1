"""Argument parsing and dispatch for the `cei` command."""

import argparse
import json
import logging
import sys
from collections.abc import Sequence

from cei_paths.config import SimulationSettings
from cei_paths.domain.process_spec import ProcessKind
from cei_paths.services.transform_service import TransformOp

from apps.cei_cli.app import CEIApp
from apps.cei_cli.commands.experiment_commands import list_experiments, verify
from apps.cei_cli.commands.path_commands import sample_paths, transform_paths

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _floats(text: str) -> tuple[float, ...]:
    """Parse a comma-separated list such as "0.6,-0.4,0.3"."""
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _add_sampling_knobs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, help="grid resolution")
    parser.add_argument("--paths", type=int, help="number of paths")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--out", help="destination samples file")
    parser.add_argument("--format", choices=["csv", "json"], help="samples file format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cei",
        description="Random cyclic shifts of exchangeable-increment paths.",
    )
    parser.add_argument("--log-level", help="logging level (default from CEI_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    sample = commands.add_parser("sample", help="draw paths of a process law")
    sample.add_argument("--process", required=True, choices=[kind.value for kind in ProcessKind])
    _add_sampling_knobs(sample)
    sample.add_argument("--x", type=float, default=0.0, help="bridge endpoint")
    sample.add_argument("--alpha-drift", type=float, default=0.0, help="EI drift (X_1)")
    sample.add_argument("--sigma", type=float, default=0.0, help="EI Brownian coefficient")
    sample.add_argument("--betas", type=_floats, default=(), help="EI jump sizes v1,v2,...")
    sample.add_argument("--increments", type=_floats, default=(), help="walk increments")

    transform = commands.add_parser("transform", help="apply a path transform")
    transform.add_argument("--op", required=True, choices=[op.value for op in TransformOp])
    transform.add_argument("--input", help="samples file to transform (fresh paths otherwise)")
    transform.add_argument(
        "--process",
        default=ProcessKind.BRIDGE.value,
        choices=[kind.value for kind in ProcessKind],
        help="law of fresh paths when --input is absent",
    )
    _add_sampling_knobs(transform)
    transform.add_argument("--u", type=float, help="fixed uniform in [0, 1)")
    transform.add_argument("--j", type=int, help="grid index for --op shift")
    transform.add_argument("--interval", help='interval such as "(-0.4,-0.1]" or "-1,0"')
    transform.add_argument("--y", type=float, help="minimum level")
    transform.add_argument("--epsilon", type=float, help="local-time band width")
    transform.add_argument("--x", type=float, help="first-passage endpoint")

    run = commands.add_parser("verify", help="run a registered experiment")
    run.add_argument("experiment", nargs="?", help="experiment name (see `cei list`)")
    run.add_argument("--config", help="JSON config file; flags override its values")
    run.add_argument("--n", type=int)
    run.add_argument("--paths", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--epsilon", type=float)
    run.add_argument("--interval", help='"lo,hi" (closed) or bracket notation')
    run.add_argument("--x", type=float)
    run.add_argument("--y", type=float)
    run.add_argument("--alpha", type=float, help="significance level")
    run.add_argument("--out", dest="out_dir", help="artifact directory")
    run.add_argument("--format", choices=["csv", "json"])
    run.add_argument("--workers", type=int)

    commands.add_parser("list", help="list registered experiments")
    return parser


def dispatch(app: CEIApp, args: argparse.Namespace) -> tuple[dict, int]:
    """Run the selected command and map its result to an exit code."""
    match args.command:
        case "sample":
            result = sample_paths(
                app,
                args.process,
                n=args.n,
                paths=args.paths,
                seed=args.seed,
                x=args.x,
                alpha_drift=args.alpha_drift,
                sigma=args.sigma,
                betas=args.betas,
                increments=args.increments,
                out=args.out,
                fmt=args.format,
            )
        case "transform":
            result = transform_paths(
                app,
                args.op,
                input_file=args.input,
                process=args.process,
                n=args.n,
                paths=args.paths,
                seed=args.seed,
                u=args.u,
                j=args.j,
                interval=args.interval,
                y=args.y,
                epsilon=args.epsilon,
                x=args.x,
                out=args.out,
                fmt=args.format,
            )
        case "verify":
            result = verify(
                app,
                args.experiment,
                config_file=args.config,
                n=args.n,
                paths=args.paths,
                seed=args.seed,
                epsilon=args.epsilon,
                interval=args.interval,
                x=args.x,
                y=args.y,
                alpha=args.alpha,
                out_dir=args.out_dir,
                format=args.format,
                workers=args.workers,
            )
            if "error" in result:
                return result, EXIT_ERROR
            return result, EXIT_PASSED if result["passed"] else EXIT_FAILED
        case _:
            result = list_experiments(app)

    return result, EXIT_ERROR if "error" in result else EXIT_PASSED


def main(argv: Sequence[str] | None = None, settings: SimulationSettings | None = None) -> int:
    """Entry point of the `cei` console script; prints the result as JSON."""
    args = build_parser().parse_args(argv)
    app = CEIApp(settings)
    logging.basicConfig(
        level=(args.log_level or app.settings.log_level).upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    result, code = dispatch(app, args)
    print(json.dumps(result, indent=2, default=str))
    return code
