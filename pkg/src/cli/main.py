import logging
import sys
from argparse import ArgumentParser, Namespace
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn

from cli.commands import DEFAULT_COMMAND, Command, Outcome, commands
from core.errors import VerificationFailed
from core.forcing import ForcingKind, ForcingSpec
from core.problem import ProblemParams
from core.settings import OutputFormat, settings
from schema import RunConfig
from storage import get_writer, write_csv, write_json, write_trajectory

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNVERIFIED = 2


class UsageError(ValueError):
    pass


class Parser(ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def _add_common(parser: ArgumentParser, command: Command) -> None:
    parser.add_argument("--epsilon", type=float, default=command.epsilon, help="ε > 0")
    parser.add_argument("--lambda", dest="lam", type=float, default=command.lam, help="λ")
    parser.add_argument(
        "--forcing",
        choices=[ForcingKind.COSINE.value, ForcingKind.COS_MINUS_SIN2.value],
        default=ForcingKind.COSINE.value,
    )
    parser.add_argument("--barrier", type=float, default=None, help="explicit barrier level b")
    parser.add_argument("--output-dir", default=settings.OUTPUT_DIR)
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=[f.value for f in OutputFormat],
        default=settings.OUTPUT_FORMAT.value,
    )
    parser.add_argument("--seed", type=int, default=settings.SEED, help="α-scan jitter seed")
    parser.add_argument("--workers", type=int, default=settings.WORKER_COUNT)
    if command.requirement is not None:
        parser.add_argument(
            f"--require-{command.requirement}",
            dest="require",
            action="store_true",
            help=f"exit with code {EXIT_UNVERIFIED} unless the result is {command.requirement}",
        )


def build_parser() -> ArgumentParser:
    parser = Parser(prog="duffing", description="Forced Duffing toolkit for ε²u″ = u³ − λu + g(t).")
    sub = parser.add_subparsers(dest="command", parser_class=Parser)
    for key, command in commands.items():
        child = sub.add_parser(key, help=command.description, description=command.description)
        _add_common(child, command)
        if command.configure is not None:
            command.configure(child)
    return parser


def run_config(args: Namespace) -> RunConfig:
    params = ProblemParams(
        epsilon=args.epsilon,
        lam=args.lam,
        forcing=ForcingSpec(kind=ForcingKind(args.forcing)),
        b=args.barrier,
    )
    return RunConfig(
        command=args.command,
        params=params,
        output_dir=args.output_dir,
        output_format=OutputFormat(args.output_format),
        seed=args.seed,
        workers=args.workers,
    )


def write_outcome(config: RunConfig, outcome: Outcome) -> list[Path]:
    """<command>.<json|csv> plus <command>-<name> attachments, in a fixed order."""
    directory = Path(config.output_dir)
    name = config.command
    paths = [get_writer(config.output_format).write(directory, name, outcome.record, outcome.table)]
    for key in sorted(outcome.tables):
        paths.append(write_csv(directory / f"{name}-{key}.csv", outcome.tables[key]))
    for key in sorted(outcome.records):
        paths.append(write_json(directory / f"{name}-{key}.json", outcome.records[key]))
    for key in sorted(outcome.trajectories):
        paths.append(write_trajectory(directory / f"{name}-{key}.dtraj", outcome.trajectories[key]))
    return paths


def run(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand; 0 on success, 2 on an unverified result, 1 on any other error."""
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or (argv[0].startswith("-") and argv[0] not in ("-h", "--help")):
        argv = [DEFAULT_COMMAND, *argv]
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = run_config(args)
        outcome = commands[config.command].handler(args, config)
        paths = write_outcome(config, outcome)
    except VerificationFailed as exc:
        print(exc, file=sys.stderr)
        return EXIT_UNVERIFIED
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR

    logger.info(f"{config.command}: wrote {', '.join(str(p) for p in paths)}")
    if getattr(args, "require", False) and outcome.passed is False:
        print(f"{config.command}: result did not hold", file=sys.stderr)
        return EXIT_UNVERIFIED
    return EXIT_OK
