"""
Command-line interface for chainlens.

    chainlens ingest   --input DIR [--max-height H] [--workers N]
    chainlens analyze  {flow,dwell,extranonce,degrees,episodes,issuance,all} --input DIR --out DIR
    chainlens synth    SCENARIO.ini --out DIR
    chainlens verify   --input DIR

Exit codes: 0 success, 2 data error, 3 scenario error, 64 usage error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import NoReturn, Sequence

from pydantic import ValidationError

from chainlens import __version__
from chainlens.app import ChainLens, create_app
from chainlens.config import RunConfig, settings
from chainlens.errors import (
    AnalysisError,
    GraphError,
    ScenarioError,
    UsageError,
    WireError,
)
from chainlens.utils.exit_codes import ExitCode, exits_on

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(int(ExitCode.USAGE), f"{self.prog}: error: {message}\n")


def build_parser(analyses: Sequence[str]) -> argparse.ArgumentParser:
    parser = _Parser(
        prog="chainlens",
        description="Raw block-file parsing and chain-graph analytics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    chain = _Parser(add_help=False)
    chain.add_argument("--input", dest="inputs", type=Path, nargs="+", required=True)
    chain.add_argument("--workers", type=int, default=settings.workers)
    chain.add_argument("--max-height", type=int)
    chain.add_argument("--out", type=Path, default=Path("out"))

    commands.add_parser("ingest", parents=[chain], help="Parse block files, print stats")
    commands.add_parser("verify", parents=[chain], help="Re-check graph invariants")

    analyze = commands.add_parser("analyze", parents=[chain], help="Export analyses")
    analyze.add_argument("which", choices=[*analyses, "all"])
    analyze.add_argument("--min-height", type=int, default=0)
    analyze.add_argument("--min-degree", type=int, default=settings.min_degree)
    analyze.add_argument("--min-count", type=int, default=settings.min_count)
    analyze.add_argument("--max-gap", type=int, default=settings.max_gap)
    analyze.add_argument(
        "--reset-threshold", type=float, default=settings.reset_threshold
    )
    analyze.add_argument("--max-step-rate", type=int, default=settings.max_step_rate)
    analyze.add_argument("--max-idle", type=int, default=settings.max_idle)
    analyze.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")

    synth = commands.add_parser("synth", help="Generate a synthetic chain")
    synth.add_argument("scenario", type=Path)
    synth.add_argument("--out", type=Path, required=True)
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    """
    Build the validated run configuration from parsed arguments.

    Raises:
        UsageError: If a value is out of range
    """
    fields = {
        name: value
        for name, value in vars(args).items()
        if name in RunConfig.model_fields and value is not None
    }
    try:
        return RunConfig(**fields)
    except ValidationError as e:
        raise UsageError(str(e)) from e


@exits_on(ExitCode.USAGE, UsageError)
@exits_on(ExitCode.DATA, WireError, GraphError, OSError)
def cmd_ingest(app: ChainLens, config: RunConfig) -> int:
    """Build the graph and print its stats as ``metric,value`` CSV."""
    app.ingest(config)
    sys.stdout.write(app.stats().to_csv())
    return int(ExitCode.OK)


@exits_on(ExitCode.USAGE, UsageError)
@exits_on(ExitCode.DATA, WireError, GraphError, AnalysisError, OSError)
def cmd_analyze(app: ChainLens, config: RunConfig, which: str) -> int:
    app.ingest(config)
    for path in app.analyze(config, which):
        print(path)
    return int(ExitCode.OK)


@exits_on(ExitCode.SCENARIO, ScenarioError)
@exits_on(ExitCode.DATA, OSError)
def cmd_synth(app: ChainLens, scenario: Path, out_dir: Path) -> int:
    for path in app.synth(scenario, out_dir):
        print(path)
    return int(ExitCode.OK)


@exits_on(ExitCode.USAGE, UsageError)
@exits_on(ExitCode.DATA, WireError, GraphError, OSError)
def cmd_verify(app: ChainLens, config: RunConfig) -> int:
    """Print every violation and the fee total; exit 2 if anything is wrong."""
    app.ingest(config)
    report = app.verify()
    for violation in report.violations:
        print(violation)
    print(f"violations,{len(report.violations)}")
    print(f"fees,{report.total_fees}")
    return int(ExitCode.OK if report.ok else ExitCode.DATA)


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point for the command line."""
    logging.basicConfig(level=settings.log.upper(), format=LOG_FORMAT)
    app = create_app()
    args = build_parser(sorted(app.exporters)).parse_args(argv)

    if args.command == "synth":
        return cmd_synth(app, args.scenario, args.out)

    try:
        config = run_config(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return int(ExitCode.USAGE)

    if args.command == "ingest":
        return cmd_ingest(app, config)
    if args.command == "verify":
        return cmd_verify(app, config)
    return cmd_analyze(app, config, args.which)


if __name__ == "__main__":
    sys.exit(main())
