"""
SAT Circuit Sampler - Main Entry Point

Run the command line with: python -m src.main <command> ...
"""

import argparse
import logging
import sys
from typing import List, Optional

from .cli.commands import ExitCode, cmd_bench, cmd_sample, cmd_transform, cmd_verify
from .config import Config


def setup_logging(level: str = "INFO") -> None:
    """Configure application logging; records go to stderr."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )


class CliArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with the usage exit code."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with all subcommands."""
    parser = CliArgumentParser(
        prog="sat-circuit-sampler",
        description="Transform CNF instances into circuits and sample solutions by gradient descent.",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default: LOG_LEVEL or INFO)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    transform = subparsers.add_parser("transform", help="Extract a circuit from a DIMACS file")
    transform.add_argument("cnf", help="DIMACS CNF file")
    transform.add_argument("--out", help="Circuit JSON path (default: stdout)")
    transform.add_argument("--dump-exprs", action="store_true", help="Print recovered definitions to stderr")
    transform.add_argument("--stats", nargs="?", const="-", default=None,
                           help="Write the stats JSON to PATH (stderr when no path is given)")
    transform.add_argument("--emit-python", metavar="PATH", help="Write the probabilistic model as Python source")
    transform.set_defaults(func=cmd_transform)

    sample = subparsers.add_parser("sample", help="Sample verified solutions")
    sample.add_argument("cnf", help="DIMACS CNF file")
    sample.add_argument("--circuit", help="Circuit JSON from `transform` (transforms when omitted)")
    sample.add_argument("--batch", type=int, help="Batch size")
    sample.add_argument("--iters", type=int, help="Gradient descent iterations")
    sample.add_argument("--lr", type=float, help="Learning rate")
    sample.add_argument("--seed", type=int, help="Random seed")
    sample.add_argument("--max-solutions", type=int, help="Solution quota")
    sample.add_argument("--timeout", type=float, help="Timeout in seconds")
    sample.add_argument("--restart-policy", choices=["none", "reinit_on_exhaust"], help="Restart policy")
    sample.add_argument("--workers", type=int, help="Threads for batch row blocks")
    sample.add_argument("--out", help="Solutions file (default: stdout)")
    sample.add_argument("--stats-json", help="Run stats JSON path ('-' for stderr)")
    sample.add_argument("--no-cache", action="store_true", help="Do not read or write the transform cache")
    sample.set_defaults(func=cmd_sample)

    verify = subparsers.add_parser("verify", help="Verify a solutions file against a DIMACS file")
    verify.add_argument("cnf", help="DIMACS CNF file")
    verify.add_argument("solutions", help="Solutions file, one model line per solution")
    verify.set_defaults(func=cmd_verify)

    bench = subparsers.add_parser("bench", help="Measure unique-solution throughput over a sweep")
    bench.add_argument("cnf", help="DIMACS CNF file")
    bench.add_argument("--quota", type=int, default=1000, help="Solution quota per sweep point")
    bench.add_argument("--timeout", type=float, help="Timeout per sweep point in seconds")
    bench.add_argument("--batch", default="1024", help="Comma-separated batch sizes")
    bench.add_argument("--iters", default="5", help="Comma-separated iteration counts")
    bench.add_argument("--lr", default="10", help="Comma-separated learning rates")
    bench.add_argument("--seed", type=int, help="Random seed")
    bench.add_argument("--out", help="CSV path (default: stdout)")
    bench.add_argument("--curve", metavar="PATH", help="Write per-iteration unique counts as CSV")
    bench.add_argument("--no-cache", action="store_true", help="Do not read or write the transform cache")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the command line."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = Config.load()
    except ValueError as e:
        print(f"Error: invalid configuration: {e}", file=sys.stderr)
        return int(ExitCode.USAGE)

    level = "DEBUG" if args.verbose or config.app.debug else (args.log_level or config.app.log_level)
    setup_logging(level)

    return int(args.func(args, config))


if __name__ == "__main__":
    sys.exit(main())
