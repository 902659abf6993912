#!/usr/bin/env python3
"""
cpc - Main Entry Point

Command line for the contact-pair curvature engine: load a manifold spec file
or a zoo entry, run validators, curvature summaries, flatness checks and
theorem audits, and print reproducible markdown or JSON reports.
"""

import argparse
import logging
import sys
from typing import List, Optional

from Cli.commands import (
    EXIT_USAGE,
    THEOREMS,
    CommandResult,
    RunOptions,
    cmd_audit,
    cmd_curvature,
    cmd_einstein,
    cmd_flatness,
    cmd_schema,
    cmd_verify,
    cmd_zoo_export,
    cmd_zoo_list,
    cmd_zoo_show,
    load_target,
)
from Cli.cpc_config import CpcConfig
from Curvature_Tensors import TENSORS
from Curvature_Tensors.tensors import TOL_FLAT
from Data_Classes.errors import CpcError
from Output_Generation.report_markdown import ReportMarkdown

logger = logging.getLogger(__name__)


def setup_logging(level: str = "INFO") -> logging.Logger:
    """Configure and return a logger instance. Logs go to stderr; stdout carries the report."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
        ],
        force=True,
    )
    return logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=None, help="sample points per check (CPC_SAMPLES, default 100)")
    common.add_argument("--seed", type=int, default=None, help="sampler seed (CPC_SEED, default 42)")
    common.add_argument("--workers", type=int, default=None, help="worker threads (CPC_WORKERS, default 1)")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--html", metavar="FILE", default=None, help="also write an HTML rendering to FILE")
    common.add_argument("--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(prog="cpc", description="Contact-pair curvature engine")
    commands = parser.add_subparsers(dest="command", required=True)

    zoo = commands.add_parser("zoo", help="built-in manifolds")
    zoo_commands = zoo.add_subparsers(dest="zoo_command", required=True)
    zoo_commands.add_parser("list", parents=[common], help="list built-in manifolds")
    show = zoo_commands.add_parser("show", parents=[common], help="describe one built-in manifold")
    show.add_argument("name")
    export = zoo_commands.add_parser("export", parents=[common], help="print a built-in as a spec file")
    export.add_argument("name")

    verify = commands.add_parser("verify", parents=[common], help="chart and contact pair checks")
    verify.add_argument("source", help="spec file path or zoo:NAME")

    curvature = commands.add_parser("curvature", parents=[common], help="scalar, Ricci and sectional curvature")
    curvature.add_argument("source")
    curvature.add_argument("--at", default=None, help="comma-separated point coordinates")
    curvature.add_argument("--conformal-factor", default=None, metavar="EXPR",
                           help="use the metric exp(2 EXPR) g instead of g")

    flat = commands.add_parser("flatness", parents=[common], help="flatness of C, W or C~")
    flat.add_argument("source")
    flat.add_argument("--tensor", choices=TENSORS, required=True)
    flat.add_argument("--a", type=float, default=None)
    flat.add_argument("--b", type=float, default=None)
    flat.add_argument("--tol", type=float, default=TOL_FLAT)

    einstein = commands.add_parser("einstein", parents=[common], help="fit Ric = lambda g")
    einstein.add_argument("source")

    audit = commands.add_parser("audit", parents=[common], help="identity suite or theorem audit")
    audit.add_argument("source")
    audit.add_argument("--theorem", choices=THEOREMS, required=True)
    audit.add_argument("--a", type=float, default=None)
    audit.add_argument("--b", type=float, default=None)

    commands.add_parser("schema", parents=[common], help="print the JSON schema of every report")
    return parser


def _options(args: argparse.Namespace, config: CpcConfig) -> RunOptions:
    options = RunOptions(
        samples=config.samples if args.samples is None else args.samples,
        seed=config.seed if args.seed is None else args.seed,
        workers=config.workers if args.workers is None else args.workers,
    )
    if options.samples < 1 or options.workers < 1 or options.seed < 0:
        raise ValueError("--samples and --workers must be at least 1, --seed non-negative")
    return options


def dispatch(args: argparse.Namespace, options: RunOptions) -> CommandResult:
    if args.command == "zoo":
        if args.zoo_command == "list":
            return cmd_zoo_list()
        if args.zoo_command == "show":
            return cmd_zoo_show(args.name)
        return cmd_zoo_export(args.name)
    if args.command == "schema":
        return cmd_schema()
    target = load_target(args.source)
    if args.command == "verify":
        return cmd_verify(target, options)
    if args.command == "curvature":
        return cmd_curvature(target, options, at=args.at, conformal_factor=args.conformal_factor)
    if args.command == "flatness":
        return cmd_flatness(target, options, args.tensor, a=args.a, b=args.b, tol=args.tol)
    if args.command == "einstein":
        return cmd_einstein(target, options)
    return cmd_audit(target, options, args.theorem, a=args.a, b=args.b)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and print its report.

    Returns:
        int: 0 pass, 1 failed checks, 2 usage or load error
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = CpcConfig.from_env()
        setup_logging("DEBUG" if args.verbose else config.log_level)
        options = _options(args, config)
        result = dispatch(args, options)
    except (CpcError, ValueError) as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    sys.stdout.write(result.render(as_json=args.json))
    if args.html:
        if result.report is None:
            logger.warning("⚠️ --html ignored: this command has no report to render")
        else:
            ReportMarkdown(result.report).save_html(args.html)
    return result.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
