"""rvnet.cli

CLI entrypoint for rvnet.

Usage:
    rvnet run --input F --out-dir D [options]   Run the full analysis
    rvnet --input F --out-dir D [options]       Same as `run`
    rvnet fixture --seed S --assets N --days T  Write a synthetic panel
    rvnet version                               Print version

Exit codes: 0 success, 2 parse error, 3 validation error, 4 numeric error,
5 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from .config import (
    ALL_FORMATS,
    DEFAULT_EIG_MAX_ITER,
    DEFAULT_EIG_TOL,
    DEFAULT_LEAST_M,
    DEFAULT_TOP_K,
    PipelineConfig,
)
from .errors import RvNetError, ValidationError
from .telemetry import LoggingTelemetry, Telemetry
from .types import MissingPolicy, Representation

EXIT_OK = 0
EXIT_VALIDATION = ValidationError.exit_code
EXIT_IO = 5


def _formats(text: str) -> List[str]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    unknown = sorted(set(items) - ALL_FORMATS)
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown format(s): {', '.join(unknown)}")
    if not items:
        raise argparse.ArgumentTypeError("at least one format is required")
    return items


def _fail(stage: str, exc: BaseException, code: int) -> int:
    print(f"rvnet: {stage} failed: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def cmd_run(args: argparse.Namespace) -> int:
    """Run the analysis pipeline."""
    from .pipeline import run_pipeline

    try:
        config = PipelineConfig(
            input_path=args.input,
            out_dir=args.out_dir,
            missing_policy=MissingPolicy(args.missing_policy),
            representation=Representation(args.representation),
            top_k=args.top_k,
            least_m=args.least_m,
            formats=frozenset(args.formats),
            eig_tol=args.eig_tol,
            eig_max_iter=args.eig_max_iter,
            write_matrices=args.matrices,
            max_workers=args.workers,
        )
    except ValueError as exc:
        return _fail("config", exc, EXIT_VALIDATION)

    try:
        bundle = run_pipeline(config, telemetry=Telemetry(sink=LoggingTelemetry()))
    except RvNetError as exc:
        return _fail(exc.stage, exc, exc.exit_code)
    except OSError as exc:
        return _fail("io", exc, EXIT_IO)

    print(
        f"rvnet: {bundle.panel.n_assets} assets x {bundle.panel.n_days} days, "
        f"{len(bundle.tree.edges)} MST edges, hub {bundle.tree_summary.hub} "
        f"(degree {bundle.tree_summary.hub_degree}); wrote {config.out_dir}"
    )
    return EXIT_OK


def cmd_fixture(args: argparse.Namespace) -> int:
    """Write a synthetic panel."""
    from .fixture import generate_fixture

    try:
        text = generate_fixture(seed=args.seed, n_assets=args.assets, n_days=args.days, n_blocks=args.blocks)
    except RvNetError as exc:
        return _fail(exc.stage, exc, exc.exit_code)

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as exc:
            return _fail("io", exc, EXIT_IO)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_version(args: argparse.Namespace) -> int:
    """Print version."""
    from . import __version__
    print(f"rvnet {__version__}")
    return EXIT_OK


def _add_run_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="Price CSV with header date,code,bid,ask")
    p.add_argument("--out-dir", required=True, help="Directory for the output files")
    p.add_argument(
        "--missing-policy", choices=[m.value for m in MissingPolicy], default=MissingPolicy.DROP_DATE.value,
        help="drop: keep dates all assets quote (default); ffill: carry last quote forward",
    )
    p.add_argument(
        "--representation", choices=[r.value for r in Representation], default=Representation.BIDASK.value,
        help="bidask (default) or a univariate baseline: bid, ask, mid",
    )
    p.add_argument("--top-k", type=int, default=DEFAULT_TOP_K, help=f"Top nodes per measure (default: {DEFAULT_TOP_K})")
    p.add_argument("--least-m", type=int, default=DEFAULT_LEAST_M, help=f"Least central assets listed (default: {DEFAULT_LEAST_M})")
    p.add_argument(
        "--formats", type=_formats, default=sorted(ALL_FORMATS),
        help="Comma-separated subset of dot,graphml,json,csv (default: all)",
    )
    p.add_argument("--eig-tol", type=float, default=DEFAULT_EIG_TOL, help=f"Power iteration tolerance (default: {DEFAULT_EIG_TOL})")
    p.add_argument("--eig-max-iter", type=int, default=DEFAULT_EIG_MAX_ITER, help=f"Power iteration cap (default: {DEFAULT_EIG_MAX_ITER})")
    p.add_argument("--matrices", action="store_true", help="Also write rv_matrix.csv and dist_matrix.csv")
    p.add_argument("--workers", type=int, default=1, help="Threads for the pairwise RV stage (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rvnet",
        description="rvnet — RV-coefficient networks of bivariate (bid, ask) return series: MST, centrality, importance ranking.",
    )
    parser.add_argument(
        "--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level for stage events (default: WARNING)",
    )
    subparsers = parser.add_subparsers(dest="command")

    # run
    run_parser = subparsers.add_parser("run", help="Run the full analysis pipeline")
    _add_run_arguments(run_parser)
    run_parser.set_defaults(func=cmd_run)

    # fixture
    fixture_parser = subparsers.add_parser("fixture", help="Write a seeded synthetic (bid, ask) panel")
    fixture_parser.add_argument("--seed", type=int, default=1, help="Random seed (default: 1)")
    fixture_parser.add_argument("--assets", type=int, default=45, help="Number of assets (default: 45)")
    fixture_parser.add_argument("--days", type=int, default=1250, help="Number of business days (default: 1250)")
    fixture_parser.add_argument("--blocks", type=int, default=3, help="Planted correlation blocks (default: 3)")
    fixture_parser.add_argument("--out", type=str, help="Write to this path instead of stdout")
    fixture_parser.set_defaults(func=cmd_fixture)

    # version
    version_parser = subparsers.add_parser("version", help="Print version")
    version_parser.set_defaults(func=cmd_version)

    return parser


COMMANDS = ("run", "fixture", "version")


def main(argv: Optional[List[str]] = None) -> None:
    argv = list(sys.argv[1:] if argv is None else argv)
    # Bare flags mean `run`.
    start = _skip_globals(argv)
    head = argv[start] if start < len(argv) else None
    if head not in COMMANDS and any(
        a in ("--input", "--out-dir") or a.startswith(("--input=", "--out-dir=")) for a in argv[start:]
    ):
        argv = argv[:start] + ["run"] + argv[start:]

    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        sys.exit(0)

    logging.basicConfig(level=getattr(logging, args.log_level), format="%(levelname)s %(name)s: %(message)s")
    sys.exit(args.func(args))


def _skip_globals(argv: List[str]) -> int:
    """Index of the first argument after the global options."""
    i = 0
    while i < len(argv) and argv[i].startswith("--log-level"):
        if argv[i] == "--log-level":
            i += 1
        i += 1
    return i
