"""Command-line entry point: ``python -m cli {verify,compute,experiment} ...``.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or configuration error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Optional

from common.config import OutputFormat, TauConvention, load_settings
from common.exceptions import ConfigurationError, InvalidArgumentError, NumericsError
from common.utils.logging import configure_logging

from .commands import (
    EXPERIMENTS,
    SUITES,
    TARGETS,
    RunContext,
    run_compute,
    run_experiment,
    run_verify,
)
from .output import ReportSink

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("run configuration")
    group.add_argument("--X", type=float, help="Length parameter X (>= 2)")
    group.add_argument("--T", type=float, help="Spectral cutoff T (>= 1)")
    group.add_argument("--N", type=float, help="Bump scale N (> 1)")
    group.add_argument("--theta", type=float, help="Subconvexity exponent in [0, 1/4]")
    group.add_argument("--Q", type=int, help="Largest modulus q")
    group.add_argument("--qmax", type=int, help="Largest modulus for exhaustive suites")
    group.add_argument("--nmax", type=int, help="n truncation (default 40*sqrt(X))")
    group.add_argument("--tmax", type=float, help="Contour truncation |t| <= tmax")
    group.add_argument("--V", type=float, help="Smoothing length of S_V (>= 1)")
    group.add_argument("--eigenvalues", type=Path, help="Eigenvalue file for spectral sums")
    group.add_argument("--sort", action="store_true", help="Accept unsorted eigenvalue files")
    group.add_argument("--out", type=Path, help="Report directory")
    group.add_argument("--threads", type=int, help="Worker count")
    group.add_argument(
        "--deterministic",
        action="store_true",
        default=None,
        help="In-order reductions; byte-identical reports",
    )
    group.add_argument("--format", choices=[f.value for f in OutputFormat], help="Table format")
    group.add_argument(
        "--tau-convention", choices=[c.value for c in TauConvention], help="τ normalization"
    )
    group.add_argument("--log-level", help="Logging level")
    group.add_argument("--config", type=Path, help="TOML config file")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parent = _common_flags()
    parser = argparse.ArgumentParser(
        prog="python -m cli",
        description="Kloosterman sums, generalized L-functions and spectral identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[parent], help="Run an identity suite")
    verify.add_argument("suite", choices=[*SUITES, "all"])
    verify.set_defaults(handler=run_verify)

    compute = sub.add_parser("compute", parents=[parent], help="Compute and emit a table")
    compute.add_argument("target", choices=TARGETS)
    compute.add_argument("--n", type=int, default=1, help="Frequency n of a Kloosterman row")
    compute.add_argument("--m", type=int, default=5, help="Discriminant argument m")
    compute.add_argument("--s", default="2.5", help="Complex point s, e.g. 2.5 or 0.5+3j")
    compute.add_argument("--a1", action="store_true", help="Report the π²/12 scaled variant")
    compute.set_defaults(handler=run_compute)

    experiment = sub.add_parser("experiment", parents=[parent], help="Run a scaling experiment")
    experiment.add_argument("name", choices=list(EXPERIMENTS))
    experiment.add_argument("--xs", type=float, nargs="+", help="X values of the grid")
    experiment.add_argument("--ts", type=float, nargs="+", help="T values of the grid")
    experiment.add_argument("--z", type=float, default=1e3, help="Range n <= z of the λ-drift")
    experiment.set_defaults(handler=run_experiment)
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "X": args.X,
        "T": args.T,
        "N": args.N,
        "THETA": args.theta,
        "Q": args.Q,
        "QMAX": args.qmax,
        "NMAX": args.nmax,
        "TMAX": args.tmax,
        "V": args.V,
        "OUT_DIR": args.out,
        "THREADS": args.threads,
        "DETERMINISTIC": args.deterministic,
        "OUTPUT_FORMAT": args.format,
        "TAU_CONVENTION": args.tau_convention,
        "LOG_LEVEL": args.log_level,
    }


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        settings = load_settings(args.config, **_overrides(args))
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(settings.LOG_LEVEL)

    ctx = RunContext(settings=settings, sink=ReportSink(settings), options=args)
    try:
        return int(args.handler(ctx))
    except (ConfigurationError, InvalidArgumentError) as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericsError as exc:
        logger.error("computation failed: %s", exc)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
