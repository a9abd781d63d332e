#!/usr/bin/env python3
"""
Tropical Markov dynamics from the command line - verify the exact identities,
export orbit clouds on the tetrahedron and estimate Lyapunov exponents.
"""

import argparse
import sys
import textwrap
from typing import List, Optional

from .experiment_manager import (
    EXIT_BAD_CONFIG,
    EXIT_CHECK_FAILED,
    EXIT_IO_ERROR,
    ExperimentManager,
)
from .models.command_config import CommandConfig, ConfigError
from .models.command_types import Estimator, Subcommand, Suite, TreeKind
from ..dynamics.errors import TropMarkovError
from ..utils.output_validator import OutputValidationError


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out",
        type=str,
        help="Data file to write (default: standard output, summary on standard error)"
    )
    parser.add_argument(
        "--format",
        choices=["csv", "json"],
        default="csv",
        help="Data format: csv with a header row, or json lines (default: csv)"
    )


def _seed(text: str) -> int:
    """Decimal or 0x-prefixed seed."""
    return int(text, 0)


def _add_sampling_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=_seed, help="Seed of the test data generator (default: 0x5EED)")
    parser.add_argument(
        "--words",
        type=int,
        default=1000,
        help="Number of random generator words (default: 1000)"
    )
    parser.add_argument(
        "--word-len",
        type=int,
        default=20,
        help="Maximum length of random words (default: 20)"
    )
    parser.add_argument(
        "--points",
        type=int,
        default=100,
        help="Number of rational torus points each word is tested on (default: 100)"
    )


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with one subparser per subcommand."""
    parser = argparse.ArgumentParser(
        prog="tropmarkov",
        description=(
            "Tropical Cayley-Markov dynamics on the tetrahedron, its semi-conjugation "
            "to toral automorphisms, and the Markov/Euclid tree growth exponents."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=textwrap.dedent("""\
            Examples:
            %(prog)s verify                                         # Every exact suite, default seed
            %(prog)s verify --suite tropical --seed 7               # Psi invariance and involutions only
            %(prog)s semiconj --word-len 20                         # Residual scan over random words
            %(prog)s orbit --matrix 2,1,1,1 --start sqrt2 --n 1000000 --fold --out cloud.csv
            %(prog)s orbit --matrix 2,1,1,1 --start 1/2,1/2 --n 10  # Exact orbit, reports the period
            %(prog)s lyapunov --matrix 2,1,1,1 --n 100000           # Benettin estimate vs ln rho(M)
            %(prog)s lambda --cf "[1;(1)]" --n 200                  # Golden path, matrix estimator
            %(prog)s lambda --word LRLRLR --n 6 --estimator all     # All three estimators
            %(prog)s markov --word LLLL --format json               # Markov triples along a path

            Starts:
            sqrt2    →  (sqrt 2 - 1, sqrt 3 - 1)
            sqrt3    →  (sqrt 3 - 1, sqrt 5 - 2)
            golden   →  (phi - 1, 2 - phi)
            p/q,r/s  →  exact rational start

            Exit codes:
            0  ok      1  check failed or depth exceeded
            2  bad configuration      3  output error
            """)
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    verify = subparsers.add_parser(
        Subcommand.VERIFY.value, help="Run the exact verification suites"
    )
    verify.add_argument(
        "--suite",
        choices=[s.value for s in Suite],
        default=Suite.ALL.value,
        help="Suite to run (default: all)"
    )
    verify.add_argument(
        "--samples",
        type=int,
        default=10_000,
        help="Random points per suite; 0 skips the sampled checks (default: 10000)"
    )
    verify.add_argument(
        "--matrices",
        type=int,
        default=10,
        help="Hyperbolic matrices in the induced-map check (default: 10)"
    )
    _add_sampling_flags(verify)

    semiconj = subparsers.add_parser(
        Subcommand.SEMICONJ.value, help="Exact semi-conjugation residuals over random words"
    )
    _add_sampling_flags(semiconj)

    orbit = subparsers.add_parser(Subcommand.ORBIT.value, help="Export an orbit on the torus or on T")
    orbit.add_argument("--matrix", type=str, required=True, help="Matrix as a,b,c,d (row-major)")
    orbit.add_argument("--start", type=str, required=True, help="Named start or p/q,r/s")
    orbit.add_argument("--n", type=int, default=1000, help="Number of points (default: 1000)")
    orbit.add_argument(
        "--mode",
        choices=["exact", "float"],
        help="Arithmetic (default: exact for rational starts, float for named ones)"
    )
    orbit.add_argument("--fold", action="store_true", help="Fold the orbit onto the tetrahedron surface")
    orbit.add_argument("--grid", type=int, help="Report the box discrepancy on a GRID x GRID partition")
    _add_output_flags(orbit)

    lyapunov = subparsers.add_parser(
        Subcommand.LYAPUNOV.value, help="Benettin estimate of the Lyapunov exponent"
    )
    lyapunov.add_argument("--matrix", type=str, required=True, help="Matrix as a,b,c,d (row-major)")
    lyapunov.add_argument("--n", type=int, default=100_000, help="Iterations (default: 100000)")
    lyapunov.add_argument("--start", type=str, help="Named start or p/q,r/s (default: sqrt2)")
    lyapunov.add_argument("--fold", action="store_true", help="Advance the base point on T")

    lam = subparsers.add_parser(Subcommand.LAMBDA.value, help="Growth exponent along a Farey path")
    lam.add_argument("--cf", type=str, help='Continued fraction, e.g. "[1;(1)]" or "[0;2,3]"')
    lam.add_argument("--word", type=str, help="Path word over L and R")
    lam.add_argument("--n", type=int, default=200, help="Path length (default: 200)")
    lam.add_argument(
        "--estimator",
        choices=[e.value for e in Estimator],
        default=Estimator.MATRICES.value,
        help="Estimator (default: matrices; markov is capped at depth 30)"
    )
    _add_output_flags(lam)

    markov = subparsers.add_parser(Subcommand.MARKOV.value, help="Dump the triples along a tree path")
    markov.add_argument("--word", type=str, required=True, help="Path word over L and R (at most 30 letters)")
    markov.add_argument(
        "--tree",
        choices=[t.value for t in TreeKind],
        default=TreeKind.MARKOV.value,
        help="Tree to walk (default: markov)"
    )
    _add_output_flags(markov)

    return parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parses command-line arguments."""
    return build_parser().parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    args = parse_args(argv)
    try:
        config = CommandConfig.from_args(args)
    except ConfigError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except OutputValidationError as e:
        print(e, file=sys.stderr)
        return EXIT_IO_ERROR
    except OSError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_IO_ERROR

    print(f"🎯 {config.command.value}", file=sys.stderr)
    print(config.project_summary(), file=sys.stderr)

    manager = ExperimentManager()
    try:
        return manager.execute(config)
    except ConfigError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except TropMarkovError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except OSError as e:
        print(f"❌ Could not write output: {e}", file=sys.stderr)
        return EXIT_IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
