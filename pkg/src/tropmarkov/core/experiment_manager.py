"""Experiment execution for tropmarkov."""

import sys
from typing import Any, Dict, Iterator, List, Optional, TextIO, Tuple

from .models.command_config import CommandConfig, ConfigError
from .models.command_types import Estimator, Subcommand, Suite, TreeKind
from .verification import Verifier
from ..dynamics.classical import euclid_path, markov_path
from ..dynamics.ergodic_lab import (
    NAMED_STARTS,
    ExportFormat,
    benettin_lyapunov,
    box_discrepancy,
    export_orbit,
    orbit,
    period_detect,
    surface_residual,
)
from ..dynamics.errors import CapExceeded
from ..dynamics.farey_paths import (
    LambdaSeries,
    cf_to_word,
    lambda_via_euclid,
    lambda_via_markov,
    lambda_via_word_matrices,
)
from ..dynamics.torus_fold import ScalarMode, TorusPoint
from ..dynamics.words import PathWord
from ..utils.output_writer import dumps, write_csv, write_jsonl

# Exit statuses
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_IO_ERROR = 3

# Longest exact iteration spent looking for the period in an orbit summary
PERIOD_SEARCH_CAP = 1_000_000

DEFAULT_LYAPUNOV_START = "sqrt2"


class ExperimentManager:
    """Runs one subcommand from a finalized configuration."""

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        self.stdout = stdout if stdout is not None else sys.stdout
        self.stderr = stderr if stderr is not None else sys.stderr

    def execute(self, config: CommandConfig) -> int:
        """Dispatch to the subcommand runner and return its exit status."""
        runners = {
            Subcommand.VERIFY: self.run_verify,
            Subcommand.ORBIT: self.run_orbit,
            Subcommand.LYAPUNOV: self.run_lyapunov,
            Subcommand.LAMBDA: self.run_lambda,
            Subcommand.MARKOV: self.run_markov,
            Subcommand.SEMICONJ: self.run_semiconj,
        }
        return runners[config.command](config)

    # --- Messages ---

    def _say(self, message: str) -> None:
        print(message, file=self.stderr)

    def _emit_summary(self, summary: Dict[str, Any], to_stdout: bool) -> None:
        """JSON summary on stdout, or on stderr when stdout already carries the data."""
        print(dumps(summary), file=self.stdout if to_stdout else self.stderr)

    # --- Verification ---

    def run_verify(self, config: CommandConfig) -> int:
        return self._run_suites(config, config.suite)

    def run_semiconj(self, config: CommandConfig) -> int:
        return self._run_suites(config, Suite.SEMICONJ)

    def _run_suites(self, config: CommandConfig, suite: Suite) -> int:
        verifier = Verifier(config)
        results = verifier.run(suite)
        for result in results:
            icon = "✅" if result.passed else "❌"
            self._say(f"{icon} {result.suite.value}: {result.checks - result.failed}/{result.checks} checks passed")
        report = Verifier.report(results, config.seed)
        self._emit_summary(report, to_stdout=True)
        return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED

    # --- Orbits and exponents ---

    def run_orbit(self, config: CommandConfig) -> int:
        assert config.matrix is not None and config.start is not None
        rec = orbit(config.matrix, config.start, config.n, config.mode, config.fold)
        summary: Dict[str, Any] = {
            "length": rec.length,
            "matrix": config.matrix.to_json(),
            "start": config.start.to_row(),
            "mode": config.mode.value,
            "folded": rec.folded,
        }
        if rec.folded:
            summary["surface_residual"] = surface_residual(rec)
        if config.grid is not None:
            summary["discrepancy"] = box_discrepancy(rec, config.grid)
            summary["grid"] = config.grid
        if config.mode is ScalarMode.EXACT:
            summary["period"] = self._find_period(config)

        if config.out is not None:
            export_orbit(rec, config.out, config.fmt)
            summary["out"] = str(config.out)
            self._say(f"📁 Wrote {rec.length} points to {config.out}")
        else:
            export_orbit(rec, self.stdout, config.fmt)
        self._emit_summary(summary, to_stdout=config.out is not None)
        return EXIT_OK

    def _find_period(self, config: CommandConfig) -> Optional[int]:
        assert config.matrix is not None and config.start is not None
        try:
            return period_detect(config.matrix, config.start, cap=PERIOD_SEARCH_CAP)
        except CapExceeded:
            self._say(f"⚠️  No period found within {PERIOD_SEARCH_CAP} steps")
            return None

    def run_lyapunov(self, config: CommandConfig) -> int:
        assert config.matrix is not None
        start = config.start
        if start is None:
            start = TorusPoint.floating(*NAMED_STARTS[DEFAULT_LYAPUNOV_START])
        report = benettin_lyapunov(config.matrix, start, config.n, fold_to_surface=config.fold)
        if report.reference is None:
            self._say(f"⚠️  {config.matrix.to_json()} is not hyperbolic; no reference exponent")
        summary = report.to_json()
        summary["matrix"] = config.matrix.to_json()
        summary["start"] = start.to_row()
        self._emit_summary(summary, to_stdout=True)
        return EXIT_OK

    # --- Tree paths ---

    def _path_word(self, config: CommandConfig) -> PathWord:
        if config.cf is not None:
            return cf_to_word(config.cf, config.n, extend=True)
        assert config.word is not None
        if len(config.word) < config.n:
            raise ConfigError(f"--word has {len(config.word)} letters but --n is {config.n}")
        return config.word.prefix(config.n)

    def run_lambda(self, config: CommandConfig) -> int:
        word = self._path_word(config)
        estimators = Estimator.expand(config.estimator)
        series = [self._lambda_series(estimator, word, config.n) for estimator in estimators]

        summary: Dict[str, Any] = {
            "n": config.n,
            "word": str(word) if len(word) <= 64 else str(word)[:64] + "...",
            "tail_estimates": {s.estimator: s.tail_estimate for s in series},
        }
        if config.cf is not None:
            summary["cf"] = str(config.cf)

        destination = config.out if config.out is not None else self.stdout
        if len(series) == 1:
            header: Tuple[str, ...] = ("k", "lambda_k")
            rows: Iterator[List[Any]] = ([k, repr(v)] for k, v in series[0].rows())
        else:
            header = ("k", "estimator", "lambda_k")
            rows = ([k, s.estimator, repr(v)] for s in series for k, v in s.rows())
        self._write_rows(destination, config.fmt, header, rows)
        if config.out is not None:
            summary["out"] = str(config.out)
            self._say(f"📁 Wrote {config.n} rows per estimator to {config.out}")
        self._emit_summary(summary, to_stdout=config.out is not None)
        return EXIT_OK

    @staticmethod
    def _lambda_series(estimator: Estimator, word: PathWord, n: int) -> LambdaSeries:
        if estimator is Estimator.MATRICES:
            return lambda_via_word_matrices(word, n)
        if estimator is Estimator.EUCLID:
            return lambda_via_euclid(word, n)
        return lambda_via_markov(word, n)

    def run_markov(self, config: CommandConfig) -> int:
        """Dump the Markov (or Euclid) triples along a tree path."""
        assert config.word is not None
        if config.tree is TreeKind.MARKOV:
            triples = [t.to_json() for t in markov_path(config.word)]
            header: Tuple[str, ...] = ("n", "x", "y", "z")
        else:
            triples = [t.to_json() for t in euclid_path(config.word)]
            header = ("n", "a", "b", "c")

        destination = config.out if config.out is not None else self.stdout
        rows = ([n] + triple for n, triple in enumerate(triples))
        self._write_rows(destination, config.fmt, header, rows)

        summary = {
            "tree": config.tree.value,
            "word": str(config.word),
            "length": len(triples),
            "largest": max(triples[-1], key=int),
        }
        if config.out is not None:
            summary["out"] = str(config.out)
        self._emit_summary(summary, to_stdout=config.out is not None)
        return EXIT_OK

    # --- Output ---

    @staticmethod
    def _write_rows(destination: Any, fmt: ExportFormat, header: Tuple[str, ...], rows: Any) -> None:
        if fmt is ExportFormat.CSV:
            write_csv(destination, header, rows)
        else:
            write_jsonl(destination, (dict(zip(header, row)) for row in rows))

