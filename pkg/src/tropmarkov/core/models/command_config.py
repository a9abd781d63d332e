import argparse
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

from .command_types import Estimator, Subcommand, Suite, TreeKind
from ...dynamics.ergodic_lab import NAMED_STARTS, ExportFormat
from ...dynamics.errors import TropMarkovError
from ...dynamics.farey_paths import ContinuedFraction
from ...dynamics.sampling import DEFAULT_SEED
from ...dynamics.torus_fold import IntMatrix2, ScalarMode, TorusPoint
from ...dynamics.words import PathWord
from ...utils.numeric import parse_scalar
from ...utils.output_validator import OutputValidator


class ConfigError(ValueError):
    """Raised when command-line values cannot be turned into a valid configuration."""
    pass


# ==============================================================================
# Command Config - parsed, validated, immutable
# ==============================================================================

@dataclass(frozen=True)
class CommandConfig:
    """Everything a subcommand needs, validated before any computation starts."""
    command: Subcommand

    # Orbit / Lyapunov
    matrix: Optional[IntMatrix2] = None
    start: Optional[TorusPoint] = None
    start_label: str = ""
    n: int = 1
    mode: ScalarMode = ScalarMode.FLOAT
    fold: bool = False
    grid: Optional[int] = None

    # Lambda / Markov
    cf: Optional[ContinuedFraction] = None
    word: Optional[PathWord] = None
    estimator: Estimator = Estimator.MATRICES
    tree: TreeKind = TreeKind.MARKOV

    # Verify / Semiconj
    suite: Suite = Suite.ALL
    seed: int = DEFAULT_SEED
    samples: int = 10_000
    points: int = 100
    words: int = 1000
    word_len: int = 20
    matrices: int = 10

    # Output
    out: Optional[Path] = None
    fmt: ExportFormat = ExportFormat.CSV

    _START_ALIASES = {
        "sqrt2": "sqrt2", "s2": "sqrt2",
        "sqrt3": "sqrt3", "s3": "sqrt3",
        "golden": "golden", "phi": "golden",
    }

    _FORMATS = {"csv": ExportFormat.CSV, "json": ExportFormat.JSONL, "jsonl": ExportFormat.JSONL}

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CommandConfig":
        """Create a CommandConfig from a parsed argparse namespace - main entry point."""
        command = Subcommand(args.command)
        values: Dict[str, object] = {"command": command}

        if hasattr(args, "n"):
            if args.n < 1:
                raise ConfigError(f"--n must be at least 1, got {args.n}")
            values["n"] = args.n

        for name in ("samples", "points", "words", "word_len", "matrices"):
            value = getattr(args, name, None)
            if value is not None:
                if value < 0:
                    raise ConfigError(f"--{name.replace('_', '-')} must be non-negative, got {value}")
                values[name] = value

        if getattr(args, "seed", None) is not None:
            if not 0 <= args.seed < 2 ** 64:
                raise ConfigError(f"--seed must be an unsigned 64-bit integer, got {args.seed}")
            values["seed"] = args.seed

        if getattr(args, "matrix", None) is not None:
            values["matrix"] = cls._parse_matrix(args.matrix)

        if getattr(args, "start", None) is not None:
            start, label, exact = cls._parse_start(args.start)
            values["start"] = start
            values["start_label"] = label
            mode = cls._resolve_mode(getattr(args, "mode", None), exact)
            values["mode"] = mode
            if mode is ScalarMode.FLOAT and start.mode is ScalarMode.EXACT:
                values["start"] = TorusPoint.floating(float(start.phi), float(start.psi))

        if getattr(args, "fold", False):
            values["fold"] = True

        if getattr(args, "grid", None) is not None:
            if args.grid < 2:
                raise ConfigError(f"--grid must be at least 2, got {args.grid}")
            values["grid"] = args.grid

        if getattr(args, "suite", None) is not None:
            values["suite"] = Suite(args.suite)
        if getattr(args, "estimator", None) is not None:
            values["estimator"] = Estimator(args.estimator)
        if getattr(args, "tree", None) is not None:
            values["tree"] = TreeKind(args.tree)

        cf_text = getattr(args, "cf", None)
        word_text = getattr(args, "word", None)
        if cf_text is not None and word_text is not None:
            raise ConfigError("give either --cf or --word, not both")
        if cf_text is not None:
            values["cf"] = cls._parse_cf(cf_text)
        if word_text is not None:
            values["word"] = cls._parse_word(word_text)

        if getattr(args, "format", None) is not None:
            values["fmt"] = cls._FORMATS[args.format]

        if getattr(args, "out", None) is not None:
            values["out"] = cls._validate_out(Path(args.out))

        config = cls(**values)  # type: ignore[arg-type]
        config._check_required()
        return config

    # --- Parsing helpers ---

    @staticmethod
    def _parse_matrix(text: str) -> IntMatrix2:
        try:
            return IntMatrix2.parse(text)
        except (ValueError, TropMarkovError) as e:
            raise ConfigError(f"invalid --matrix '{text}': {e}") from e

    @classmethod
    def _parse_start(cls, text: str) -> Tuple[TorusPoint, str, bool]:
        """Named start (float) or ``p/q,p/q`` (exact). Returns (point, label, is_exact)."""
        key = text.strip().lower()
        if key in cls._START_ALIASES:
            name = cls._START_ALIASES[key]
            phi, psi = NAMED_STARTS[name]
            return TorusPoint.floating(phi, psi), name, False
        parts = text.split(",")
        if len(parts) != 2:
            raise ConfigError(
                f"invalid --start '{text}': use p/q,p/q or one of {sorted(set(cls._START_ALIASES.values()))}"
            )
        try:
            phi, psi = (parse_scalar(p) for p in parts)
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"invalid --start '{text}': {e}") from e
        point = TorusPoint.exact(phi, psi)
        return point, text.strip(), True

    @staticmethod
    def _resolve_mode(requested: Optional[str], exact_start: bool) -> ScalarMode:
        if requested is None:
            return ScalarMode.EXACT if exact_start else ScalarMode.FLOAT
        mode = ScalarMode(requested)
        if mode is ScalarMode.EXACT and not exact_start:
            raise ConfigError("--mode exact needs a rational --start such as 1/2,1/3")
        return mode

    @staticmethod
    def _parse_cf(text: str) -> ContinuedFraction:
        try:
            return ContinuedFraction.parse(text)
        except (ValueError, TropMarkovError) as e:
            raise ConfigError(f"invalid --cf '{text}': {e}") from e

    @staticmethod
    def _parse_word(text: str) -> PathWord:
        try:
            return PathWord(text.strip().upper())
        except TropMarkovError as e:
            raise ConfigError(f"invalid --word: {e}") from e

    @staticmethod
    def _validate_out(path: Path) -> Path:
        OutputValidator(path).raise_if_invalid()
        return path

    def _check_required(self) -> None:
        """Per-subcommand presence checks that argparse cannot express."""
        if self.command in (Subcommand.ORBIT, Subcommand.LYAPUNOV) and self.matrix is None:
            raise ConfigError(f"{self.command.value} needs --matrix a,b,c,d")
        if self.command is Subcommand.ORBIT and self.start is None:
            raise ConfigError("orbit needs --start")
        if self.command is Subcommand.LAMBDA and self.cf is None and self.word is None:
            raise ConfigError("lambda needs --cf or --word")
        if self.command is Subcommand.MARKOV and self.word is None:
            raise ConfigError("markov needs --word")
        if self.grid is not None and self.fold:
            raise ConfigError("--grid measures torus orbits; drop --fold")

    def project_summary(self) -> str:
        """Short human-readable description of the run, for stderr."""
        lines = [f"   Command: {self.command.value}"]
        if self.matrix is not None:
            lines.append(f"   Matrix: {self.matrix.to_json()}")
        if self.start is not None:
            lines.append(f"   Start: {self.start_label} ({self.mode.value})")
        if self.command in (Subcommand.ORBIT, Subcommand.LYAPUNOV, Subcommand.LAMBDA):
            lines.append(f"   Steps: {self.n}")
        if self.cf is not None:
            lines.append(f"   Continued fraction: {self.cf}")
        if self.word is not None:
            lines.append(f"   Word: {self.word or '(empty)'}")
        if self.command in (Subcommand.VERIFY, Subcommand.SEMICONJ):
            lines.append(f"   Seed: {self.seed}")
        if self.out is not None:
            lines.append(f"   Output: {self.out} ({self.fmt.value})")
        return "\n".join(lines)
