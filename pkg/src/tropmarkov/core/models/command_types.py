from enum import Enum

# ==============================================================================
# Core Enums
# ==============================================================================
class Subcommand(Enum):
    """Subcommands exposed by the CLI."""
    VERIFY = "verify"
    ORBIT = "orbit"
    LYAPUNOV = "lyapunov"
    LAMBDA = "lambda"
    MARKOV = "markov"
    SEMICONJ = "semiconj"


class Suite(Enum):
    """Exact verification suites."""
    CLASSICAL = "classical"
    TROPICAL = "tropical"
    SEMICONJ = "semiconj"
    TORUS = "torus"
    FAREY = "farey"
    ALL = "all"          # Runs every suite above in this order

    @classmethod
    def expand(cls, suite: "Suite") -> list:
        if suite is cls.ALL:
            return [s for s in cls if s is not cls.ALL]
        return [suite]


class Estimator(Enum):
    """Estimators of the path exponent Lambda."""
    MATRICES = "matrices"
    EUCLID = "euclid"
    MARKOV = "markov"
    ALL = "all"

    @classmethod
    def expand(cls, estimator: "Estimator") -> list:
        if estimator is cls.ALL:
            return [e for e in cls if e is not cls.ALL]
        return [estimator]


class TreeKind(Enum):
    """Which tree the ``markov`` subcommand walks."""
    MARKOV = "markov"
    EUCLID = "euclid"
