"""Tropmarkov: tropical Cayley-Markov dynamics on the tetrahedron, its semi-conjugation to toral automorphisms, and Markov/Euclid tree growth exponents."""

from .core.experiment_manager import ExperimentManager
from .core.models.command_config import CommandConfig
from .core.verification import Verifier
from .dynamics.classical import EuclidTriple, MarkovTriple, euclid_path, markov_path
from .dynamics.ergodic_lab import OrbitRecord, benettin_lyapunov, orbit
from .dynamics.farey_paths import ContinuedFraction, lambda_via_euclid, lambda_via_markov, lambda_via_matrices
from .dynamics.torus_fold import IntMatrix2, TorusPoint, fold, unfold
from .dynamics.tropical import TropPoint3, psi, rho, sigma
from .dynamics.words import GeneratorWord, PathWord

__version__ = "0.3.0"
__all__ = [
    "ExperimentManager",
    "CommandConfig",
    "Verifier",
    "MarkovTriple",
    "EuclidTriple",
    "markov_path",
    "euclid_path",
    "OrbitRecord",
    "orbit",
    "benettin_lyapunov",
    "ContinuedFraction",
    "lambda_via_matrices",
    "lambda_via_euclid",
    "lambda_via_markov",
    "IntMatrix2",
    "TorusPoint",
    "fold",
    "unfold",
    "TropPoint3",
    "sigma",
    "rho",
    "psi",
    "GeneratorWord",
    "PathWord",
]
