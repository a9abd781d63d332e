"""Seeded generators of exact test data: rationals, points, words and matrices."""

from fractions import Fraction
from typing import List, Optional

import numpy as np

from .torus_fold import IntMatrix2, TorusPoint, fold
from .tropical import TropPoint3
from .words import GeneratorWord, PathWord

DEFAULT_SEED = 0x5EED


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """numpy Generator seeded with ``seed`` (``DEFAULT_SEED`` when None)."""
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def random_rational(rng: np.random.Generator, bound: int = 3, max_denominator: int = 12) -> Fraction:
    """A rational in [-bound, bound] with denominator at most ``max_denominator``."""
    q = int(rng.integers(1, max_denominator + 1))
    p = int(rng.integers(-bound * q, bound * q + 1))
    return Fraction(p, q)


def random_trop_points(
    rng: np.random.Generator, count: int, bound: int = 3, max_denominator: int = 12
) -> List[TropPoint3]:
    return [
        TropPoint3(*(random_rational(rng, bound, max_denominator) for _ in range(3)))
        for _ in range(count)
    ]


def random_torus_points(
    rng: np.random.Generator, count: int, max_denominator: int = 16
) -> List[TorusPoint]:
    """Exact torus points with coordinates k/q in [-1, 1)."""
    points = []
    for _ in range(count):
        q = int(rng.integers(1, max_denominator + 1))
        phi, psi = (Fraction(int(rng.integers(-q, q)), q) for _ in range(2))
        points.append(TorusPoint.exact(phi, psi))
    return points


def random_surface_points(
    rng: np.random.Generator, count: int, max_denominator: int = 16
) -> List[TropPoint3]:
    """Exact points of the tetrahedron surface psi = 2, pushed through the fold."""
    return [fold(t) for t in random_torus_points(rng, count, max_denominator)]


def random_generator_words(
    rng: np.random.Generator, count: int, max_length: int
) -> List[GeneratorWord]:
    return [
        GeneratorWord("".join(rng.choice(["s", "r"], size=int(rng.integers(0, max_length + 1)))))
        for _ in range(count)
    ]


def random_path_words(rng: np.random.Generator, count: int, max_length: int) -> List[PathWord]:
    return [
        PathWord("".join(rng.choice(["L", "R"], size=int(rng.integers(0, max_length + 1)))))
        for _ in range(count)
    ]


def random_hyperbolic_matrices(
    rng: np.random.Generator, count: int, max_entry: int = 10
) -> List[IntMatrix2]:
    """Hyperbolic SL2(Z) matrices with entries bounded by ``max_entry``, by rejection."""
    found: List[IntMatrix2] = []
    while len(found) < count:
        a, b, c = (int(v) for v in rng.integers(-max_entry, max_entry + 1, size=3))
        if a == 0 or (1 + b * c) % a:
            continue
        d = (1 + b * c) // a
        if abs(d) > max_entry or abs(a + d) <= 2:
            continue
        found.append(IntMatrix2(a, b, c, d))
    return found
