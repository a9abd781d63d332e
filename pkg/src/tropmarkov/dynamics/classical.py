"""
Exact Markov and Euclid tree dynamics, and the smooth Cayley cubic checks.

Trees are planar: every vertex remembers its left parent, right parent and
newest entry. Going L keeps the left parent and the newest entry, going R keeps
the newest entry and the right parent. The reported triples are sorted.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Set, Tuple

import numpy as np

from .errors import DepthExceeded, DomainError, NotDivisible
from .words import PathWord
from ..utils.numeric import big_log

# Longest word walked with exact big integers by default
MAX_MARKOV_DEPTH = 30

_Planar = Tuple[int, int, int]


@dataclass(frozen=True, order=True)
class MarkovTriple:
    """Three positive integers tested against x^2 + y^2 + z^2 = 3xyz."""
    x: int
    y: int
    z: int

    def __post_init__(self) -> None:
        if min(self.x, self.y, self.z) <= 0:
            raise DomainError(f"Markov triple entries must be positive: {self.as_tuple()}")

    @classmethod
    def canonical(cls, x: int, y: int, z: int) -> "MarkovTriple":
        """Build the triple in tree order x <= y <= z."""
        return cls(*sorted((x, y, z)))

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.x, self.y, self.z)

    @property
    def largest(self) -> int:
        return max(self.x, self.y, self.z)

    def to_json(self) -> List[str]:
        """Decimal strings; entries outgrow every native number type."""
        return [str(e) for e in self.as_tuple()]

    @classmethod
    def from_json(cls, values: Sequence[str]) -> "MarkovTriple":
        x, y, z = (int(v) for v in values)
        return cls(x, y, z)


@dataclass(frozen=True, order=True)
class EuclidTriple:
    """Coprime a, b with c = a + b."""
    a: int
    b: int
    c: int

    @classmethod
    def canonical(cls, a: int, b: int, c: int) -> "EuclidTriple":
        return cls(*sorted((a, b, c)))

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def largest(self) -> int:
        return max(self.a, self.b, self.c)

    def is_valid(self) -> bool:
        """a + b = c with gcd(a, b) = 1 (on the canonical ordering)."""
        a, b, c = sorted(self.as_tuple())
        return a + b == c and math.gcd(a, b) == 1

    def to_json(self) -> List[str]:
        return [str(e) for e in self.as_tuple()]


@dataclass(frozen=True)
class RealTriple:
    """A point of R^3 in double precision."""
    x: float
    y: float
    z: float

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.z)


# ==============================================================================
# Markov equation and Vieta moves
# ==============================================================================

def is_markov(t: MarkovTriple) -> bool:
    """True iff x^2 + y^2 + z^2 = 3xyz exactly."""
    x, y, z = t.as_tuple()
    return x * x + y * y + z * z == 3 * x * y * z


def markov_integral(t: MarkovTriple) -> Fraction:
    """The rational integral (x^2 + y^2 + z^2) / (xyz); equals 3 on the equation."""
    x, y, z = t.as_tuple()
    return Fraction(x * x + y * y + z * z, x * y * z)


def _split(t: MarkovTriple, slot: int) -> Tuple[List[int], int, int, int]:
    """Entries, 0-based index of ``slot``, and the two other entries."""
    if slot not in (1, 2, 3):
        raise DomainError(f"slot must be 1, 2 or 3, got {slot}")
    entries = list(t.as_tuple())
    i = slot - 1
    p, q = entries[:i] + entries[i + 1:]
    return entries, i, p, q


def vieta_markov(t: MarkovTriple, slot: int) -> MarkovTriple:
    """Replace the entry at ``slot`` (1-based) by 3 * (product of the others) - entry."""
    entries, i, p, q = _split(t, slot)
    entries[i] = 3 * p * q - entries[i]
    return MarkovTriple(*entries)


def vieta_ratio(t: MarkovTriple, slot: int) -> MarkovTriple:
    """
    Replace the entry at ``slot`` by (sum of squares of the others) / entry.

    On x^2 + y^2 + z^2 = 3xyz the division is exact and the result agrees with
    ``vieta_markov``.

    Raises:
        NotDivisible: The division leaves a remainder, so ``t`` is off the equation.
    """
    entries, i, p, q = _split(t, slot)
    numerator = p * p + q * q
    quotient, remainder = divmod(numerator, entries[i])
    if remainder:
        raise NotDivisible(
            f"{numerator} is not divisible by {entries[i]}; {t.as_tuple()} is off the Markov equation"
        )
    entries[i] = quotient
    return MarkovTriple(*entries)


# ==============================================================================
# Planar trees
# ==============================================================================

MARKOV_ROOT: _Planar = (1, 1, 2)
EUCLID_ROOT: _Planar = (1, 1, 2)


def _markov_child(vertex: _Planar, letter: str) -> _Planar:
    x, y, z = vertex
    if letter == "L":
        return (x, z, 3 * x * z - y)
    return (z, y, 3 * z * y - x)


def _euclid_child(vertex: _Planar, letter: str) -> _Planar:
    a, b, c = vertex
    if letter == "L":
        return (a, c, a + c)
    return (c, b, c + b)


def markov_path(w: PathWord, max_depth: int = MAX_MARKOV_DEPTH) -> List[MarkovTriple]:
    """
    Markov triples along the path ``w`` from the root (1, 1, 2).

    Returns the root followed by one canonical triple per letter.

    Raises:
        DepthExceeded: If ``w`` is longer than ``max_depth``.
    """
    if len(w) > max_depth:
        raise DepthExceeded(f"word of length {len(w)} exceeds the exact depth cap {max_depth}")
    vertex = MARKOV_ROOT
    path = [MarkovTriple.canonical(*vertex)]
    for letter in w:
        vertex = _markov_child(vertex, letter)
        path.append(MarkovTriple.canonical(*vertex))
    return path


def euclid_path(w: PathWord) -> List[EuclidTriple]:
    """Euclid triples a + b = c along ``w`` from the root (1, 1, 2)."""
    vertex = EUCLID_ROOT
    path = [EuclidTriple.canonical(*vertex)]
    for letter in w:
        vertex = _euclid_child(vertex, letter)
        path.append(EuclidTriple.canonical(*vertex))
    return path


def tree_level(depth: int) -> List[MarkovTriple]:
    """All distinct canonical Markov triples within ``depth`` edges of the root."""
    if depth > MAX_MARKOV_DEPTH:
        raise DepthExceeded(f"depth {depth} exceeds the exact depth cap {MAX_MARKOV_DEPTH}")
    frontier = [MARKOV_ROOT]
    seen: Set[MarkovTriple] = {MarkovTriple.canonical(*MARKOV_ROOT)}
    for _ in range(depth):
        frontier = [_markov_child(v, letter) for v in frontier for letter in "LR"]
        seen.update(MarkovTriple.canonical(*v) for v in frontier)
    return sorted(seen)


def markov_numbers(depth: int) -> List[int]:
    """Sorted set of entries of the triples within ``depth`` edges of the root."""
    return sorted({e for t in tree_level(depth) for e in t.as_tuple()})


# ==============================================================================
# Growth
# ==============================================================================

def loglog_growth(triples: Iterable[MarkovTriple]) -> List[float]:
    """
    ln(ln z_n) / n for the n-th triple (n counted from 1), z_n its largest entry.

    Raises:
        DomainError: If some z_n < 3 (the double logarithm would not be positive).
    """
    values = []
    for n, t in enumerate(triples, start=1):
        z = t.largest
        if z < 3:
            raise DomainError(f"largest entry {z} at n={n} is below 3")
        values.append(math.log(big_log(z)) / n)
    return values


def tropical_gap(w: PathWord, max_depth: int = MAX_MARKOV_DEPTH) -> List[float]:
    """
    ln z_n / c_n along ``w``: how far the Markov tree is from the exponential of
    the Euclid tree at each depth (the ratio settles to a constant on paths
    with exponential Euclid growth).
    """
    markov = markov_path(w, max_depth)
    euclid = euclid_path(w)
    return [big_log(m.largest) / e.largest for m, e in zip(markov, euclid)]


# ==============================================================================
# Cayley cubic x^2 + y^2 + z^2 = xyz + 4
# ==============================================================================

def is_cayley(t: RealTriple, tol: float) -> bool:
    """True iff |x^2 + y^2 + z^2 - xyz - 4| <= tol."""
    if tol < 0:
        raise DomainError(f"tolerance must be non-negative, got {tol}")
    x, y, z = t.as_tuple()
    return abs(x * x + y * y + z * z - x * y * z - 4.0) <= tol


def cosh_param(a: float, b: float) -> RealTriple:
    """Positive sheet: (2 cosh a, 2 cosh b, 2 cosh(a + b))."""
    return RealTriple(2.0 * math.cosh(a), 2.0 * math.cosh(b), 2.0 * math.cosh(a + b))


def cos_param(a: float, b: float) -> RealTriple:
    """Middle part bounding the spectrahedron: (2 cos a, 2 cos b, 2 cos(a + b))."""
    return RealTriple(2.0 * math.cos(a), 2.0 * math.cos(b), 2.0 * math.cos(a + b))


def gram_matrix(t: RealTriple) -> np.ndarray:
    """Unit-diagonal symmetric matrix with off-diagonal entries x/2, y/2, z/2."""
    hx, hy, hz = (e / 2.0 for e in t.as_tuple())
    return np.array([[1.0, hx, hy], [hx, 1.0, hz], [hy, hz, 1.0]])


def gram_det(t: RealTriple) -> float:
    """
    Determinant of ``gram_matrix(t)`` in closed form: 1 - (x^2 + y^2 + z^2)/4 + xyz/4.

    Vanishes on the Cayley cubic x^2 + y^2 + z^2 = xyz + 4.
    """
    x, y, z = t.as_tuple()
    return 1.0 - (x * x + y * y + z * z) / 4.0 + x * y * z / 4.0


def in_spectrahedron(t: RealTriple, tol: float = 1e-12) -> bool:
    """True iff the Gram matrix is positive semi-definite (smallest eigenvalue >= -tol)."""
    return bool(np.linalg.eigvalsh(gram_matrix(t))[0] >= -tol)
