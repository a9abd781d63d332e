"""
Folding of the torus R^2 / (2Z)^2 onto the tetrahedron surface psi = 2.

The tropical cosine cos_t (the even triangle wave of period 2) parametrizes
the surface by (u, v, w) = (2 cos_t phi, 2 cos_t psi, 2 cos_t(phi + psi)).
The fold is 2-to-1, identifying t with -t, and intertwines the linear action
of integer matrices on the torus with the tropical Cayley-Markov action.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

import numpy as np

from .errors import DomainError, InvalidDeterminant, NotHyperbolic, NotOnSurface
from .tropical import TropPoint3, apply_word, psi as tropical_psi
from .words import GeneratorWord
from ..utils.numeric import Scalar, big_log, format_scalar

# Float-mode tolerance for surface membership
SURFACE_TOL = 1e-9

# Below this trace size the spectral radius is evaluated directly in floats
_DIRECT_TRACE_LIMIT = 2 ** 52


class ScalarMode(Enum):
    """Representation of torus coordinates."""
    EXACT = "exact"
    FLOAT = "float"


def wrap(x: Scalar) -> Scalar:
    """Reduce modulo 2 to the canonical representative in [-1, 1)."""
    if isinstance(x, float):
        r = math.remainder(x, 2.0)
        return -1.0 if r == 1.0 else r
    r = (Fraction(x) + 1) % 2 - 1
    return r


@dataclass(frozen=True)
class TorusPoint:
    """A point (phi, psi) of the torus, stored by its representative in [-1, 1)^2."""
    phi: Scalar
    psi: Scalar
    mode: ScalarMode = ScalarMode.EXACT

    def __post_init__(self) -> None:
        if self.mode is ScalarMode.EXACT:
            if isinstance(self.phi, float) or isinstance(self.psi, float):
                raise TypeError("exact torus points need rational coordinates, got a float")
            phi, psi = Fraction(self.phi), Fraction(self.psi)
        else:
            phi, psi = float(self.phi), float(self.psi)
        object.__setattr__(self, "phi", wrap(phi))
        object.__setattr__(self, "psi", wrap(psi))

    @classmethod
    def exact(cls, phi: Union[int, Fraction, str], psi: Union[int, Fraction, str]) -> "TorusPoint":
        return cls(Fraction(phi), Fraction(psi), ScalarMode.EXACT)

    @classmethod
    def floating(cls, phi: float, psi: float) -> "TorusPoint":
        return cls(float(phi), float(psi), ScalarMode.FLOAT)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(-self.phi, -self.psi, self.mode)

    @property
    def chi(self) -> Scalar:
        """The third angle phi + psi, wrapped to [-1, 1)."""
        return wrap(self.phi + self.psi)

    @property
    def is_two_torsion(self) -> bool:
        """Fixed by the central symmetry t -> -t (the preimages of the vertices)."""
        return self == -self

    def to_row(self) -> List[str]:
        return [format_scalar(self.phi), format_scalar(self.psi)]


@dataclass(frozen=True)
class IntMatrix2:
    """A unimodular 2x2 integer matrix [[a, b], [c, d]]."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.det not in (1, -1):
            raise InvalidDeterminant(
                f"matrix {self.to_json()} has determinant {self.det}, expected +1 or -1"
            )

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def parse(cls, text: str) -> "IntMatrix2":
        """Parse the ``a,b,c,d`` row-major syntax."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated integers, got '{text}'")
        a, b, c, d = (int(p) for p in parts)
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def is_hyperbolic(self) -> bool:
        return self.det == 1 and abs(self.trace) > 2

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def power(self, n: int) -> "IntMatrix2":
        """M^n for n >= 0 by repeated squaring."""
        if n < 0:
            raise DomainError(f"negative power {n}")
        result, base = IntMatrix2.identity(), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def columns(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (self.a, self.c), (self.b, self.d)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def to_json(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]


# ==============================================================================
# Tropical cosine and the fold
# ==============================================================================

def cos_t(x: Scalar) -> Scalar:
    """Even triangle wave of period 2: 1 - 2|x| on [-1, 1]."""
    return 1 - 2 * abs(wrap(x))


def acos_t(u: Union[int, Scalar]) -> Scalar:
    """
    Principal inverse of u = 2 cos_t(phi): returns phi = (2 - u) / 4 in [0, 1].

    Raises:
        DomainError: If |u| > 2.
    """
    if abs(u) > 2:
        raise DomainError(f"acos_t is defined on [-2, 2], got {u}")
    if isinstance(u, float):
        return (2.0 - u) / 4.0
    return (2 - Fraction(u)) / 4


def fold(tp: TorusPoint) -> TropPoint3:
    """(phi, psi) -> (2 cos_t phi, 2 cos_t psi, 2 cos_t(phi + psi))."""
    return TropPoint3(2 * cos_t(tp.phi), 2 * cos_t(tp.psi), 2 * cos_t(tp.chi))


def _close(a: Scalar, b: Scalar, exact: bool) -> bool:
    return a == b if exact else abs(a - b) <= SURFACE_TOL


def unfold(p: TropPoint3) -> Tuple[TorusPoint, ...]:
    """
    The preimages {t, -t} of a surface point under ``fold``.

    A single point is returned at the four vertices, where t = -t. Otherwise the
    representative with psi >= 0 comes first.

    Raises:
        NotOnSurface: If psi(p) != 2 (within ``SURFACE_TOL`` for float points).
    """
    exact = p.is_exact
    if not _close(tropical_psi(p), 2, exact):
        raise NotOnSurface(f"psi{tuple(map(str, p.as_tuple()))} = {tropical_psi(p)} != 2")
    mode = ScalarMode.EXACT if exact else ScalarMode.FLOAT
    phi0, psi0 = acos_t(p.u), acos_t(p.v)
    for candidate in (psi0, -psi0):
        if _close(2 * cos_t(phi0 + candidate), p.w, exact):
            t = TorusPoint(phi0, candidate, mode)
            break
    else:
        raise NotOnSurface(f"no torus preimage for {tuple(map(str, p.as_tuple()))}")
    if t.is_two_torsion:
        return (t,)
    return tuple(sorted((t, -t), key=lambda q: (q.psi < 0, q.phi < 0)))


# ==============================================================================
# Linear torus action and the induced map on T
# ==============================================================================

def torus_act(M: IntMatrix2, tp: TorusPoint) -> TorusPoint:
    """(phi, psi) -> (a phi + b psi, c phi + d psi) reduced mod 2."""
    return TorusPoint(M.a * tp.phi + M.b * tp.psi, M.c * tp.phi + M.d * tp.psi, tp.mode)


def induced_map(M: IntMatrix2, p: TropPoint3) -> TropPoint3:
    """
    The map of T covered by M: fold(M t) for a preimage t of p.

    Independent of the preimage since M(-t) = -(M t) and fold is even.
    """
    return fold(torus_act(M, unfold(p)[0]))


S_MATRIX = IntMatrix2(1, 0, 0, -1)
R_MATRIX = IntMatrix2(0, 1, -1, -1)

_GENERATOR_MATRICES = {"s": S_MATRIX, "r": R_MATRIX}


def word_to_matrix(w: GeneratorWord) -> IntMatrix2:
    """
    Lift of a generator word to GL2(Z): s -> diag(1, -1), r -> [[0, 1], [-1, -1]].

    Letters act left to right, so the matrix of ``w = w1 w2 ... wn`` is
    G(wn) ... G(w2) G(w1), matching ``apply_word`` under the fold.
    """
    M = IntMatrix2.identity()
    for letter in w:
        M = _GENERATOR_MATRICES[letter] @ M
    return M


def semiconj_residual(w: GeneratorWord, samples: Iterable[TorusPoint]) -> Scalar:
    """
    Max over ``samples`` of the distance between fold(M t) and apply_word(fold(t), w).

    Zero (exactly, for rational samples) is the semi-conjugation statement.
    Samples are reduced in iteration order; an empty sample set gives 0.
    """
    M = word_to_matrix(w)
    residual: Scalar = Fraction(0)
    for t in samples:
        deviation = fold(torus_act(M, t)).distance(apply_word(fold(t), w))
        residual = max(residual, deviation)
    return residual


# ==============================================================================
# Spectral radius and entropy
# ==============================================================================

def spectral_radius(M: IntMatrix2) -> float:
    """
    Largest eigenvalue modulus of a unimodular matrix.

    det +1: (|tr| + sqrt(tr^2 - 4)) / 2 when |tr| > 2, otherwise 1.
    det -1: (|tr| + sqrt(tr^2 + 4)) / 2.
    """
    t = abs(M.trace)
    if t >= _DIRECT_TRACE_LIMIT:
        return math.exp(log_spectral_radius(M))
    if M.det == 1:
        return (t + math.sqrt(t * t - 4)) / 2.0 if t > 2 else 1.0
    return (t + math.sqrt(t * t + 4)) / 2.0


def log_spectral_radius(M: IntMatrix2) -> float:
    """ln of ``spectral_radius``, safe for traces far beyond float range."""
    t = abs(M.trace)
    if t < _DIRECT_TRACE_LIMIT:
        return math.log(spectral_radius(M))
    shift = -4 if M.det == 1 else 4
    return big_log(t) + math.log((1.0 + math.sqrt(1.0 + shift / (t * t))) / 2.0)


def entropy(M: IntMatrix2) -> float:
    """
    Entropy (and Lyapunov exponent) of a hyperbolic toral automorphism: ln rho(M).

    Raises:
        NotHyperbolic: Unless det M = 1 and |tr M| > 2.
    """
    if not M.is_hyperbolic:
        raise NotHyperbolic(
            f"matrix {M.to_json()} (det {M.det}, trace {M.trace}) is not hyperbolic"
        )
    return log_spectral_radius(M)
