"""
Piecewise-linear tropical dynamics.

Two actions of the modular group live here: the tropical Markov action on
(X, Y, Z) with invariant Phi, and the tropical Cayley-Markov action on
(u, v, w), generated by the tropical Vieta involution sigma and the cyclic
shift rho, with invariant Psi whose level sets are tetrahedron surfaces.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple, Union

from .errors import DomainError, NotOnSurface
from .words import GeneratorWord
from ..utils.numeric import Scalar, format_scalar

# Right-hand side of the tropical Cayley equation
DEFAULT_LEVEL = Fraction(2)


def _coerce(value: Union[int, Scalar]) -> Scalar:
    return value if isinstance(value, (Fraction, float)) else Fraction(value)


@dataclass(frozen=True)
class TropPoint3:
    """A point (u, v, w) of 3-space; exact when built from ints or Fractions."""
    u: Scalar
    v: Scalar
    w: Scalar

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _coerce(self.u))
        object.__setattr__(self, "v", _coerce(self.v))
        object.__setattr__(self, "w", _coerce(self.w))

    # Markov-context names
    @property
    def X(self) -> Scalar:
        return self.u

    @property
    def Y(self) -> Scalar:
        return self.v

    @property
    def Z(self) -> Scalar:
        return self.w

    def as_tuple(self) -> Tuple[Scalar, Scalar, Scalar]:
        return (self.u, self.v, self.w)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(e, Fraction) for e in self.as_tuple())

    def scaled(self, factor: Scalar) -> "TropPoint3":
        return TropPoint3(self.u * factor, self.v * factor, self.w * factor)

    def distance(self, other: "TropPoint3") -> Scalar:
        """Component-wise (max-norm) distance."""
        return max(abs(a - b) for a, b in zip(self.as_tuple(), other.as_tuple()))

    def to_row(self) -> List[str]:
        return [format_scalar(e) for e in self.as_tuple()]


@dataclass(frozen=True)
class UVProjection:
    """Image of a surface point in the (u, v) square plus its sheet (+1 or -1)."""
    u: Scalar
    v: Scalar
    branch: int


# ==============================================================================
# Tropical Markov action
# ==============================================================================

def trop_markov_step(p: TropPoint3) -> TropPoint3:
    """(X, Y, Z) -> (X, Y, max(2X, 2Y) - Z)."""
    return TropPoint3(p.X, p.Y, max(2 * p.X, 2 * p.Y) - p.Z)


def phi(p: TropPoint3) -> Scalar:
    """Phi = max(X - Y - Z, Y - X - Z, Z - X - Y)."""
    X, Y, Z = p.as_tuple()
    return max(X - Y - Z, Y - X - Z, Z - X - Y)


# ==============================================================================
# Tropical Cayley-Markov action
# ==============================================================================

def f(u: Scalar, v: Scalar) -> Scalar:
    """
    The piecewise linear function behind the tropical Vieta involution:

        v   if  u >= |v|
        u   if  v >= |u|
        -v  if -u >= |v|
        -u  if -v >= |u|

    The four regions cover the plane and agree on their common edges.
    """
    if u >= abs(v):
        return v
    if v >= abs(u):
        return u
    if -u >= abs(v):
        return -v
    return -u


def f_closed(u: Scalar, v: Scalar) -> Scalar:
    """Branch-free form of ``f``: max(min(u, v), -max(u, v))."""
    return max(min(u, v), -max(u, v))


def sigma(p: TropPoint3) -> TropPoint3:
    """Tropical Vieta involution (u, v, w) -> (u, v, -w + 2 f(u, v))."""
    return TropPoint3(p.u, p.v, -p.w + 2 * f(p.u, p.v))


def rho(p: TropPoint3) -> TropPoint3:
    """Cyclic shift (u, v, w) -> (v, w, u)."""
    return TropPoint3(p.v, p.w, p.u)


def psi(p: TropPoint3) -> Scalar:
    """Psi = max(-u + v + w, u - v + w, u + v - w, -u - v - w)."""
    u, v, w = p.as_tuple()
    return max(-u + v + w, u - v + w, u + v - w, -u - v - w)


def _check_level(c: Scalar) -> None:
    if c <= 0:
        raise DomainError(f"surface level must be positive, got {c}")


def on_surface(p: TropPoint3, c: Scalar = DEFAULT_LEVEL) -> bool:
    """True iff psi(p) == c exactly: p lies on the tetrahedron surface of level c."""
    _check_level(c)
    return psi(p) == c


# Sign patterns of the vertices of the level-1 tetrahedron
_VERTEX_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def vertices(c: Scalar = DEFAULT_LEVEL) -> List[TropPoint3]:
    """The four vertices (c,c,c), (c,-c,-c), (-c,c,-c), (-c,-c,c)."""
    _check_level(c)
    return [TropPoint3(*signs).scaled(c) for signs in _VERTEX_SIGNS]


_CAYLEY_GENERATORS: Dict[str, Callable[[TropPoint3], TropPoint3]] = {
    "s": sigma,
    "r": rho,
}

_MARKOV_GENERATORS: Dict[str, Callable[[TropPoint3], TropPoint3]] = {
    "s": trop_markov_step,
    "r": rho,
}


def apply_word(p: TropPoint3, w: GeneratorWord) -> TropPoint3:
    """Apply the letters of ``w`` to ``p`` from left to right (s = sigma, r = rho)."""
    for letter in w:
        p = _CAYLEY_GENERATORS[letter](p)
    return p


def apply_markov_word(p: TropPoint3, w: GeneratorWord) -> TropPoint3:
    """Same as ``apply_word`` for the tropical Markov action (s = trop_markov_step)."""
    for letter in w:
        p = _MARKOV_GENERATORS[letter](p)
    return p


def project_uv(p: TropPoint3, c: Scalar = DEFAULT_LEVEL) -> UVProjection:
    """
    Project a surface point to (u, v) and tag its sheet by the sign of w - f(u, v).

    Points on the fold edges (w = f(u, v)) get branch +1; sigma fixes them.

    Raises:
        NotOnSurface: If psi(p) != c.
    """
    if not on_surface(p, c):
        raise NotOnSurface(f"psi{tuple(map(str, p.as_tuple()))} = {psi(p)} != {c}")
    branch = 1 if p.w - f(p.u, p.v) >= 0 else -1
    return UVProjection(p.u, p.v, branch)
