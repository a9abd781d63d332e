"""
Orbits of integer matrices on the torus and on T, and the estimators that
make ergodicity visible: Benettin's Lyapunov exponent, Birkhoff averages,
box discrepancy and exact period detection.

Exact orbits are tuples of point objects. Float orbits are stored as numpy
arrays of shape (n, 2) for torus points or (n, 3) for folded points.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np

from .errors import CapExceeded, DomainError
from .torus_fold import (
    IntMatrix2,
    ScalarMode,
    TorusPoint,
    entropy,
    fold,
    induced_map,
    torus_act,
)
from .tropical import TropPoint3, psi as tropical_psi
from ..utils.numeric import format_scalar
from ..utils.output_writer import Destination, write_csv, write_jsonl

Observable = Callable[[np.ndarray], np.ndarray]

# Fixed "irrational-like" float starts, chosen for reproducibility
NAMED_STARTS: Dict[str, Tuple[float, float]] = {
    "sqrt2": (math.sqrt(2.0) - 1.0, math.sqrt(3.0) - 1.0),
    "sqrt3": (math.sqrt(3.0) - 1.0, math.sqrt(5.0) - 2.0),
    "golden": ((math.sqrt(5.0) - 1.0) / 2.0, (3.0 - math.sqrt(5.0)) / 2.0),
}


class ExportFormat(Enum):
    CSV = "csv"
    JSONL = "json"


@dataclass(frozen=True)
class OrbitRecord:
    """Orbit x_0 = start, x_{k+1} = M x_k (folded to T when ``folded``)."""
    mode: ScalarMode
    matrix: IntMatrix2
    start: TorusPoint
    points: Union[Tuple[Union[TorusPoint, TropPoint3], ...], np.ndarray]
    folded: bool = False

    @property
    def length(self) -> int:
        return len(self.points)

    @property
    def columns(self) -> Tuple[str, ...]:
        return ("u", "v", "w") if self.folded else ("phi", "psi")

    def as_array(self) -> np.ndarray:
        """Float coordinates, shape (length, 2) or (length, 3)."""
        if isinstance(self.points, np.ndarray):
            return self.points
        width = len(self.columns)
        if not self.points:
            return np.empty((0, width))
        return np.array([[float(c) for c in _coords(p)] for p in self.points])

    def rows(self) -> Iterator[List[str]]:
        """Point coordinates as strings: ``p/q`` in exact mode, ``repr`` in float mode."""
        if isinstance(self.points, np.ndarray):
            return ([repr(float(c)) for c in row] for row in self.points)
        return ([format_scalar(c) for c in _coords(p)] for p in self.points)


def _coords(p: Union[TorusPoint, TropPoint3]) -> Tuple:
    if isinstance(p, TorusPoint):
        return (p.phi, p.psi)
    return p.as_tuple()


@dataclass(frozen=True)
class EstimatorReport:
    estimate: float
    n: int
    reference: Optional[float] = None
    rel_error: Optional[float] = None
    # max |Psi - 2| along the folded base orbit; None when no fold was run
    surface_residual: Optional[float] = None

    @classmethod
    def compare(
        cls,
        estimate: float,
        n: int,
        reference: Optional[float],
        surface_residual: Optional[float] = None,
    ) -> "EstimatorReport":
        rel_error = None
        if reference is not None and reference != 0:
            rel_error = abs(estimate - reference) / abs(reference)
        return cls(estimate, n, reference, rel_error, surface_residual)

    def to_json(self) -> Dict[str, Optional[float]]:
        payload: Dict[str, Optional[float]] = {
            "estimate": self.estimate,
            "n": self.n,
            "reference": self.reference,
            "rel_error": self.rel_error,
        }
        if self.surface_residual is not None:
            payload["surface_residual"] = self.surface_residual
        return payload


# ==============================================================================
# Orbits
# ==============================================================================

def _wrap_float(x: float) -> float:
    r = math.remainder(x, 2.0)
    return -1.0 if r == 1.0 else r


def _wrap_array(x: np.ndarray) -> np.ndarray:
    r = x - 2.0 * np.round(x / 2.0)
    return np.where(r >= 1.0, r - 2.0, r)


def fold_array(coords: np.ndarray) -> np.ndarray:
    """Vectorized fold of an (n, 2) array of torus coordinates to (n, 3)."""
    phi, psi = coords[:, 0], coords[:, 1]
    chi = _wrap_array(phi + psi)
    return 2.0 * (1.0 - 2.0 * np.abs(np.column_stack((_wrap_array(phi), _wrap_array(psi), chi))))


def psi_array(points: np.ndarray) -> np.ndarray:
    """Vectorized tropical Cayley invariant of an (n, 3) array."""
    u, v, w = points[:, 0], points[:, 1], points[:, 2]
    return np.max(np.column_stack((-u + v + w, u - v + w, u + v - w, -u - v - w)), axis=1)


def orbit(
    M: IntMatrix2,
    start: TorusPoint,
    n: int,
    mode: ScalarMode = ScalarMode.EXACT,
    fold_to_surface: bool = False,
) -> OrbitRecord:
    """
    n points of the orbit of ``start`` under the torus action of ``M``.

    Raises:
        DomainError: If n < 1 or an exact orbit is requested from a float start.
    """
    if n < 1:
        raise DomainError(f"orbit length must be at least 1, got {n}")

    if mode is ScalarMode.EXACT:
        if start.mode is not ScalarMode.EXACT:
            raise DomainError("exact orbits need a rational start")
        points = []
        t = start
        for _ in range(n):
            points.append(fold(t) if fold_to_surface else t)
            t = torus_act(M, t)
        return OrbitRecord(mode, M, start, tuple(points), fold_to_surface)

    coords = np.empty((n, 2))
    phi, psi = float(start.phi), float(start.psi)
    a, b, c, d = M.a, M.b, M.c, M.d
    for i in range(n):
        coords[i, 0] = phi
        coords[i, 1] = psi
        phi, psi = _wrap_float(a * phi + b * psi), _wrap_float(c * phi + d * psi)
    float_start = TorusPoint.floating(float(start.phi), float(start.psi))
    points = fold_array(coords) if fold_to_surface else coords
    return OrbitRecord(mode, M, float_start, points, fold_to_surface)


def surface_residual(rec: OrbitRecord) -> float:
    """max |psi - 2| over a folded orbit (0 for an empty one)."""
    if not rec.folded:
        raise DomainError("surface residual is defined for folded orbits only")
    if rec.length == 0:
        return 0.0
    return float(np.max(np.abs(psi_array(rec.as_array()) - 2.0)))


# ==============================================================================
# Estimators
# ==============================================================================

def benettin_lyapunov(
    M: IntMatrix2,
    start: TorusPoint,
    n: int,
    fold_to_surface: bool = False,
    direction: Tuple[float, float] = (1.0, 1.0),
) -> EstimatorReport:
    """
    Largest Lyapunov exponent by the renormalized tangent cocycle.

    A unit tangent vector is pushed through M, its stretch is logged and it is
    renormalized, n times; the estimate is the mean log-stretch. The cocycle of
    a linear toral map does not depend on position, but with
    ``fold_to_surface`` the base point is advanced by the induced map on T so
    the piecewise linear dynamics runs alongside, and its largest deviation
    from the surface Psi = 2 is reported. The reference is ln rho(M) for
    hyperbolic M.
    """
    if n < 1:
        raise DomainError(f"number of iterations must be positive, got {n}")
    A = M.as_array()
    v = np.asarray(direction, dtype=float)
    v = v / np.linalg.norm(v)
    point = fold(TorusPoint.floating(float(start.phi), float(start.psi)))
    residual = abs(float(tropical_psi(point)) - 2.0)
    total = 0.0
    for _ in range(n):
        v = A @ v
        stretch = math.hypot(v[0], v[1])
        total += math.log(stretch)
        v = v / stretch
        if fold_to_surface:
            point = induced_map(M, point)
            residual = max(residual, abs(float(tropical_psi(point)) - 2.0))
    reference = entropy(M) if M.is_hyperbolic else None
    return EstimatorReport.compare(
        total / n, n, reference, residual if fold_to_surface else None
    )


def birkhoff_average(observable: Observable, rec: OrbitRecord) -> float:
    """Time average of a vectorized observable over the orbit points."""
    if rec.length == 0:
        raise DomainError("Birkhoff average of an empty orbit")
    return float(np.mean(observable(rec.as_array())))


@dataclass(frozen=True)
class BoxIndicator:
    """Indicator of [phi_lo, phi_hi) x [psi_lo, psi_hi) on the torus [-1, 1)^2."""
    phi_lo: float
    phi_hi: float
    psi_lo: float
    psi_hi: float

    def __call__(self, coords: np.ndarray) -> np.ndarray:
        phi, psi = coords[:, 0], coords[:, 1]
        inside = (
            (phi >= self.phi_lo) & (phi < self.phi_hi) & (psi >= self.psi_lo) & (psi < self.psi_hi)
        )
        return inside.astype(float)

    @property
    def area(self) -> float:
        """Lebesgue measure normalized by the torus area 4."""
        return (self.phi_hi - self.phi_lo) * (self.psi_hi - self.psi_lo) / 4.0


def box_discrepancy(rec: OrbitRecord, k: int) -> float:
    """max over the k x k grid of |empirical cell frequency - 1/k^2|."""
    if k < 2:
        raise DomainError(f"grid size must be at least 2, got {k}")
    if rec.folded:
        raise DomainError("box discrepancy is measured on torus orbits")
    if rec.length == 0:
        raise DomainError("box discrepancy of an empty orbit")
    coords = rec.as_array()
    counts, _, _ = np.histogram2d(
        coords[:, 0], coords[:, 1], bins=k, range=[[-1.0, 1.0], [-1.0, 1.0]]
    )
    return float(np.max(np.abs(counts / rec.length - 1.0 / (k * k))))


def period_detect(M: IntMatrix2, start: TorusPoint, cap: Optional[int] = None) -> int:
    """
    Least n >= 1 with M^n start = start, by exact iteration.

    Points with common denominator q form a set of (2q)^2 elements permuted by
    M, so the period is at most (2q)^2, the default cap.

    Raises:
        CapExceeded: No recurrence within ``cap`` steps.
    """
    if start.mode is not ScalarMode.EXACT:
        raise DomainError("period detection needs a rational start")
    q = math.lcm(start.phi.denominator, start.psi.denominator)
    bound = (2 * q) ** 2
    limit = bound if cap is None else cap
    t = start
    for step in range(1, limit + 1):
        t = torus_act(M, t)
        if t == start:
            return step
    raise CapExceeded(f"no recurrence within {limit} steps (guaranteed bound is {bound})")


def export_orbit(
    rec: OrbitRecord, destination: Destination, fmt: ExportFormat = ExportFormat.CSV
) -> None:
    """
    Write the orbit as CSV (``n,phi,psi`` or ``n,u,v,w``) or JSON lines to a
    file path (atomically) or an open text stream.

    Raises:
        OSError: The destination cannot be written.
    """
    columns = rec.columns
    rows = rec.rows()
    if fmt is ExportFormat.CSV:
        write_csv(destination, ("n",) + columns, ([i] + list(row) for i, row in enumerate(rows)))
    else:
        write_jsonl(
            destination,
            ({"n": i, **dict(zip(columns, row))} for i, row in enumerate(rows)),
        )
