"""
Continued fractions as infinite paths in the Farey tree, SL2(N) path
matrices and the three estimators of the Lyapunov exponent Lambda(xi).

Convention: [a0; a1, a2, ...] is the word R^a0 L^a1 R^a2 ...; the golden
ratio [1; 1, 1, ...] is the zig-zag word RLRL...
"""

import math
from dataclasses import dataclass, field
from itertools import chain, cycle
from typing import Dict, Iterator, List, Optional, Tuple

from .classical import MAX_MARKOV_DEPTH, euclid_path, loglog_growth, markov_path
from .errors import DepthExceeded, DomainError, InsufficientDigits, NotNeighbors
from .torus_fold import IntMatrix2, log_spectral_radius
from .words import PathWord
from ..utils.numeric import big_log

L_MATRIX = IntMatrix2(1, 0, 1, 1)
R_MATRIX = IntMatrix2(1, 1, 0, 1)

_TREE_MATRICES = {"L": L_MATRIX, "R": R_MATRIX}


@dataclass(frozen=True)
class FareyFraction:
    """p/q in lowest terms with p, q >= 0; 1/0 stands for infinity."""
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0 or (self.p == 0 and self.q == 0):
            raise DomainError(f"invalid Farey fraction {self.p}/{self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"{self.p}/{self.q} is not in lowest terms")

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def _are_neighbors(a: FareyFraction, b: FareyFraction) -> bool:
    return abs(a.p * b.q - b.p * a.q) == 1


def farey_mediant(a: FareyFraction, b: FareyFraction) -> FareyFraction:
    """
    (p + q) / (r + s) for Farey neighbours p/r and q/s.

    Raises:
        NotNeighbors: If |ps - qr| != 1.
    """
    if not _are_neighbors(a, b):
        raise NotNeighbors(f"{a} and {b} are not Farey neighbours")
    return FareyFraction(a.p + b.p, a.q + b.q)


def farey_parents(w: PathWord) -> Tuple[FareyFraction, FareyFraction]:
    """
    Walk the Farey tree from the bounds 1/0 and 0/1 and return (upper, lower).

    R raises the lower bound to the mediant, L lowers the upper bound. The
    vertex reached by ``w`` is the mediant of the two.
    """
    upper, lower = FareyFraction(1, 0), FareyFraction(0, 1)
    for letter in w:
        mediant = farey_mediant(lower, upper)
        if letter == "R":
            lower = mediant
        else:
            upper = mediant
    return upper, lower


# ==============================================================================
# Continued fractions
# ==============================================================================

@dataclass(frozen=True)
class ContinuedFraction:
    """[a0; a1, ..., ak, (p1, ..., pm)] with an optional periodic tail."""
    digits: Tuple[int, ...] = ()
    period: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.digits and not self.period:
            raise DomainError("a continued fraction needs at least one digit")
        for i, a in enumerate(self.digits):
            if a < 0 or (a == 0 and i > 0):
                raise DomainError(f"digit {a} at position {i}: only a0 may be 0, none negative")
        # Periodic digits recur at positions >= 1, so none of them may be 0
        for a in self.period:
            if a <= 0:
                raise DomainError(f"periodic digit {a}: repeating digits must be positive")

    def iter_digits(self) -> Iterator[int]:
        """All digits; infinite when periodic."""
        if self.period:
            return chain(self.digits, cycle(self.period))
        return iter(self.digits)

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        """
        Parse ``[a0;a1,a2,...]`` with an optional trailing ``(...)`` periodic
        part, e.g. ``[1;(1)]`` for the golden ratio or ``[0;]`` for zero.
        """
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"continued fraction must look like [a0;a1,...], got '{text}'")
        body = body[1:-1]
        period_text: Optional[str] = None
        if "(" in body:
            start = body.index("(")
            if not body.endswith(")"):
                raise ValueError(f"periodic part must close the continued fraction: '{text}'")
            body, period_text = body[:start], body[start + 1:-1]

        def tokens(chunk: str) -> Tuple[int, ...]:
            return tuple(int(tok) for tok in chunk.replace(";", ",").split(",") if tok.strip())

        digits = tokens(body)
        period = tokens(period_text) if period_text is not None else ()
        if period_text is not None and not period:
            raise ValueError(f"empty periodic part in '{text}'")
        return cls(digits, period)

    def __str__(self) -> str:
        flat = list(self.digits)
        head = str(flat[0]) if flat else ""
        rest = [str(a) for a in flat[1:]]
        if self.period:
            rest.append("(" + ",".join(str(a) for a in self.period) + ")")
        if not flat:
            return "[" + rest[-1] + "]"
        return f"[{head};{','.join(rest)}]"


def reciprocal_cf(cf: ContinuedFraction) -> ContinuedFraction:
    """Continued fraction of 1/xi."""
    if cf.digits and cf.digits[0] == 0:
        rest = cf.digits[1:]
        if not rest and not cf.period:
            raise DomainError("1/0 has no finite continued fraction")
        return ContinuedFraction(rest, cf.period)
    return ContinuedFraction((0,) + cf.digits, cf.period)


def shift_cf(cf: ContinuedFraction) -> ContinuedFraction:
    """Continued fraction of xi + 1."""
    if cf.digits:
        return ContinuedFraction((cf.digits[0] + 1,) + cf.digits[1:], cf.period)
    rotated = cf.period[1:] + cf.period[:1]
    return ContinuedFraction((cf.period[0] + 1,), rotated)


def cf_to_word(cf: ContinuedFraction, n: int, extend: bool = False) -> PathWord:
    """
    First ``n`` letters of R^a0 L^a1 R^a2 ...

    With ``extend`` a finite continued fraction is read as followed by an
    infinite digit: the letter of the next family (the one after the last
    digit) repeats forever, so [2; 3] extends to RRLLLRR...

    Raises:
        InsufficientDigits: A finite, non-extended cf gives fewer than ``n`` letters.
    """
    if n < 0:
        raise DomainError(f"path length must be non-negative, got {n}")
    letters: List[str] = []
    index = 0
    for index, a in enumerate(cf.iter_digits()):
        if len(letters) >= n:
            break
        letters.extend(("R" if index % 2 == 0 else "L") * a)
    else:
        if len(letters) < n:
            if not extend:
                raise InsufficientDigits(
                    f"{cf} spells only {len(letters)} letters, {n} requested"
                )
            terminal = "R" if (index + 1) % 2 == 0 else "L"
            letters.extend(terminal * (n - len(letters)))
    return PathWord("".join(letters[:n]))


# ==============================================================================
# Path matrices and Lyapunov estimators
# ==============================================================================

def prefix_matrices(w: PathWord) -> Iterator[IntMatrix2]:
    """Path matrices of the prefixes of ``w`` of length 1, 2, ..., len(w)."""
    M = IntMatrix2.identity()
    for letter in w:
        M = M @ _TREE_MATRICES[letter]
        yield M


def path_matrix(w: PathWord) -> IntMatrix2:
    """Product of L = [[1,0],[1,1]] and R = [[1,1],[0,1]] along ``w``, left to right."""
    M = IntMatrix2.identity()
    for letter in w:
        M = M @ _TREE_MATRICES[letter]
    return M


@dataclass(frozen=True)
class LambdaSeries:
    """Finite-n values of a Lyapunov estimator and a limsup surrogate."""
    estimator: str
    values: Tuple[float, ...]

    @property
    def tail_estimate(self) -> float:
        """Max over the last quarter of the computed indices (at least one value)."""
        if not self.values:
            raise DomainError("no values to estimate from")
        width = max(1, len(self.values) // 4)
        return max(self.values[-width:])

    def at(self, k: int) -> float:
        """Value at index k (1-based)."""
        return self.values[k - 1]

    def rows(self) -> List[Tuple[int, float]]:
        return list(enumerate(self.values, start=1))


def _check_length(n: int) -> None:
    if n < 1:
        raise DomainError(f"number of steps must be at least 1, got {n}")


def lambda_via_matrices(cf: ContinuedFraction, n: int, extend: bool = False) -> LambdaSeries:
    """ln rho(A_k) / k for the path matrices A_k of the first k letters, k = 1..n."""
    _check_length(n)
    return lambda_via_word_matrices(cf_to_word(cf, n, extend=extend), n)


def lambda_via_word_matrices(w: PathWord, n: int) -> LambdaSeries:
    """Matrix estimator for an explicit path word instead of a continued fraction."""
    _check_length(n)
    if len(w) < n:
        raise DomainError(f"word has {len(w)} letters, {n} requested")
    values = tuple(
        log_spectral_radius(M) / k for k, M in enumerate(prefix_matrices(w.prefix(n)), start=1)
    )
    return LambdaSeries("matrices", values)


def lambda_via_euclid(w: PathWord, n: int) -> LambdaSeries:
    """ln c_k / k with c_k the largest Euclid entry after k letters, k = 1..n."""
    _check_length(n)
    if len(w) < n:
        raise DomainError(f"word has {len(w)} letters, {n} requested")
    triples = euclid_path(w.prefix(n))[1:]
    values = tuple(big_log(t.largest) / k for k, t in enumerate(triples, start=1))
    return LambdaSeries("euclid", values)


def lambda_via_markov(w: PathWord, n: int, max_depth: int = MAX_MARKOV_DEPTH) -> LambdaSeries:
    """
    ln(ln z_k) / k with z_k the largest Markov entry after k letters, k = 1..n.

    Raises:
        DepthExceeded: If ``n`` exceeds ``max_depth``.
    """
    _check_length(n)
    if n > max_depth:
        raise DepthExceeded(f"Markov estimator is capped at depth {max_depth}, {n} requested")
    if len(w) < n:
        raise DomainError(f"word has {len(w)} letters, {n} requested")
    values = tuple(loglog_growth(markov_path(w.prefix(n), max_depth)[1:]))
    return LambdaSeries("markov", values)


def invariance_gaps(cf: ContinuedFraction, n: int = 200, extend: bool = False) -> Dict[str, float]:
    """
    Approximate PGL2(Z) invariance of Lambda at finite n: tail-estimate gaps
    between xi and 1/xi and between xi and xi + 1 (matrix estimator).
    """
    base = lambda_via_matrices(cf, n, extend).tail_estimate
    return {
        "reciprocal": abs(base - lambda_via_matrices(reciprocal_cf(cf), n, extend).tail_estimate),
        "shift": abs(base - lambda_via_matrices(shift_cf(cf), n, extend).tail_estimate),
    }

