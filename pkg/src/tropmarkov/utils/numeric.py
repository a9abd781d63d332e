"""Scalar helpers shared by the exact and floating code paths."""

import math
from fractions import Fraction
from typing import Union

from ..dynamics.errors import DomainError

Scalar = Union[Fraction, float]

LN2 = math.log(2.0)

# Number of leading bits kept when taking the logarithm of a huge integer
_TOP_BITS = 64


def big_log(n: int) -> float:
    """
    Natural logarithm of a positive integer of any size.

    For numbers wider than 64 bits only the top 64 bits are passed to
    ``math.log`` and the discarded bits are accounted for as a multiple of
    ln 2, so the cost is O(1) after ``bit_length``.

    Raises:
        DomainError: If ``n`` is not positive.
    """
    if n <= 0:
        raise DomainError(f"logarithm of non-positive integer {n}")
    bits = n.bit_length()
    if bits <= _TOP_BITS:
        return math.log(n)
    shift = bits - _TOP_BITS
    return shift * LN2 + math.log(n >> shift)


def format_scalar(value: Union[int, Scalar]) -> str:
    """Render a scalar for CSV/JSON: rationals as ``p/q``, floats via ``repr``."""
    if isinstance(value, float):
        return repr(value)
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


def parse_scalar(text: str) -> Fraction:
    """Parse ``p/q``, an integer or a finite decimal into an exact ``Fraction``."""
    return Fraction(text.strip())
