class TropMarkovError(Exception):
    """Base class for every error raised by the dynamics package."""
    pass


class DomainError(TropMarkovError):
    """Raised when an argument lies outside the domain of a formula."""
    pass


class NotDivisible(TropMarkovError):
    """Raised when the ratio form of the Vieta move meets a non-exact division."""
    pass


class NotOnSurface(TropMarkovError):
    """Raised when a point is required to lie on the tetrahedron surface but does not."""
    pass


class InvalidDeterminant(TropMarkovError):
    """Raised when a 2x2 integer matrix is not unimodular (det not +1 or -1)."""
    pass


class NotHyperbolic(TropMarkovError):
    """Raised when a formula only holds for hyperbolic SL2(Z) elements."""
    pass


class NotNeighbors(TropMarkovError):
    """Raised when two fractions are not Farey neighbours."""
    pass


class InsufficientDigits(TropMarkovError):
    """Raised when a finite continued fraction cannot supply the requested path length."""
    pass


class DepthExceeded(TropMarkovError):
    """Raised when an exact big-integer tree walk is asked to go deeper than its cap."""
    pass


class CapExceeded(TropMarkovError):
    """Raised when a period search stops at its iteration cap without recurrence."""
    pass


class InvalidWord(TropMarkovError, ValueError):
    """Raised when a word contains letters outside its alphabet."""
    pass
