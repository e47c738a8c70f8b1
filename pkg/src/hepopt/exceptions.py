class HepoptError(Exception):
    """Base class for errors raised by this package."""


class ParseError(HepoptError, ValueError):
    """A profile or front file could not be parsed."""


class ValidationError(HepoptError, ValueError):
    """Input data violates a model invariant."""


class Infeasible(HepoptError):
    """No workload distribution sums to the requested size.

    This is an outcome rather than a fault: the tabulated sizes simply
    cannot be combined into ``n``.
    """

    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"no distribution of workload {n} exists")


class LimitExceeded(HepoptError):
    """Brute-force enumeration would exceed the configured limit."""


class BrokenChain(HepoptError, RuntimeError):
    """A memo child reference resolved to nothing (internal bug)."""


class DegenerateFront(HepoptError, ValueError):
    """A front has too few points for the requested analysis."""


class GridMismatch(HepoptError, ValueError):
    """Profiles that must share a size grid do not."""


class ZeroMean(HepoptError, ZeroDivisionError):
    """Relative precision is undefined for a zero sample mean."""
