"""Exception hierarchy shared by all modules."""


class BandppError(Exception):
    """Base class for errors raised by this package."""


class DomainError(BandppError, ValueError):
    """Argument outside the domain where a function is defined."""


class ConvergenceError(BandppError, ArithmeticError):
    """A series or iteration failed to reach its tail bound within the cap."""


class PoleError(DomainError):
    pass


class CapExceeded(BandppError, ValueError):
    pass


class BudgetExceeded(BandppError, ValueError):
    """Brute-force enumeration asked for a size above the configured ceiling."""


class InternalInconsistency(BandppError, AssertionError):
    """An exactness check failed; indicates a wrong weight table or a bug."""


class BracketFailure(BandppError, ArithmeticError):
    pass


class NoConvergence(BandppError, ArithmeticError):
    pass
