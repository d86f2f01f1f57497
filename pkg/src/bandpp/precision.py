"""Working-precision configuration for the mpmath-backed numerics."""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass

import mpmath

GUARD_DIGITS = 12


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision and the absolute series-truncation threshold.

    ``series_tail_tolerance`` defaults to ``10**-(working_digits + 5)``.
    """

    working_digits: int = 50
    series_tail_tolerance: float | None = None

    def __post_init__(self):
        if self.working_digits < 15:
            raise ValueError("working_digits must be >= 15")

    @property
    def tol(self) -> mpmath.mpf:
        if self.series_tail_tolerance is not None:
            return mpmath.mpf(self.series_tail_tolerance)
        return mpmath.mpf(10) ** (-(self.working_digits + 5))

    @property
    def dps(self) -> int:
        """Internal mpmath precision: working digits plus guard digits."""
        return self.working_digits + GUARD_DIGITS

    def workdps(self, extra: int = 0):
        return mpmath.workdps(self.dps + extra)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.working_digits)


DEFAULT = PrecisionContext()


def default_context() -> PrecisionContext:
    """Context honouring the ``PPA_PRECISION`` environment variable."""
    raw = os.environ.get("PPA_PRECISION")
    if raw is None:
        return DEFAULT
    return PrecisionContext(int(raw))


def resolve(ctx: PrecisionContext | None) -> PrecisionContext:
    return DEFAULT if ctx is None else ctx


@contextlib.contextmanager
def at(ctx: PrecisionContext | None, extra: int = 0):
    ctx = resolve(ctx)
    with mpmath.workdps(ctx.dps + extra):
        yield ctx
