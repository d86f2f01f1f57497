"""Limit curves of ``n^(-2/3) log(count)`` as functions of ``alpha = m n^(-1/3)``.

Each curve is defined through a root ``r(alpha)`` of ``r^3 = Psi(alpha r)``
(``2 r^3`` for strict rows) with ``Psi`` increasing from 0 to a finite limit.
The upper bracket comes from that limit; the lower one is found by halving.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import BracketFailure, DomainError, NoConvergence
from .precision import PrecisionContext, at
from .special import eta_d, eta_rowed, zeta3

CURVES = ("bpp", "m_rowed", "strict_rows", "bounded_sym")


def sigma_fn(x, ctx: PrecisionContext | None = None):
    """``sigma(x) = 3 zeta(3) - 6 eta_2 + 4 x eta_2' - x^2 eta_2''``."""
    with at(ctx) as c:
        x = mpmath.mpmathify(x)
        if x <= 0:
            raise DomainError("sigma needs x > 0")
        e0, e1, e2 = (eta_d(2, x, k, c) for k in range(3))
        return 3 * zeta3(c) - 6 * e0 + 4 * x * e1 - x * x * e2


def sigma_prime(x, ctx: PrecisionContext | None = None):
    with at(ctx) as c:
        x = mpmath.mpmathify(x)
        e1, e2, e3 = (eta_d(2, x, k, c) for k in (1, 2, 3))
        return -2 * e1 + 2 * x * e2 - x * x * e3


def r_tilde(x, ctx: PrecisionContext | None = None):
    """``zeta(3) - 2 eta_2(x) + x eta_2'(x)``, increasing from 0 to zeta(3)."""
    with at(ctx) as c:
        return zeta3(c) - 2 * eta_d(2, x, 0, c) + x * eta_d(2, x, 1, c)


def R_fn(alpha, r, ctx: PrecisionContext | None = None):
    """``R(alpha, r) = r^3 - zeta(3) + 2 eta_2(alpha r) - alpha r eta_2'(alpha r)``."""
    with at(ctx) as c:
        r = mpmath.mpmathify(r)
        return r**3 - r_tilde(alpha * r, c)


def _psi(curve: str, x, c: PrecisionContext):
    """Right-hand side Psi(x) and its derivative for each curve."""
    if curve == "bpp":
        e1 = eta_d(2, x, 1, c)
        e2 = eta_d(2, x, 2, c)
        val = zeta3(c) - 2 * eta_d(2, x, 0, c) + x * e1
        return val, -e1 + x * e2
    e0 = eta_rowed(x, 0, c)
    e1 = eta_rowed(x, 1, c)
    e2 = eta_rowed(x, 2, c)
    if curve in ("m_rowed", "strict_rows"):
        return 2 * e0 - x * e1, e1 - x * e2
    # bounded_sym: Psi = 2 eta - 2 x Li2(e^-x) + x^2 log(1 - e^-x)
    e3 = 1 / mpmath.expm1(x)
    return 2 * e0 - 2 * x * e1 + x * x * e2, x * x * e3


def _lead(curve: str) -> int:
    return 2 if curve == "strict_rows" else 1


def _psi_limit(curve: str, c: PrecisionContext):
    z3 = zeta3(c)
    return z3 if curve == "bpp" else 2 * z3


def _f(curve: str, alpha, r, c: PrecisionContext):
    psi, dpsi = _psi(curve, alpha * r, c)
    k = _lead(curve)
    return k * r**3 - psi, 3 * k * r * r - alpha * dpsi


def curve_value(curve: str, alpha, r, ctx: PrecisionContext | None = None):
    """Limit value of ``n^(-2/3) log(count)`` on the given curve."""
    with at(ctx) as c:
        x = alpha * r
        if curve == "bpp":
            return r + (zeta3(c) - 2 * eta_d(2, x, 0, c)) / (2 * r * r)
        e0 = eta_rowed(x, 0, c)
        if curve == "m_rowed":
            return r + e0 / (r * r)
        if curve == "strict_rows":
            return r + e0 / (2 * r * r)
        if curve == "bounded_sym":
            return r + (e0 - x * eta_rowed(x, 1, c)) / (r * r)
        raise DomainError(f"unknown curve {curve!r}")


@dataclass(frozen=True)
class TransitionPoint:
    alpha: object
    r: object
    value: object
    curve: str
    residual: object


def bracket_r(alpha, curve: str, ctx: PrecisionContext | None = None):
    """Bracket ``[lo, hi]`` with ``f(lo) < 0 < f(hi)``."""
    if curve not in CURVES:
        raise DomainError(f"unknown curve {curve!r}")
    with at(ctx) as c:
        alpha = mpmath.mpmathify(alpha)
        if alpha <= 0:
            raise DomainError("alpha must be positive")
        hi = (_psi_limit(curve, c) / _lead(curve)) ** (mpf(1) / 3) * (1 + mpf(10) ** -6)
        if _f(curve, alpha, hi, c)[0] <= 0:
            raise BracketFailure("upper bracket does not bound the root")
        lo = hi / 2
        for _ in range(400):
            if _f(curve, alpha, lo, c)[0] < 0:
                return lo, hi
            hi, lo = lo, lo / 2
        raise BracketFailure("no sign change found while halving")


def _warm_bracket(alpha, curve: str, guess, c: PrecisionContext):
    """Tight bracket around a nearby root (e.g. the previous grid point), or None."""
    lo, hi = guess * mpf("0.95"), guess * mpf("1.05")
    if _f(curve, alpha, lo, c)[0] < 0 < _f(curve, alpha, hi, c)[0]:
        return lo, hi
    return None


def solve_r(
    alpha, curve: str = "bpp", ctx: PrecisionContext | None = None, max_iter: int = 200, guess=None
) -> TransitionPoint:
    """Unique positive root r(alpha) of the curve equation, with its value.

    ``guess`` (a root at a nearby alpha) only shortens the bracketing step.
    """
    if curve not in CURVES:
        raise DomainError(f"unknown curve {curve!r}")
    with at(ctx) as c:
        alpha = mpmath.mpmathify(alpha)
        if alpha <= 0:
            raise DomainError("alpha must be positive")
        br = _warm_bracket(alpha, curve, mpmath.mpmathify(guess), c) if guess else None
        lo, hi = br if br else bracket_r(alpha, curve, c)
        r = guess if br else (lo + hi) / 2
        tol = mpf(10) ** -(c.working_digits + 3)
        for _ in range(max_iter):
            f, df = _f(curve, alpha, r, c)
            if f == 0:
                return TransitionPoint(alpha, r, curve_value(curve, alpha, r, c), curve, abs(f))
            if f < 0:
                lo = r
            else:
                hi = r
            step = f / df if df else mpmath.inf
            # a converged Newton step may sit on a bracket end; accept it first
            if abs(step) <= tol * r:
                r = r - step
                f = _f(curve, alpha, r, c)[0]
                return TransitionPoint(alpha, r, curve_value(curve, alpha, r, c), curve, abs(f))
            nr = r - step
            if not lo < nr < hi:
                nr = (lo + hi) / 2
            if hi - lo <= tol * r:
                r = nr
                f = _f(curve, alpha, r, c)[0]
                return TransitionPoint(alpha, r, curve_value(curve, alpha, r, c), curve, abs(f))
            r = nr
        raise NoConvergence(f"solve_r({curve}) did not converge at alpha={alpha}")


def count_sign_changes(alpha, curve: str = "bpp", samples: int = 400, ctx: PrecisionContext | None = None) -> int:
    """Sign changes of the curve equation on a log grid of r in (0, r_max]."""
    with at(ctx) as c:
        alpha = mpmath.mpmathify(alpha)
        hi = (_psi_limit(curve, c) / _lead(curve)) ** (mpf(1) / 3) * (1 + mpf(10) ** -6)
        lo = hi * mpf(10) ** -8
        ratio = (hi / lo) ** (mpf(1) / (samples - 1))
        signs = []
        r = lo
        for _ in range(samples):
            signs.append(mpmath.sign(_f(curve, alpha, r, c)[0]))
            r *= ratio
        return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)
