"""Width-m weights, structure constants and the exact identity for log G_m(e^-tau).

Two independent evaluations of ``log G_m(e^-tau)`` are provided:

* ``route="series"``: ``sum_l U_m(e^(-l tau)) / l`` with ``U_m`` rational;
* ``route="identity"``: ``varpi/tau + log(tau)/2 + log g_m + phi*tau
  + kappa_m + lambda_m`` evaluated at the dual argument ``4 pi^2 / tau``.

Their difference (:func:`identity_residual`) is a purely numerical quantity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .counting import band_weight
from .errors import DomainError, InternalInconsistency
from .precision import PrecisionContext, at
from .special import (
    _sum_until,
    bernoulli,
    j_integral,
    log_gamma,
    p_log,
    zeta_constants,
)


def _require_m(m: int) -> None:
    if m < 3:
        raise DomainError("the width-m identity needs m >= 3")


# ---------------------------------------------------------------------------
# weights


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first, den[0] = 1)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q)):
        c = num[i]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise InternalInconsistency("polynomial division left a remainder")
    return q


def w_rational_coeffs(m: int) -> list[int]:
    """Coefficients of ``z^3 (1-z^(m-1))(1-z^(m-2)) / ((1+z)(1-z)^2)``."""
    _require_m(m)
    a = [1] + [0] * (m - 2) + [-1]
    b = [1] + [0] * (m - 3) + [-1]
    num = [0, 0, 0] + _poly_mul(a, b)
    den = _poly_mul([1, 1], [1, -2, 1])
    return _poly_div_exact(num, den)


def table_moments(m: int) -> tuple[int, int, int, int]:
    """Closed forms for ``mu_k = sum_j j^k w_m(j)``, k = 0..3."""
    return (
        (m - 1) * (m - 2) // 2,
        m * (m - 1) * (m - 2) // 2,
        m * (m - 1) * (m - 2) * (7 * m - 3) // 12,
        3 * m**2 * (m - 1) ** 2 * (m - 2) // 4,
    )


@dataclass(frozen=True)
class BandedWeights:
    m: int
    w: tuple[int, ...]  # w[j - 1] = w_m(j), 1 <= j < 2m
    mu: tuple[int, int, int, int]

    def weight(self, j: int) -> int:
        return self.w[j - 1]


def banded_weights(m: int) -> BandedWeights:
    """Weight table for width m, checked against its closed forms on construction."""
    _require_m(m)
    w = tuple(band_weight(m, j) for j in range(1, 2 * m))
    if w != tuple(reversed(w)):
        raise InternalInconsistency("w_m is not symmetric")
    mu = tuple(sum(j**k * wj for j, wj in enumerate(w, start=1)) for k in range(4))
    if mu != table_moments(m):
        raise InternalInconsistency(f"moments {mu} disagree with closed forms")
    poly = w_rational_coeffs(m)
    poly = poly + [0] * (2 * m - len(poly))
    if tuple(poly[1 : 2 * m]) != w or poly[0] != 0:
        raise InternalInconsistency("W_m rational form disagrees with w table")
    return BandedWeights(m, w, mu)


@dataclass(frozen=True)
class StructureConstants:
    m: int
    log_g: mpf
    varpi_over_pi2: Fraction
    phi: Fraction

    @property
    def g(self) -> mpf:
        return mpmath.exp(self.log_g)

    @property
    def varpi(self) -> mpf:
        return mpmath.pi**2 * self.varpi_over_pi2.numerator / self.varpi_over_pi2.denominator

    @property
    def phi_mp(self) -> mpf:
        return mpf(self.phi.numerator) / self.phi.denominator


def varpi_over_pi2(m: int) -> Fraction:
    return Fraction(1, 24) * (m + 1 + Fraction(2, m))


def phi_const(m: int) -> Fraction:
    return Fraction(m**3 - 7 * m + 2, 96)


def log_g(m: int, ctx: PrecisionContext | None = None) -> mpf:
    """``log g_m = -(m^2-3m+4)/4 log(2 pi) + sum_j w_m(j) log Gamma(j / 2m)``."""
    _require_m(m)
    with at(ctx) as c:
        bw = banded_weights(m)
        terms = [
            wj * log_gamma(mpf(j) / (2 * m), c)
            for j, wj in enumerate(bw.w, start=1)
            if wj
        ]
        terms.append(-mpf(m * m - 3 * m + 4) / 4 * mpmath.log(2 * mpmath.pi))
        return mpmath.fsum(terms)


def structure_constants(m: int, ctx: PrecisionContext | None = None) -> StructureConstants:
    _require_m(m)
    return StructureConstants(m, log_g(m, ctx), varpi_over_pi2(m), phi_const(m))


def log_gm_expansion(m: int, terms: int = 0, ctx: PrecisionContext | None = None) -> mpf:
    """Large-m expansion of ``log g_m`` truncated after ``terms`` correction terms.

    The j-th correction is
    ``-(4^j - 2) B_2j B_2j+2 (-pi^2)^j / (8 j (j+1) (2j)!) m^-2j``; the
    ``4^j - 2`` factor was fitted against exact ``log g_m`` up to j = 4.
    The series is asymptotic, so ``terms`` is capped at 5.
    """
    if not 0 <= terms <= 5:
        raise DomainError("terms must be in 0..5")
    with at(ctx) as c:
        zc = zeta_constants(c)
        pi = mpmath.pi
        c1 = (
            zc["zeta_prime_minus1"] / 2
            - mpf(11) / 24 * mpmath.log(pi)
            - mpf(7) / 24 * mpmath.log(2)
        )
        val = -7 * zc["zeta3"] / (8 * pi**2) * m**2 + mpf(11) / 24 * mpmath.log(m) + c1
        for j in range(1, terms + 1):
            bb = bernoulli(2 * j) * bernoulli(2 * j + 2)
            coef = mpf(bb.numerator) / bb.denominator
            val -= (4**j - 2) * coef * (-pi**2) ** j / (8 * j * (j + 1) * mpmath.factorial(2 * j)) * mpf(m) ** (-2 * j)
        return val


# ---------------------------------------------------------------------------
# kappa, lambda and the two routes


@dataclass(frozen=True)
class KappaLambda:
    kappa: object
    lam: object


def kappa_lambda(m: int, tau, ctx: PrecisionContext | None = None) -> KappaLambda:
    """``kappa_m`` and ``lambda_m`` at ``z = e^(-4 pi^2 / tau)``.

    ``lambda_m = -(1/2m) sum_{1 <= l <= m} c_l J(b_l, tau / 4 pi^2)`` with
    ``b_l = (2l-1)/2m`` and ``c_l = cos(2 b_l pi) / (1 - cos(2 b_l pi))``.
    """
    _require_m(m)
    with at(ctx) as c:
        tau = mpmath.mpmathify(tau)
        if mpmath.re(tau) <= 0:
            raise DomainError("need Re tau > 0")
        pi2 = mpmath.pi**2
        w = 4 * pi2 / tau
        kappa = (
            mpf(m + 2) / 4 * p_log(w, "auto", 0, c)
            + p_log(w / m, "auto", 0, c) / 2
            - p_log(w / 2, "auto", 0, c) / 2
        )
        tp = tau / (4 * pi2)
        # l runs through m: the l = m term pairs with l = 1 (b -> 1 - b) and
        # is needed for exactness once tau is not small
        parts = []
        for ell in range(1, m + 1):
            theta = (2 * ell - 1) * mpmath.pi / m
            cs = mpmath.cos(theta)
            b = mpf(2 * ell - 1) / (2 * m)
            parts.append(cs / (1 - cs) * j_integral(b, tp, c))
        lam = -mpmath.fsum(parts) / (2 * m)
        return KappaLambda(kappa, lam)


def u_rational(m: int, z):
    """``U_m(z) = z/(1-z) + z^3 (1-z^(m-2))(1-z^(m-1)) / ((1-z^2m)(1-z)(1-z^2))``.

    For ``m <= 2`` only the first term remains.
    """
    first = z / (1 - z)
    if m <= 2:
        return first
    return first + z**3 * (1 - z ** (m - 2)) * (1 - z ** (m - 1)) / (
        (1 - z ** (2 * m)) * (1 - z) * (1 - z * z)
    )


def _series_route(m: int, tau, c: PrecisionContext):
    r = mpmath.exp(-mpmath.re(tau))
    q1 = mpmath.exp(-tau)
    state = {"q": mpf(1), "n": 0}
    mm = max(m, 1)

    def term(ell):
        state["q"] *= q1
        state["n"] = ell
        return u_rational(m, state["q"]) / ell

    def tail(L):
        # U_m has coefficients e_k <= m, so |U_m(z)| <= m|z|/(1-|z|)
        rl = r ** (L + 1)
        return mm * rl / ((L + 1) * (1 - rl) * (1 - r))

    return _sum_until(term, tail, c.tol), state["n"]


def log_Gm(m: int, tau, route: str = "identity", ctx: PrecisionContext | None = None):
    """``log G_m(e^-tau)`` by the exact identity or by the U_m series."""
    with at(ctx) as c:
        tau = mpmath.mpmathify(tau)
        if mpmath.re(tau) <= 0:
            raise DomainError("need Re tau > 0")
        if m < 1:
            raise DomainError("need m >= 1")
        if route == "series":
            return _series_route(m, tau, c)[0]
        if route != "identity":
            raise DomainError(f"unknown route {route!r}")
        _require_m(m)
        sc = structure_constants(m, c)
        kl = kappa_lambda(m, tau, c)
        return (
            sc.varpi / tau
            + mpmath.log(tau) / 2
            + sc.log_g
            + sc.phi_mp * tau
            + kl.kappa
            + kl.lam
        )


@dataclass(frozen=True)
class IdentityReport:
    m: int
    tau: object
    lhs: object
    rhs: object
    rel_residual: object
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        def s(x):
            return mpmath.nstr(x, 20)

        tau = mpmath.mpmathify(self.tau)
        return {
            "m": self.m,
            "re_tau": s(mpmath.re(tau)),
            "im_tau": s(mpmath.im(tau)),
            "lhs": s(self.lhs),
            "rhs": s(self.rhs),
            "rel_residual": mpmath.nstr(self.rel_residual, 6),
            **self.diagnostics,
        }


def identity_residual(m: int, tau, ctx: PrecisionContext | None = None) -> IdentityReport:
    """Compare the series route (lhs) with the identity route (rhs)."""
    _require_m(m)
    with at(ctx) as c:
        tau = mpmath.mpmathify(tau)
        lhs, n_terms = _series_route(m, tau, c)
        rhs = log_Gm(m, tau, "identity", c)
        rel = abs(lhs - rhs) / max(1, abs(lhs))
        return IdentityReport(m, tau, lhs, rhs, rel, {"series_terms": n_terms})
