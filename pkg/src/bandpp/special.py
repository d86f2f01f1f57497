"""High-precision special functions used by the identity and saddle modules.

Everything is evaluated with mpmath numbers at ``PrecisionContext.dps``.
Series are truncated only when an explicit analytic majorant of the
remaining tail drops below the context tolerance; a fixed iteration cap
turns a hopeless case into :class:`ConvergenceError` instead of a hang.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable

import mpmath
from mpmath import mpf

from .errors import CapExceeded, ConvergenceError, DomainError, PoleError
from .precision import PrecisionContext, at, resolve

BERNOULLI_CAP = 200
EM_MAX_TERMS = 60
ITER_CAP = 2_000_000

# |f^(k)(x)| <= _DERIV_CONST[k] |q| / (1 - |q|)^(k+1) for f = q/(1 +- q), q = e^-x
_DERIV_CONST = (1, 1, 2, 6)


def _num(x):
    return mpmath.mpmathify(x)


def _check_deriv(deriv: int, top: int = 3) -> None:
    if not 0 <= deriv <= top:
        raise DomainError(f"derivative order must be in 0..{top}")


def _pg_tail(L: int, a: int, r) -> mpf:
    """Majorant of ``sum_{l > L} l^a r^l`` for ``0 <= r < 1``."""
    if r == 0:
        return mpf(0)
    ratio = r * (mpf(L + 2) / (L + 1)) ** a if a > 0 else r
    if ratio >= 1:
        return mpmath.inf
    return mpf(L + 1) ** a * r ** (L + 1) / (1 - ratio)


def _fermi(q, k: int):
    """k-th derivative of h(x) = e^-x / (1 + e^-x), written in q = e^-x."""
    if k == 0:
        return q / (1 + q)
    if k == 1:
        return -q / (1 + q) ** 2
    if k == 2:
        return q * (1 - q) / (1 + q) ** 3
    return -q * (1 - 4 * q + q * q) / (1 + q) ** 4


def _bose(q, k: int):
    """k-th derivative of g(x) = e^-x / (1 - e^-x), written in q = e^-x."""
    if k == 0:
        return q / (1 - q)
    if k == 1:
        return -q / (1 - q) ** 2
    if k == 2:
        return q * (1 + q) / (1 - q) ** 3
    return -q * (1 + 4 * q + q * q) / (1 - q) ** 4


def _sum_until(term: Callable[[int], object], tail: Callable[[int], mpf], tol, start: int = 1):
    """Add ``term(l)`` for l = start, start+1, ... until ``tail(l)`` < tol scale."""
    s = 0
    ell = start
    while True:
        t = term(ell)
        s += t
        # the majorant covers the next term too, so skip it while terms are large
        if abs(t) < tol * max(1, abs(s)) * 1e6 and tail(ell) < tol * max(1, abs(s)):
            return s
        ell += 1
        if ell - start > ITER_CAP:
            raise ConvergenceError("series tail bound not reached within the iteration cap")


# ---------------------------------------------------------------------------
# exact tables


_BERN: list[Fraction] = [Fraction(1)]


def _bernoulli_number(j: int) -> Fraction:
    if j > BERNOULLI_CAP:
        raise CapExceeded(f"Bernoulli index {j} above cap {BERNOULLI_CAP}")
    while len(_BERN) <= j:
        n = len(_BERN)
        acc = sum(comb(n + 1, k) * _BERN[k] for k in range(n))
        _BERN.append(-acc / (n + 1))
    return _BERN[j]


def bernoulli(j: int, x=None):
    """Bernoulli number ``B_j`` (with ``B_1 = -1/2``) or polynomial ``B_j(x)``.

    Rational ``x`` (int or Fraction) gives an exact Fraction; anything else
    is evaluated with mpmath.
    """
    if j < 0:
        raise DomainError("Bernoulli index must be >= 0")
    if j > BERNOULLI_CAP:
        raise CapExceeded(f"Bernoulli index {j} above cap {BERNOULLI_CAP}")
    if x is None:
        return _bernoulli_number(j)
    coeffs = [comb(j, k) * _bernoulli_number(k) for k in range(j + 1)]
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return sum(c * x ** (j - k) for k, c in enumerate(coeffs))
    x = _num(x)
    # Horner in x over descending powers
    acc = 0
    for c in coeffs:
        acc = acc * x + mpf(c.numerator) / c.denominator
    return acc


@lru_cache(maxsize=None)
def _stirling_row(k: int) -> tuple[int, ...]:
    if k == 0:
        return (1,)
    prev = _stirling_row(k - 1) + (0,)
    return tuple((j * prev[j] if j else 0) + (prev[j - 1] if j else 0) for j in range(k + 1))


def stirling2(k: int, j: int) -> int:
    """Stirling number of the second kind ``S(k, j)``."""
    if k < 0 or j < 0:
        raise DomainError("Stirling indices must be nonnegative")
    if j > k:
        return 0
    return _stirling_row(k)[j]


# ---------------------------------------------------------------------------
# zeta, gamma


def hurwitz_zeta(s, b, s_deriv: int = 0, ctx: PrecisionContext | None = None):
    """Hurwitz zeta ``zeta(s, b)`` (or its s-derivative) by Euler-Maclaurin."""
    if s_deriv not in (0, 1):
        raise DomainError("s_deriv must be 0 or 1")
    with at(ctx) as c:
        s, b = _num(s), _num(b)
        if mpmath.im(b) != 0 or b <= 0:
            raise DomainError("b must be a positive real")
        if s == 1:
            raise PoleError("zeta(s, b) has a pole at s = 1")
        tol = c.tol
        n_head = int(c.dps + abs(s)) + 10
        a = n_head + b
        la = mpmath.log(a)
        if s_deriv == 0:
            head = mpmath.fsum((k + b) ** (-s) for k in range(n_head))
            total = head + a ** (1 - s) / (s - 1) + a ** (-s) / 2
        else:
            head = -mpmath.fsum(mpmath.log(k + b) * (k + b) ** (-s) for k in range(n_head))
            total = (
                head
                - la * a ** (1 - s) / (s - 1)
                - a ** (1 - s) / (s - 1) ** 2
                - la * a ** (-s) / 2
            )
        # rising factorial (s)_{2j-1} and its s-derivative
        poch, dpoch = s, mpf(1)
        for j in range(1, EM_MAX_TERMS + 1):
            if j > 1:
                for i in (2 * j - 3, 2 * j - 2):
                    poch, dpoch = poch * (s + i), dpoch * (s + i) + poch
            b2j = _bernoulli_number(2 * j)
            coef = mpf(b2j.numerator) / b2j.denominator / mpmath.factorial(2 * j)
            power = a ** (-s - 2 * j + 1)
            if s_deriv == 0:
                t = coef * poch * power
            else:
                t = coef * (dpoch - poch * la) * power
            total += t
            # next Euler-Maclaurin term bounds the remainder
            if abs(t) * abs(s + 2 * j) / a < tol * max(1, abs(total)) and j > 1:
                return total
        raise ConvergenceError("Euler-Maclaurin did not reach tolerance")


def _zeta3(ctx: PrecisionContext):
    # (5/2) sum (-1)^(k+1) / (k^3 C(2k, k)); alternating, so next term bounds the tail
    with at(ctx) as c:
        s = mpf(0)
        k = 1
        while True:
            t = mpf(1) / (mpf(k) ** 3 * comb(2 * k, k))
            s += t if k % 2 else -t
            if t < c.tol:
                return mpf(5) / 2 * s
            k += 1


@lru_cache(maxsize=16)
def _constants(dps_key: int, ctx: PrecisionContext) -> dict:
    with at(ctx):
        return {
            "zeta2": mpmath.pi**2 / 6,
            "zeta3": _zeta3(ctx),
            "zeta_prime_minus1": hurwitz_zeta(-1, 1, 1, ctx),
        }


def zeta_constants(ctx: PrecisionContext | None = None) -> dict:
    """``{zeta2, zeta3, zeta_prime_minus1}`` at the context precision (cached)."""
    c = resolve(ctx)
    return _constants(c.dps, c)


def zeta3(ctx: PrecisionContext | None = None):
    return zeta_constants(ctx)["zeta3"]


def _raise_argument(x, c: PrecisionContext):
    """Shift count so that |x + n| is large enough for the Stirling series."""
    target = c.dps + 10
    n = 0
    while abs(x + n) < target:
        n += 1
    return n


def log_gamma(x, ctx: PrecisionContext | None = None):
    """``log Gamma(x)`` for ``Re x > 0`` (principal branch)."""
    with at(ctx) as c:
        x = _num(x)
        if mpmath.re(x) <= 0:
            raise DomainError("log_gamma requires Re x > 0")
        n = _raise_argument(x, c)
        y = x + n
        val = (y - mpf(1) / 2) * mpmath.log(y) - y + mpmath.log(2 * mpmath.pi) / 2
        y2 = y * y
        ypow = y
        for j in range(1, EM_MAX_TERMS + 1):
            b2j = _bernoulli_number(2 * j)
            t = mpf(b2j.numerator) / b2j.denominator / (2 * j * (2 * j - 1) * ypow)
            val += t
            if abs(t) < c.tol * max(1, abs(val)):
                break
            ypow *= y2
        else:
            raise ConvergenceError("Stirling series did not reach tolerance")
        if isinstance(x, mpf):
            # one log of the product; safe on the real axis
            prod = mpf(1)
            for k in range(n):
                prod *= x + k
            return val - mpmath.log(prod)
        return val - mpmath.fsum(mpmath.log(x + k) for k in range(n))


def digamma(x, ctx: PrecisionContext | None = None):
    """Digamma ``psi(x)`` for ``Re x > 0``."""
    with at(ctx) as c:
        x = _num(x)
        if mpmath.re(x) <= 0:
            raise DomainError("digamma requires Re x > 0")
        n = _raise_argument(x, c)
        y = x + n
        val = mpmath.log(y) - 1 / (2 * y)
        y2 = y * y
        ypow = y2
        for j in range(1, EM_MAX_TERMS + 1):
            b2j = _bernoulli_number(2 * j)
            t = mpf(b2j.numerator) / b2j.denominator / (2 * j * ypow)
            val -= t
            if abs(t) < c.tol * max(1, abs(val)):
                break
            ypow *= y2
        else:
            raise ConvergenceError("asymptotic digamma series did not reach tolerance")
        return val - mpmath.fsum(1 / (x + k) for k in range(n))


# ---------------------------------------------------------------------------
# eta_d, varphi_d, xi_d


def _eta_series(d: int, z, deriv: int, c: PrecisionContext):
    r = mpmath.exp(-mpmath.re(z))
    q1 = mpmath.exp(-z)
    a = 1 - 2 * d + deriv
    state = {"q": 1}

    def term(ell):
        state["q"] *= q1
        return mpf(ell) ** a * _fermi(state["q"], deriv)

    def tail(L):
        return _DERIV_CONST[deriv] * _pg_tail(L, a, r) / (1 - r ** (L + 1)) ** (deriv + 1)

    return _sum_until(term, tail, c.tol)


def _varphi_series(d: int, z, deriv: int, c: PrecisionContext):
    """k-th z-derivative of varphi_d via the chain rule through y = c_l / z."""
    inv = 1 / z
    r = mpmath.exp(-2 * mpmath.pi**2 * mpmath.re(inv))
    if r >= 1:
        raise DomainError("varphi_d requires Re(1/z) > 0")
    q1 = mpmath.exp(-2 * mpmath.pi**2 * inv)
    q2 = q1 * q1
    a = 1 - 2 * d + deriv
    two_pi2 = 2 * mpmath.pi**2
    az = abs(z)
    # crude constant so that |summand_l| <= big * j^a * r^j / (1 - r)^(deriv+1), j = 2l - 1
    big = [
        mpf(1),
        two_pi2 / az**2,
        2 * two_pi2**2 / az**4 + 2 * two_pi2 / az**3,
        6 * two_pi2**3 / az**6 + 12 * two_pi2**2 / az**5 + 6 * two_pi2 / az**4,
    ][deriv]
    state = {"q": q1 / q2}

    def term(ell):
        j = 2 * ell - 1
        state["q"] *= q2
        q = state["q"]
        cj = two_pi2 * j
        if deriv == 0:
            v = _bose(q, 0)
        elif deriv == 1:
            v = -_bose(q, 1) * cj / z**2
        elif deriv == 2:
            v = _bose(q, 2) * cj**2 / z**4 + _bose(q, 1) * 2 * cj / z**3
        else:
            v = (
                -_bose(q, 3) * cj**3 / z**6
                - 6 * _bose(q, 2) * cj**2 / z**5
                - 6 * _bose(q, 1) * cj / z**4
            )
        return mpf(j) ** (1 - 2 * d) * v

    def tail(L):
        return big * _pg_tail(2 * L - 1, a, r) / (1 - r) ** (deriv + 1)

    return _sum_until(term, tail, c.tol)


def varphi_d(d: int, z, ctx: PrecisionContext | None = None, deriv: int = 0):
    """``varphi_d(z) = sum (2l-1)^(1-2d) e^(-2(2l-1)pi^2/z) / (1 - e^(...))``."""
    if d not in (0, 1, 2):
        raise DomainError("varphi_d is provided for d in 0..2")
    _check_deriv(deriv)
    with at(ctx) as c:
        z = _num(z)
        if mpmath.re(z) <= 0:
            raise DomainError("varphi_d requires Re z > 0")
        return _varphi_series(d, z, deriv, c)


def _reflect_parts(d: int, z, zeta3_):
    """Derivatives 0..3 of A_d and B_d in eta_d = A_d + B_d * varphi_d."""
    pi2 = mpmath.pi**2
    if d == 2:
        a = [
            zeta3_ / 2 - pi2 * z / 24 + 7 * zeta3_ * z**2 / (8 * pi2) - z**3 / 96,
            -pi2 / 24 + 7 * zeta3_ * z / (4 * pi2) - z**2 / 32,
            7 * zeta3_ / (4 * pi2) - z / 16,
            mpf(-1) / 16,
        ]
        b = [2 * z**2 / pi2, 4 * z / pi2, 4 / pi2, mpf(0)]
    elif d == 1:
        a = [
            z / 8 + mpmath.log(mpmath.pi / (2 * z)) / 2,
            mpf(1) / 8 - 1 / (2 * z),
            1 / (2 * z**2),
            -1 / z**3,
        ]
        b = [mpf(-2), mpf(0), mpf(0), mpf(0)]
    else:
        a = [pi2 / (12 * z**2) - mpf(1) / 24, -pi2 / (6 * z**3), pi2 / (2 * z**4), -2 * pi2 / z**5]
        b = [2 * pi2 / z**2, -4 * pi2 / z**3, 12 * pi2 / z**4, -48 * pi2 / z**5]
    return a, b


REFLECT_BELOW = 1


def eta_d(
    d: int,
    z,
    deriv: int = 0,
    ctx: PrecisionContext | None = None,
    method: str = "auto",
):
    """``eta_d(z) = sum_l e^(-lz) / (l^(2d-1) (1 + e^(-lz)))`` and z-derivatives.

    ``method="series"`` sums the definition; ``"reflect"`` uses the exact
    rewriting through ``varphi_d`` (d <= 2), which converges fast when |z|
    is small.  ``"auto"`` reflects below ``|z| < REFLECT_BELOW``.
    """
    if d not in (0, 1, 2, 3):
        raise DomainError("eta_d is provided for d in 0..3")
    _check_deriv(deriv)
    with at(ctx) as c:
        z = _num(z)
        if mpmath.re(z) <= 0:
            raise DomainError("eta_d requires Re z > 0")
        if method == "auto":
            method = "reflect" if d <= 2 and abs(z) < REFLECT_BELOW else "series"
        if method == "series":
            return _eta_series(d, z, deriv, c)
        if method != "reflect" or d > 2:
            raise DomainError(f"unsupported eta_d method {method!r} for d={d}")
        a, b = _reflect_parts(d, z, zeta3(c))
        total = a[deriv]
        for i in range(deriv + 1):
            if b[i] != 0:
                total += comb(deriv, i) * b[i] * _varphi_series(d, z, deriv - i, c)
        return total


def xi(d: int, z, branch: str = "series", ctx: PrecisionContext | None = None):
    """``xi_d(z)`` from its varphi series or from the closed eta_d form."""
    if d not in (0, 1, 2):
        raise DomainError("xi is provided for d in 0..2")
    with at(ctx) as c:
        z = _num(z)
        pi2 = mpmath.pi**2
        if branch == "series":
            phi = varphi_d(d, z, c)
            return (-2 / pi2 * phi, mpf(5) / 6 * phi, phi)[2 - d]
        if branch != "closed":
            raise DomainError(f"unknown xi branch {branch!r}")
        # the closed form cancels O(1) terms down to roughly e^(-2 pi^2 / z);
        # redo with enough extra digits to cover the measured cancellation
        extra = 0
        while True:
            with mpmath.workdps(c.dps + extra):
                parts = _xi_closed_parts(d, z, c)
                val = mpmath.fsum(parts)
                scale = max(abs(p) for p in parts)
            lost = 0 if val == 0 else int(mpmath.log10(scale / abs(val))) + 1
            if val == 0 or lost <= extra:
                return +val
            extra = lost + 5


def _xi_closed_parts(d: int, z, c: PrecisionContext) -> list:
    z = _num(z)
    pi2 = mpmath.pi**2
    sub = PrecisionContext(mpmath.mp.dps - c.dps + c.working_digits)
    eta = eta_d(d, z, 0, sub, method="series")
    if d == 0:
        return [z**2 / (48 * pi2), mpf(-1) / 24, z**2 / (2 * pi2) * eta]
    if d == 1:
        return [5 * z / 96, mpf(5) / 24 * mpmath.log(mpmath.pi / (2 * z)), -mpf(5) / 12 * eta]
    z3 = zeta3(sub)
    return [-z / 96, 7 * z3 / (8 * pi2), -pi2 / (24 * z), z3 / (2 * z**2), -eta / z**2]


# ---------------------------------------------------------------------------
# log P(e^-tau), J(b, tau)


def _p_series(tau, deriv: int, c: PrecisionContext):
    r = mpmath.exp(-mpmath.re(tau))
    q1 = mpmath.exp(-tau)
    state = {"q": 1}

    def term(ell):
        state["q"] *= q1
        return mpf(ell) ** (deriv - 1) * _bose(state["q"], deriv)

    def tail(L):
        return _DERIV_CONST[deriv] * _pg_tail(L, deriv - 1, r) / (1 - r ** (L + 1)) ** (deriv + 1)

    return _sum_until(term, tail, c.tol)


def p_log(tau, branch: str = "auto", deriv: int = 0, ctx: PrecisionContext | None = None):
    """``log P(e^-tau)`` with ``P`` the partition generating function.

    ``branch="modular"`` goes through ``tau -> 4 pi^2 / tau``; ``"auto"``
    picks whichever argument has the larger real part.
    """
    _check_deriv(deriv, 2)
    with at(ctx) as c:
        tau = _num(tau)
        if mpmath.re(tau) <= 0:
            raise DomainError("p_log requires Re tau > 0")
        pi2 = mpmath.pi**2
        w = 4 * pi2 / tau
        if branch == "auto":
            branch = "modular" if mpmath.re(w) > mpmath.re(tau) else "series"
        if branch == "series":
            return _p_series(tau, deriv, c)
        if branch != "modular":
            raise DomainError(f"unknown p_log branch {branch!r}")
        if deriv == 0:
            return (
                pi2 / (6 * tau)
                - tau / 24
                + mpmath.log(tau) / 2
                - mpmath.log(2 * mpmath.pi) / 2
                + _p_series(w, 0, c)
            )
        w1 = -4 * pi2 / tau**2
        if deriv == 1:
            return -pi2 / (6 * tau**2) - mpf(1) / 24 + 1 / (2 * tau) + _p_series(w, 1, c) * w1
        w2 = 8 * pi2 / tau**3
        return (
            pi2 / (3 * tau**3)
            - 1 / (2 * tau**2)
            + _p_series(w, 2, c) * w1**2
            + _p_series(w, 1, c) * w2
        )


def j_integral(b, tau, ctx: PrecisionContext | None = None):
    """``J(b, tau) = sum_{k >= 0} e^(-(k+b)/tau) / ((k+b)(1 - e^(-(k+b)/tau)))``."""
    with at(ctx) as c:
        b, tau = _num(b), _num(tau)
        if b <= 0:
            raise DomainError("J needs b > 0")
        inv = 1 / tau
        r = mpmath.exp(-mpmath.re(inv))
        if r >= 1:
            raise DomainError("J needs Re(1/tau) > 0")
        rb = r**b
        q1 = mpmath.exp(-inv)
        state = {"q": mpmath.exp(-b * inv) / q1}

        def term(k):
            state["q"] *= q1
            return _bose(state["q"], 0) / (k + b)

        def tail(k):
            return rb * r ** (k + 1) / (b * (1 - rb) * (1 - r))

        return _sum_until(term, tail, c.tol, start=0)


# ---------------------------------------------------------------------------
# m-rowed eta(t) and the dilogarithm


ROWED_SMALL_BELOW = 1


def eta_rowed(t, deriv: int = 0, ctx: PrecisionContext | None = None, method: str = "auto"):
    """``eta(t) = sum_j (1 - e^(-jt)) / j^3`` and its first two t-derivatives.

    ``eta'(t) = Li_2(e^-t)`` and ``eta''(t) = log(1 - e^-t)``.
    """
    _check_deriv(deriv, 2)
    with at(ctx) as c:
        t = _num(t)
        if mpmath.re(t) <= 0:
            raise DomainError("eta_rowed requires Re t > 0")
        if method == "auto":
            method = "small" if abs(t) < ROWED_SMALL_BELOW else "series"
        if method == "series":
            if deriv == 2:
                return mpmath.log(1 - mpmath.exp(-t))
            r = mpmath.exp(-mpmath.re(t))
            q1 = mpmath.exp(-t)
            p = 3 - deriv
            state = {"q": 1}

            def term(j):
                state["q"] *= q1
                return state["q"] / mpf(j) ** p

            s = _sum_until(term, lambda L: _pg_tail(L, -p, r), c.tol)
            return zeta3(c) - s if deriv == 0 else s
        if method != "small":
            raise DomainError(f"unknown eta_rowed method {method!r}")
        if abs(t) >= 2 * mpmath.pi:
            raise DomainError("small-t expansion needs |t| < 2 pi")
        lt = mpmath.log(t)
        if deriv == 0:
            head = mpmath.pi**2 * t / 6 + t**2 / 4 * (2 * lt - 3)
        elif deriv == 1:
            head = mpmath.pi**2 / 6 + t * lt - t
        else:
            head = lt
        u = abs(t) / (2 * mpmath.pi)
        s = head
        j = 1
        while True:
            bj = _bernoulli_number(j)
            if bj:
                s += (
                    mpf(bj.numerator) / bj.denominator
                    * t ** (j + 2 - deriv)
                    / (j * mpmath.factorial(j + 2 - deriv))
                )
            bound = 4 * abs(t) ** (2 - deriv) * u ** (j + 1) / (1 - u)
            if bound < c.tol * max(1, abs(s)):
                return s
            j += 1
            if j > BERNOULLI_CAP:
                raise ConvergenceError("small-t expansion exhausted the Bernoulli table")


def dilog(x, ctx: PrecisionContext | None = None):
    """``Li_2(x)`` for real ``0 <= x < 1``.

    The power series is summed for ``x <= 1/2``; above that the reflection
    ``Li_2(x) + Li_2(1-x) = pi^2/6 - log(x) log(1-x)`` maps into that range.
    """
    with at(ctx) as c:
        x = _num(x)
        if mpmath.im(x) != 0 or not 0 <= x < 1:
            raise DomainError("dilog requires real 0 <= x < 1")
        if x == 0:
            return mpf(0)
        if x > mpf(1) / 2:
            y = 1 - x
            return mpmath.pi**2 / 6 - mpmath.log(x) * mpmath.log(y) - dilog(y, c)
        state = {"q": mpf(1)}

        def term(j):
            state["q"] *= x
            return state["q"] / mpf(j) ** 2

        return _sum_until(term, lambda L: _pg_tail(L, -2, x), c.tol)


def spot_values(ctx: PrecisionContext | None = None) -> dict:
    """Named special-function values on a fixed argument grid.

    Used by the precision-escalation check and ``selftest --dump-constants``.
    """
    c = resolve(ctx)
    with at(c):
        half = mpf(1) / 2
        out = dict(zeta_constants(c))
        out["log_gamma(1/3)"] = log_gamma(mpf(1) / 3, c)
        out["digamma(1/2)"] = digamma(half, c)
        out["hurwitz(3,1/2)"] = hurwitz_zeta(3, half, 0, c)
        for z in (mpf("0.25"), mpf(1), mpf(4)):
            for d in (0, 1, 2):
                out[f"eta_{d}({z})"] = eta_d(d, z, 0, c)
                out[f"varphi_{d}({z})"] = varphi_d(d, z, c)
            out[f"eta_2'({z})"] = eta_d(2, z, 1, c)
            out[f"eta_2''({z})"] = eta_d(2, z, 2, c)
        for tau in (mpf("0.1"), mpf(2), mpmath.mpc(half, mpf("0.3"))):
            out[f"p_log({tau})"] = p_log(tau, "auto", 0, c)
        out["J(1/2,1)"] = j_integral(half, 1, c)
        out["eta_rowed(1/2)"] = eta_rowed(half, 0, c)
        out["eta_rowed(3)"] = eta_rowed(3, 0, c)
        out["dilog(0.9)"] = dilog(mpf("0.9"), c)
        return out

