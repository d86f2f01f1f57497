"""Saddle-point engine and phase-specific estimates for G_{n,m}.

All estimates live on the natural-log scale. ``F(tau) = log G_m(e^-tau)`` is
evaluated through ``sum_l U_m(e^(-l tau)) / l`` and differentiated term by
term: ``U_m(e^-x)`` splits into the Bose factor ``e^-x/(1-e^-x)`` (whose
derivatives are Eulerian polynomials) and a product of geometric factors
(differentiated through its logarithmic derivative).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath
from mpmath import mpf

from .counting import Family, divisor_weights
from .errors import BracketFailure, ConvergenceError, DomainError, NoConvergence
from .identity import phi_const, structure_constants, varpi_over_pi2
from .precision import PrecisionContext, at
from .special import _pg_tail, bernoulli, eta_d, p_log, stirling2, zeta_constants
from .transition import sigma_fn, solve_r

K_MAX = 6
LADDER_TERM_CAP = 5_000_000
PHASES = ("subcritical", "critical", "supercritical")
METHODS = ("uniform", "uniform_gamma1", "uniform_gamma2", "subcritical", "bessel", "critical", "supercritical")


@lru_cache(maxsize=None)
def eulerian(n: int) -> tuple[int, ...]:
    """Coefficients of the Eulerian polynomial A_n (A_0 = 1)."""
    if n == 0:
        return (1,)
    prev = eulerian(n - 1)
    out = [0] * n
    for k in range(n):
        a = (k + 1) * prev[k] if k < len(prev) else 0
        b = (n - k) * prev[k - 1] if 0 < k <= len(prev) else 0
        out[k] = a + b
    return tuple(out)


def _bose_derivs(q, omq, kmax: int) -> list:
    """``d^n/dx^n [q/(1-q)]`` for ``n = 0..kmax``, with ``q = e^-x``, ``omq = 1-q``."""
    out = []
    inv = 1 / omq
    p = q * inv
    for n in range(kmax + 1):
        poly = mpmath.polyval(list(reversed(eulerian(n))), q)
        v = p * poly
        out.append(-v if n % 2 else v)
        p *= inv
    return out


def _u_derivs(m: int, x, kmax: int) -> list:
    """``d^k/dx^k U_m(e^-x)`` for ``k = 0..kmax``."""
    q = mpmath.exp(-x)
    g = _bose_derivs(q, -mpmath.expm1(-x), kmax)
    if m <= 2:
        return g
    # y = e^-3x (1-e^-(m-2)x)(1-e^-(m-1)x) / ((1-e^-2mx)(1-e^-x)(1-e^-2x))
    factors = ((m - 2, 1), (m - 1, 1), (2 * m, -1), (1, -1), (2, -1))
    y0 = mpmath.exp(-3 * x)
    lam = [mpf(0)] * (kmax + 1)
    lam[1] = mpf(-3)
    for a, s in factors:
        om = -mpmath.expm1(-a * x)
        y0 = y0 * om if s > 0 else y0 / om
        if kmax:
            ga = _bose_derivs(mpmath.exp(-a * x), om, kmax - 1)
            pw = mpf(s)
            for n in range(1, kmax + 1):
                pw *= a
                lam[n] += pw * ga[n - 1]
    y = [y0]
    for n in range(1, kmax + 1):
        y.append(mpmath.fsum(comb(n - 1, k) * lam[k + 1] * y[n - 1 - k] for k in range(n)))
    return [gi + yi for gi, yi in zip(g, y)]


def _y_tail(m: int, L: int, k: int, r):
    """Bound on ``sum_{l > L} l^(k-1) |y^(k)(l tau)|`` (y has coefficients <= m/2 from j = 3)."""
    q = r ** (L + 1)
    ratio = mpf(4) ** k / mpf(3) ** k * q
    if ratio >= 1:
        return mpmath.inf
    return mpf(m) / 2 * 3**k / (1 - ratio) * _pg_tail(L, k - 1, r**3)


def f_derivatives(m: int, tau, kmax: int = K_MAX, ctx: PrecisionContext | None = None) -> list:
    """``F^(k)(tau)`` for ``k = 0..kmax`` where ``F(tau) = log G_m(e^-tau)``.

    Term-wise analytic derivatives of ``sum_l U_m(e^(-l tau)) / l``. Once the
    geometric-factor part of U_m has a negligible tail only the Bose part is kept.
    """
    if not 0 <= kmax <= K_MAX:
        raise DomainError(f"kmax must be in 0..{K_MAX}")
    if m < 1:
        raise DomainError("need m >= 1")
    with at(ctx) as c:
        tau = mpmath.mpmathify(tau)
        if tau <= 0:
            raise DomainError("need tau > 0")
        r = mpmath.exp(-tau)
        tol = c.tol / 100
        sums = [mpf(0)] * (kmax + 1)
        facts = [mpmath.factorial(k) for k in range(kmax + 1)]
        mu = m
        ell = 0
        while True:
            ell += 1
            d = _u_derivs(mu, ell * tau, kmax)
            sums[0] += d[0] / ell
            lp = mpf(1) / ell
            for k in range(1, kmax + 1):
                lp *= ell
                sums[k] += lp * d[k]
            if ell % 8 == 0 or ell == 1:
                if mu > 2 and all(_y_tail(m, ell, k, r) <= tol * abs(sums[k]) for k in range(kmax + 1)):
                    mu = 1
                rl = r ** (ell + 1)
                # e_j <= m gives |u^(k)(x)| <= m k! e^-x / (1-e^-x)^(k+1)
                if all(
                    m * facts[k] / (1 - rl) ** (k + 1) * _pg_tail(ell, k - 1, r) <= tol * abs(sums[k])
                    for k in range(kmax + 1)
                ):
                    return sums
            if ell > LADDER_TERM_CAP:
                raise ConvergenceError("U_m series did not converge")


def f_derivatives_weights(m: int, tau, kmax: int = 2, ctx: PrecisionContext | None = None) -> list:
    """Same quantities from ``F(tau) = sum_n c_n e^(-n tau) / n`` with exact weights c_n.

    Only a few multiplications per term, so the saddle solver iterates on it.
    """
    with at(ctx) as c:
        tau = mpmath.mpmathify(tau)
        if tau <= 0:
            raise DomainError("need tau > 0")
        r = mpmath.exp(-tau)
        tol = c.tol / 100
        fam = Family.bpp(m)
        n_max = 1024
        while True:
            # c_n <= m n^2 bounds the tail by m sum_{n > N} n^(k+1) r^n
            tails = [m * _pg_tail(n_max, k + 1, r) for k in range(kmax + 1)]
            if tails[-1] * tau ** (kmax + 1) < tol and tails[0] * tau < tol:
                break
            n_max *= 2
            if n_max > LADDER_TERM_CAP:
                raise ConvergenceError("weight series did not converge")
        cw = divisor_weights(fam, n_max)
        sums = [mpf(0)] * (kmax + 1)
        zn = mpf(1)
        for nn in range(1, n_max + 1):
            zn *= r
            cn = cw[nn]
            if not cn:
                continue
            t = cn * zn
            sums[0] += t / nn
            for k in range(1, kmax + 1):
                sums[k] += t
                t *= nn
        return [s if k % 2 == 0 else -s for k, s in enumerate(sums)]


def lambda_ladder(n: int, m: int, rho, k_max: int = K_MAX, ctx: PrecisionContext | None = None) -> list:
    """``[Lambda_1, ..., Lambda_kmax]`` with ``Lambda_k = (-rho)^k F^(k)(rho)``.

    ``n`` is carried for interface symmetry; the ladder depends on m and rho only.
    """
    with at(ctx) as c:
        rho = mpmath.mpmathify(rho)
        fd = f_derivatives(m, rho, k_max, c)
        return [(-rho) ** k * fd[k] for k in range(1, k_max + 1)]


def lambda_stirling(m: int, rho, k: int, ctx: PrecisionContext | None = None):
    """Independent route: ``rho^k sum_j S(k,j) e^(-j rho) Lambda^(j)(e^-rho)``.

    ``Lambda(z) = log G_m(z) = sum_n c_n z^n / n`` with the exact divisor
    weights ``c_n``; the j-th z-derivative is summed coefficient-wise.
    """
    with at(ctx) as c:
        rho = mpmath.mpmathify(rho)
        r = mpmath.exp(-rho)
        fam = Family.bpp(m)
        n_max = 256
        while True:
            # c_n <= m n^2, so the tail is bounded by m sum_{n > N} n^(k+1) r^n
            if m * _pg_tail(n_max, k + 1, r) < c.tol / 100 * rho ** (-k - 2):
                break
            n_max *= 2
        cw = divisor_weights(fam, n_max)
        srow = [stirling2(k, j) for j in range(k + 1)]
        total = mpf(0)
        zn = mpf(1)
        for nn in range(1, n_max + 1):
            zn *= r
            if not cw[nn]:
                continue
            # sum_j S(k,j) e^(-j rho) d^j/dz^j z^n = z^n sum_j S(k,j) (n)_j
            fall = 1
            acc = 0
            for j in range(1, k + 1):
                fall *= nn - j + 1
                acc += srow[j] * fall
            total += mpf(cw[nn]) / nn * acc * zn
        return rho**k * total


# ---------------------------------------------------------------------------
# phases


def phase_classify(n: int, m: int) -> dict:
    """Advisory phase label with ``omega_n = log log n``."""
    if n < 3:
        raise DomainError("phase_classify needs n >= 3")
    ln = mpmath.log(n)
    llog = mpmath.log(ln)
    omega = llog
    m_minus = 6 * mpmath.pi ** (mpf(2) / 3) * mpmath.cbrt(n) / (ln - llog / 2 + mpmath.log(omega)) ** (mpf(2) / 3)
    z3 = zeta_constants()["zeta3"]
    m_plus = mpmath.cbrt(n / z3) * (2 * ln / 3 + llog + omega)
    if m <= m_minus:
        phase = "subcritical"
    elif m >= m_plus:
        phase = "supercritical"
    else:
        phase = "critical"
    return {"phase": phase, "m_minus": m_minus, "m_plus": m_plus}


def _phase_label(n: int, m: int) -> str:
    if n < 3:
        return "supercritical" if m >= n else "subcritical"
    return phase_classify(n, m)["phase"]


# ---------------------------------------------------------------------------
# saddle point


@dataclass(frozen=True)
class SaddleSolution:
    n: int
    m: int
    rho: object
    lam: tuple  # Lambda_1 .. Lambda_6
    residual: object
    phase: str
    log_G: object = None
    iterations: int = 0

    def Lambda(self, k: int):
        return self.lam[k - 1]


def saddle_seeds(n: int, m: int, ctx: PrecisionContext | None = None) -> list:
    with at(ctx) as c:
        if m <= 2:
            return [mpmath.pi / mpmath.sqrt(6 * n)]
        vp = varpi_over_pi2(m)
        ph = phi_const(m)
        varpi = mpmath.pi**2 * vp.numerator / vp.denominator
        sub = mpmath.sqrt(varpi / (n + mpf(ph.numerator) / ph.denominator))
        z3 = zeta_constants(c)["zeta3"]
        sup = mpmath.cbrt(z3) * mpmath.cbrt(n + mpf(1) / 48) ** -1
        return [sub, sup]


def solve_saddle(n: int, m: int, ctx: PrecisionContext | None = None, max_iter: int = 100) -> SaddleSolution:
    """Positive root of ``Lambda_1(rho) / rho = n``; safeguarded Newton in a bracket."""
    if n < 1:
        raise DomainError("need n >= 1")
    if m < 1:
        raise DomainError("need m >= 1")
    with at(ctx) as c:
        seeds = saddle_seeds(n, m, c)
        target = mpf(n)

        def h(rho, kmax=1):
            fd = f_derivatives_weights(m, rho, kmax, c)
            return -fd[1], fd

        # the subcritical seed degrades once m^3 exceeds n (phi_m ~ m^3 / 96)
        start = seeds[0] if len(seeds) == 1 or m**3 <= n else seeds[1]
        # mean size is decreasing in rho: need h(lo) > n > h(hi)
        if h(start)[0] > target:
            lo, hi = start, start * 2
            grow = True
        else:
            lo, hi = start / 2, start
            grow = False
        for _ in range(200):
            if grow and h(hi)[0] < target:
                break
            if not grow and h(lo)[0] > target:
                break
            if grow:
                lo, hi = hi, hi * 2
            else:
                lo, hi = lo / 2, lo
        else:
            raise BracketFailure(f"could not bracket the saddle at n={n}, m={m}")

        rho = mpmath.sqrt(lo * hi)
        tol = mpf(10) ** -(c.working_digits - 13)
        for it in range(1, max_iter + 1):
            val, fd = h(rho, 2)
            resid = val - target
            if resid > 0:
                lo = rho
            else:
                hi = rho
            if abs(resid) <= tol * target:
                break
            new = rho + resid / fd[2]
            if not lo < new < hi:
                new = (lo + hi) / 2
            rho = new
        else:
            raise NoConvergence(f"saddle solver stalled at n={n}, m={m}")
        fd = f_derivatives(m, rho, K_MAX, c)
        lam = tuple((-rho) ** k * fd[k] for k in range(1, K_MAX + 1))
        residual = abs(n * rho - lam[0]) / (n * rho)
        if not lam[1] > 0:
            raise ConvergenceError("Lambda_2 is not positive at the saddle")
        return SaddleSolution(n, m, rho, lam, residual, _phase_label(n, m), fd[0], it)


# ---------------------------------------------------------------------------
# estimates


@dataclass(frozen=True)
class AsymptoticEstimate:
    log_value: object
    terms: dict
    method: str
    claimed_error_order: str
    diagnostics: dict = field(default_factory=dict)

    def check(self) -> bool:
        s = mpmath.fsum(self.terms.values())
        return mpmath.isfinite(self.log_value) and abs(s - self.log_value) <= mpf(10) ** (-mpmath.mp.dps + 5) * max(1, abs(s))

    def as_dict(self, digits: int = 20) -> dict:
        return {
            "method": self.method,
            "log_value": mpmath.nstr(self.log_value, digits),
            "terms": {k: mpmath.nstr(v, digits) for k, v in self.terms.items()},
            "claimed_error_order": self.claimed_error_order,
            **{k: (mpmath.nstr(v, digits) if isinstance(v, (mpf, mpmath.mpc)) else v) for k, v in self.diagnostics.items()},
        }


def _estimate(terms: dict, method: str, order: str, **diag) -> AsymptoticEstimate:
    return AsymptoticEstimate(mpmath.fsum(terms.values()), terms, method, order, diag)


def gamma_coefficients(lam) -> tuple:
    """``(gamma_1, gamma_2)`` from the ladder ``Lambda_1..Lambda_6``."""
    L2, L3, L4, L5, L6 = lam[1:6]
    g1 = (3 * L2 * L4 - 5 * L3**2) / (24 * L2**2)
    g2 = (
        -24 * L2**3 * L6
        + 168 * L2**2 * L3 * L5
        + 105 * L2**2 * L4**2
        - 630 * L2 * L3**2 * L4
        + 385 * L3**4
    ) / (1152 * L2**4)
    return g1, g2


def uniform_estimate(n: int, m: int, order: int = 0, ctx: PrecisionContext | None = None, sol: SaddleSolution | None = None) -> AsymptoticEstimate:
    """``rho e^(n rho) G_m(e^-rho) / sqrt(2 pi Lambda_2)`` with optional gamma corrections."""
    if order not in (0, 1, 2):
        raise DomainError("order must be 0, 1 or 2")
    with at(ctx) as c:
        if sol is None:
            sol = solve_saddle(n, m, c)
        rho = sol.rho
        L2 = sol.lam[1]
        g1, g2 = gamma_coefficients(sol.lam)
        corr = mpf(1)
        if order >= 1:
            corr += g1 / L2
        if order >= 2:
            corr += g2 / L2**2
        terms = {
            "n_rho": n * rho,
            "log_G": sol.log_G,
            "log_rho": mpmath.log(rho),
            "gaussian": -mpmath.log(2 * mpmath.pi * L2) / 2,
        }
        if order:
            terms["correction"] = mpmath.log(corr)
        method = ("uniform", "uniform_gamma1", "uniform_gamma2")[order]
        err = ("O(1/Lambda_2)", "O(1/Lambda_2^2)", "O(1/Lambda_2^3)")[order]
        return _estimate(terms, method, err, rho=rho, Lambda_2=L2, gamma_1=g1, gamma_2=g2, phase=sol.phase)


def subcritical_estimate(n: int, m: int, ctx: PrecisionContext | None = None) -> AsymptoticEstimate:
    """``g_m sqrt(varpi_m) / (2 sqrt(pi) n) exp(2 sqrt(varpi_m (n + phi_m)))``."""
    if m < 3:
        raise DomainError("subcritical estimate needs m >= 3")
    with at(ctx) as c:
        sc = structure_constants(m, c)
        terms = {
            "log_prefactor": sc.log_g + mpmath.log(sc.varpi) / 2 - mpmath.log(2 * mpmath.sqrt(mpmath.pi) * n),
            "exponent_main": 2 * mpmath.sqrt(sc.varpi * (n + sc.phi_mp)),
        }
        return _estimate(terms, "subcritical", "O(m^(7/2) n^(-1/2))")


def bessel_estimate(n: int, m: int, ctx: PrecisionContext | None = None) -> AsymptoticEstimate:
    """Hankel-contour (modified Bessel) refinement of the subcritical estimate."""
    if m < 3:
        raise DomainError("bessel estimate needs m >= 3")
    with at(ctx) as c:
        sc = structure_constants(m, c)
        big_n = n + sc.phi_mp
        s = mpmath.sqrt(sc.varpi * big_n)
        terms = {
            "log_prefactor": sc.log_g - mpf(3) / 2 * mpmath.log(big_n) - mpmath.log(4 * mpmath.sqrt(mpmath.pi)),
            "exponent_main": 2 * s,
            "bessel_factor": mpmath.log((2 * s - 1) - (2 * s + 1) * mpmath.exp(-4 * s)),
        }
        return _estimate(terms, "bessel", "O(m e^(-2 pi^2/(m rho)))")


def supercritical_constants(ctx: PrecisionContext | None = None) -> dict:
    with at(ctx) as c:
        zc = zeta_constants(c)
        z3 = zc["zeta3"]
        pi = mpmath.pi
        log_c = (
            zc["zeta_prime_minus1"] / 2
            - pi**4 / (3456 * z3)
            + mpf(13) / 72 * mpmath.log(z3)
            - mpf(3) / 4 * mpmath.log(2)
            - mpmath.log(3 * pi) / 2
        )
        return {"log_c": log_c, "beta1": mpf(3) / 2 * mpmath.cbrt(z3), "beta2": pi**2 / (24 * mpmath.cbrt(z3))}


def supercritical_estimate(n: int, ctx: PrecisionContext | None = None) -> AsymptoticEstimate:
    """``c n^(-49/72) exp(beta_1 n^(2/3) + beta_2 n^(1/3))``, independent of m."""
    if n < 1:
        raise DomainError("need n >= 1")
    with at(ctx) as c:
        k = supercritical_constants(c)
        n13 = mpmath.cbrt(n)
        terms = {
            "exponent_main": k["beta1"] * n13**2,
            "exponent_sub": k["beta2"] * n13,
            "polynomial_power": -mpf(49) / 72 * mpmath.log(n),
            "log_prefactor": k["log_c"],
        }
        return _estimate(terms, "supercritical", "O(n^(-1/3))")


def critical_estimate(n: int, m: int, ctx: PrecisionContext | None = None) -> AsymptoticEstimate:
    """``c(alpha, r) n^(-49/72) exp(beta_1 n^(2/3) + beta_2 n^(1/3))`` with ``alpha = m n^(-1/3)``."""
    if m < 3 or n < 1:
        raise DomainError("critical estimate needs m >= 3 and n >= 1")
    with at(ctx) as c:
        zc = zeta_constants(c)
        pi = mpmath.pi
        n13 = mpmath.cbrt(n)
        alpha = m / n13
        tp = solve_r(alpha, "bpp", c)
        r = tp.r
        x = alpha * r
        sig = sigma_fn(x, c)
        e1 = eta_d(1, x, 0, c)
        log_c = (
            mpf(49) / 24 * mpmath.log(r)
            - mpf(3) / 4 * mpmath.log(2)
            - mpmath.log(pi * sig) / 2
            + zc["zeta_prime_minus1"] / 2
            - 5 * e1 / 12
            + p_log(x, "auto", 0, c) / 2
            - pi**4 / (1152 * sig)
        )
        beta2 = pi**2 / (24 * r)
        terms = {
            "exponent_main": tp.value * n13**2,
            "exponent_sub": beta2 * n13,
            "polynomial_power": -mpf(49) / 72 * mpmath.log(n),
            "log_prefactor": log_c,
        }
        r1 = pi**2 * r / (24 * sig)
        # e^-x p'(e^-x) = -d/dx p(e^-x)
        zp = -p_log(x, "auto", 1, c)
        r2 = r**2 / sig * (
            -mpf(1) / 24
            + mpf(5) / 12 * x * eta_d(1, x, 1, c)
            + x * zp / 2
            + pi**4 / (1152 * sig**2)
            * (2 * x * eta_d(2, x, 1, c) - 2 * x**2 * eta_d(2, x, 2, c) + x**3 * eta_d(2, x, 3, c))
        )
        return _estimate(
            terms, "critical", "O(n^(-1/3) (1 + alpha^(-5/2)))",
            alpha=alpha, r=r, beta1=tp.value, beta2=beta2, sigma=sig, r_1=r1, r_2=r2,
        )


def gumbel_ratio(n: int, x, ctx: PrecisionContext | None = None) -> dict:
    """Predicted ``log(G_{n,m} / G_{n,n})`` at the width implied by ``x``."""
    with at(ctx) as c:
        z3 = zeta_constants(c)["zeta3"]
        x = mpmath.mpmathify(x)
        alpha = (2 * mpmath.log(n / z3) / 3 + x) / mpmath.cbrt(z3)
        m_implied = alpha * mpmath.cbrt(n)
        m = max(3, int(mpmath.nint(m_implied)))
        pred = critical_estimate(n, m, c).log_value - supercritical_estimate(n, c).log_value
        return {
            "m_implied": m_implied,
            "m": m,
            "log_ratio_predicted": pred,
            "log_ratio_model": -mpmath.exp(-x),
        }


# ---------------------------------------------------------------------------
# V_m modulus and the varsigma polynomials


def _abs_vm(m: int, rho, t):
    e = mpmath.exp(-rho)
    em = mpmath.exp(-m * rho)
    cmt = mpmath.cos(m * t)
    base = e / (2 * (1 - 2 * e * mpmath.cos(t) + e * e))
    return base * mpmath.sqrt((1 - 2 * em * cmt + em * em) / (1 + 2 * em * cmt + em * em))


def v_ratio(m: int, rho, t, ctx: PrecisionContext | None = None):
    """``|V_m(e^(-rho-it))| / V_m(e^-rho)`` from the closed modulus formula."""
    with at(ctx):
        rho = mpmath.mpmathify(rho)
        if rho <= 0:
            raise DomainError("need rho > 0")
        return _abs_vm(m, rho, mpmath.mpmathify(t)) / _abs_vm(m, rho, 0)


def sigma_j_poly(j: int, m: int) -> Fraction:
    """``sum_{1 <= k < m} (m - k) k^j`` through Bernoulli polynomials."""
    if not 1 <= j <= 10:
        raise DomainError("j must be in 1..10")
    if m < 1:
        raise DomainError("need m >= 1")
    mm = Fraction(m)
    s1 = (bernoulli(j + 1, mm) - bernoulli(j + 1, Fraction(0))) / (j + 1)
    s2 = (bernoulli(j + 2, mm) - bernoulli(j + 2, Fraction(0))) / (j + 2)
    return mm * s1 - s2
