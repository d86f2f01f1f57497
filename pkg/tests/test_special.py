from fractions import Fraction
from itertools import product

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf, mpc

from bandpp.errors import CapExceeded, DomainError, PoleError
from bandpp.precision import PrecisionContext
from bandpp.special import (
    bernoulli,
    digamma,
    dilog,
    eta_d,
    eta_rowed,
    hurwitz_zeta,
    j_integral,
    log_gamma,
    p_log,
    spot_values,
    stirling2,
    varphi_d,
    xi,
    zeta3,
    zeta_constants,
)

C50 = PrecisionContext(50)


def close(a, b, digits):
    with mpmath.workdps(C50.dps):
        return abs(a - b) <= mpf(10) ** -digits * max(abs(b), 1)


def central_diff(f, x, k, h):
    """k-th central difference of f at x with step h (k <= 3)."""
    stencil = {1: [(-1, -1), (1, 1)], 2: [(-1, 1), (0, -2), (1, 1)], 3: [(-2, -1), (-1, 2), (1, -2), (2, 1)]}[k]
    denom = {1: 2 * h, 2: h * h, 3: 2 * h**3}[k]
    return mpmath.fsum(w * f(x + j * h) for j, w in stencil) / denom


def brute_sum(term, n_terms):
    with mpmath.workdps(C50.dps):
        return mpmath.fsum(term(k) for k in range(1, n_terms + 1))


# ---------------------------------------------------------------- constants


def test_precision_context():
    assert PrecisionContext().working_digits == 50
    assert PrecisionContext(50).tol == mpf(10) ** -55
    with pytest.raises(ValueError):
        PrecisionContext(10)


def test_zeta_constants():
    k = zeta_constants(C50)
    with mpmath.workdps(C50.dps):
        assert close(k["zeta2"], mpmath.pi**2 / 6, 50)
        assert close(k["zeta3"], mpmath.zeta(3), 50)
        assert close(k["zeta_prime_minus1"], mpmath.zeta(-1, 1, 1), 48)
    assert mpmath.nstr(k["zeta3"], 16) == "1.202056903159594"
    assert mpmath.nstr(k["zeta_prime_minus1"], 12) == "-0.1654211437"


def test_hurwitz_zeta():
    with mpmath.workdps(C50.dps):
        assert close(hurwitz_zeta(2, 1, 0, C50), mpmath.pi**2 / 6, 48)
        half = mpf(1) / 2
        assert close(hurwitz_zeta(3, half, 0, C50), 7 * mpmath.zeta(3), 48)
        b3 = bernoulli(3, Fraction(1, 3))
        assert close(hurwitz_zeta(-2, mpf(1) / 3, 0, C50), -mpf(b3.numerator) / b3.denominator / 3, 48)
        for s, b in [(mpf("2.5"), mpf("0.3")), (mpc(2, 1), mpf("1.7")), (-mpf(1), mpf("0.25"))]:
            assert close(hurwitz_zeta(s, b, 0, C50), mpmath.zeta(s, b), 45)
            assert close(hurwitz_zeta(s, b, 1, C50), mpmath.zeta(s, b, 1), 45)
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 1, 0, C50)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, -1, 0, C50)


def test_bernoulli():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3, Fraction(1, 2)) == 0
    assert bernoulli(4, 1) == Fraction(-1, 30)
    # generating-function oracle z/(e^z - 1) = sum B_j z^j / j!
    with mpmath.workdps(60):
        coeffs = mpmath.taylor(lambda z: z / mpmath.expm1(z) if z else mpf(1), 0, 12)
        for j in range(13):
            bj = bernoulli(j)
            assert abs(coeffs[j] * mpmath.factorial(j) - mpf(bj.numerator) / bj.denominator) < mpf(10) ** -40
    for j in range(0, 20, 2):
        x = Fraction(2, 7)
        assert bernoulli(2 * j + 1, x) == -bernoulli(2 * j + 1, 1 - x)
    with pytest.raises(CapExceeded):
        bernoulli(201)


def test_stirling2():
    assert stirling2(3, 2) == 3
    assert stirling2(0, 0) == 1
    assert all(stirling2(k, 0) == 0 for k in range(1, 8))
    assert stirling2(6, 3) == 90
    # set-partition oracle: restricted growth strings
    def set_partitions(k, j):
        count = 0
        for s in product(range(j), repeat=k):
            top, ok = -1, True
            for v in s:
                if v > top + 1:
                    ok = False
                    break
                top = max(top, v)
            count += ok and top == j - 1
        return count

    for k in range(1, 7):
        for j in range(1, k + 1):
            assert stirling2(k, j) == set_partitions(k, j)


def test_log_gamma_digamma():
    with mpmath.workdps(C50.dps):
        assert close(log_gamma(mpf(1) / 2, C50), mpmath.log(mpmath.pi) / 2, 50)
        assert abs(log_gamma(1, C50)) < mpf(10) ** -50
        refl = mpmath.exp(log_gamma(mpf(1) / 3, C50) + log_gamma(mpf(2) / 3, C50))
        assert close(refl, 2 * mpmath.pi / mpmath.sqrt(3), 48)
        for x in (mpf("0.01"), mpf("0.7"), mpf(30), mpc("0.4", 2)):
            assert close(log_gamma(x, C50), mpmath.loggamma(x), 47)
            assert close(digamma(x, C50), mpmath.digamma(x), 47)
    with pytest.raises(DomainError):
        log_gamma(-1, C50)


# ---------------------------------------------------------------- eta, varphi, xi


def test_eta_d_limits():
    with mpmath.workdps(C50.dps):
        # the first summand e^-z / (1 + e^-z) dominates, so eta_2(z) ~ e^-z
        z = mpf(60)
        assert close(eta_d(2, z, 0, C50) / mpmath.exp(-z), 1, 20)
        small = eta_d(2, mpf(10) ** -8, 0, C50)
        assert abs(small - zeta3(C50) / 2) < mpf(10) ** -7


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_eta_d_partial_sum_oracle(d):
    # at z = 1 the summand is below e^-l; 200 terms leave < 1e-80
    with mpmath.workdps(C50.dps):
        z = mpf(1)
        oracle = brute_sum(lambda l: mpmath.exp(-l * z) / (mpf(l) ** (2 * d - 1) * (1 + mpmath.exp(-l * z))), 200)
        assert close(eta_d(d, z, 0, C50), oracle, 48)


@pytest.mark.parametrize("d", [0, 1, 2])
@pytest.mark.parametrize("z", [mpf("0.05"), mpf("0.5"), mpc("0.3", "0.4")])
def test_eta_d_reflect_vs_series(d, z):
    for k in range(4):
        a = eta_d(d, z, k, C50, method="series")
        b = eta_d(d, z, k, C50, method="reflect")
        assert close(a, b, 44), (d, z, k)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_eta_d_derivatives_vs_finite_difference(k):
    c100 = PrecisionContext(100)
    with mpmath.workdps(c100.dps):
        for z in (mpf("0.3"), mpf(2)):
            fd = central_diff(lambda t: eta_d(2, t, 0, c100), z, k, mpf(10) ** -20)
            assert close(eta_d(2, z, k, C50), fd, 25)


def test_varphi_d():
    with mpmath.workdps(C50.dps):
        assert abs(varphi_d(2, mpf("0.01"), C50)) < mpf(10) ** -800
        z = mpf(5)
        for d in (0, 1, 2):
            oracle = brute_sum(
                lambda l: mpf(2 * l - 1) ** (1 - 2 * d)
                * mpmath.exp(-2 * (2 * l - 1) * mpmath.pi**2 / z)
                / (-mpmath.expm1(-2 * (2 * l - 1) * mpmath.pi**2 / z)),
                60,
            )
            assert close(varphi_d(d, z, C50), oracle, 48)
        assert close(xi(2, z, "series", C50), -2 / mpmath.pi**2 * varphi_d(2, z, C50), 50)


@pytest.mark.parametrize("d", [0, 1, 2])
@pytest.mark.parametrize("z", ["0.25", "0.5", "1", "2", "4", "8", "16", mpc(3, 1), mpc("0.8", "-0.5")])
def test_xi_branches_agree(d, z):
    z = mpmath.mpmathify(z)
    a = xi(d, z, "series", C50)
    b = xi(d, z, "closed", C50)
    with mpmath.workdps(C50.dps):
        assert abs(a - b) <= mpf(10) ** -(50 - 8) * abs(a)


def test_xi_closed_leading_terms():
    with mpmath.workdps(C50.dps):
        # large z: xi_1 = 5z/96 (1 + O(log z / z))
        z = mpf(10) ** 6
        assert abs(xi(1, z, "closed", C50) / (5 * z / 96) - 1) < mpf(10) ** -4
        # xi_0 = z^2 / (48 pi^2) - 1/24 + (exponentially small) for large z
        z = mpf(100)
        assert close(xi(0, z, "closed", C50) - z**2 / (48 * mpmath.pi**2), mpf(-1) / 24, 30)


# ---------------------------------------------------------------- p_log, J


def test_p_log_self_dual_point():
    tau = 2 * mpmath.pi
    for k in range(3):
        assert close(p_log(tau, "series", k, C50), p_log(tau, "modular", k, C50), 48)


@pytest.mark.parametrize("tau", [mpf("0.1"), mpc("0.5", "0.3"), mpf(2), mpf("0.05"), mpf(20), mpc(1, "-0.9")])
def test_p_log_modular_identity(tau):
    with mpmath.workdps(C50.dps):
        direct = p_log(tau, "series", 0, C50)
        modular = p_log(tau, "modular", 0, C50)
        assert abs(direct - modular) <= mpf(10) ** -(50 - 8) * max(1, abs(direct))
        q = mpmath.exp(-tau)
        oracle = -mpmath.log(mpmath.qp(q))
        assert close(direct, oracle, 45)


def test_p_log_derivatives_and_limit():
    c100 = PrecisionContext(100)
    with mpmath.workdps(c100.dps):
        for tau in (mpf("0.7"), mpf(9)):
            for k in (1, 2):
                fd = central_diff(lambda t: p_log(t, "auto", 0, c100), tau, k, mpf(10) ** -20)
                assert close(p_log(tau, "auto", k, C50), fd, 25)
        for t in (mpf("0.4"), mpf(3)):
            for k in (1, 2):
                fd = central_diff(lambda u: eta_rowed(u, 0, c100), t, k, mpf(10) ** -20)
                assert close(eta_rowed(t, k, C50), fd, 25)
    with mpmath.workdps(C50.dps):
        big = mpf(50)
        assert close(p_log(big, "auto", 0, C50) / mpmath.exp(-big), 1, 20)
    with pytest.raises(DomainError):
        p_log(-1, "auto", 0, C50)


def test_j_integral():
    with mpmath.workdps(C50.dps):
        assert close(j_integral(1, mpf("0.5"), C50), p_log(2, "series", 0, C50), 48)
        oracle = brute_sum(lambda k: mpmath.exp(-(k - mpf(1) / 2)) / ((k - mpf(1) / 2) * (-mpmath.expm1(-(k - mpf(1) / 2)))), 200)
        assert close(j_integral(mpf(1) / 2, 1, C50), oracle, 48)
        tau = mpf("0.01")
        b = mpf("0.7")
        assert close(j_integral(b, tau, C50) / (mpmath.exp(-b / tau) / b), 1, 20)
    with pytest.raises(DomainError):
        j_integral(0, 1, C50)


# ---------------------------------------------------------------- eta_rowed, dilog


def test_eta_rowed():
    with mpmath.workdps(C50.dps):
        assert close(eta_rowed(200, 0, C50), zeta3(C50), 50)
        t = mpf(10) ** -6
        assert close(eta_rowed(t, 0, C50) / t, mpmath.pi**2 / 6, 4)
        for deriv in (0, 1, 2):
            for t in (mpf(1), mpf("0.6"), mpc("0.5", "0.5")):
                a = eta_rowed(t, deriv, C50, method="series")
                b = eta_rowed(t, deriv, C50, method="small")
                assert close(a, b, 46), (deriv, t)
        x = mpf("0.8")
        assert close(eta_rowed(x, 1, C50), mpmath.polylog(2, mpmath.exp(-x)), 48)
        assert close(eta_rowed(x, 2, C50), mpmath.log(-mpmath.expm1(-x)), 48)


def test_dilog():
    with mpmath.workdps(C50.dps):
        assert dilog(0, C50) == 0
        assert close(dilog(mpf(1) / 2, C50), mpmath.pi**2 / 12 - mpmath.log(2) ** 2 / 2, 50)
        assert abs(dilog(1 - mpf(10) ** -30, C50) - mpmath.pi**2 / 6) < mpf(10) ** -25
        for x in (mpf("0.1"), mpf("0.9"), mpf("0.999")):
            assert close(dilog(x, C50), mpmath.polylog(2, x), 48)
    with pytest.raises(DomainError):
        dilog(1, C50)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.02, max_value=30))
def test_eta_rowed_matches_polylog_sum(t):
    with mpmath.workdps(C50.dps):
        t = mpf(t)
        oracle = mpmath.zeta(3) - mpmath.polylog(3, mpmath.exp(-t))
        assert close(eta_rowed(t, 0, C50), oracle, 45)


# ---------------------------------------------------------------- precision escalation


def test_spot_values_escalation():
    lo = spot_values(PrecisionContext(50))
    hi = spot_values(PrecisionContext(100))
    assert lo.keys() == hi.keys()
    with mpmath.workdps(120):
        for name in lo:
            err = abs(lo[name] - hi[name]) / max(abs(hi[name]), 1)
            assert err < mpf(10) ** -45, name
