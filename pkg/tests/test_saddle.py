from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from bandpp.counting import Family, euler_transform_counts
from bandpp.errors import DomainError
from bandpp.identity import log_Gm
from bandpp.precision import PrecisionContext
from bandpp.saddle import (
    bessel_estimate,
    critical_estimate,
    eulerian,
    f_derivatives,
    f_derivatives_weights,
    gamma_coefficients,
    gumbel_ratio,
    lambda_ladder,
    lambda_stirling,
    phase_classify,
    sigma_j_poly,
    solve_saddle,
    subcritical_estimate,
    supercritical_constants,
    supercritical_estimate,
    uniform_estimate,
    v_ratio,
)
from bandpp.transition import solve_r

C50 = PrecisionContext(50)


def rel_err(log_est, exact):
    with mpmath.workdps(C50.dps):
        return mpmath.expm1(log_est - mpmath.log(exact))


# ---------------------------------------------------------------- ladder


def test_eulerian_polynomials():
    assert eulerian(0) == (1,)
    assert eulerian(3) == (1, 4, 1)
    assert eulerian(4) == (1, 11, 11, 1)
    # sum_k k^n q^k = q A_n(q) / (1 - q)^(n + 1)
    with mpmath.workdps(40):
        q = mpf("0.3")
        for n in range(1, 7):
            lhs = mpmath.nsum(lambda k: k**n * q**k, [1, mpmath.inf])
            rhs = q * mpmath.polyval(list(reversed(eulerian(n))), q) / (1 - q) ** (n + 1)
            assert abs(lhs - rhs) < mpf(10) ** -30


@pytest.mark.parametrize("m,tau", [(3, "0.3"), (8, "0.1"), (40, "0.05")])
def test_f_derivative_routes(m, tau):
    tau = mpf(tau)
    a = f_derivatives(m, tau, 6, C50)
    b = f_derivatives_weights(m, tau, 2, C50)
    with mpmath.workdps(C50.dps):
        assert abs(a[0] - log_Gm(m, tau, "series", C50)) < mpf(10) ** -45 * abs(a[0])
        for k in (1, 2):
            assert abs(a[k] - b[k]) < mpf(10) ** -45 * abs(a[k])


@pytest.mark.parametrize("m,rho", [(3, "0.2"), (5, "0.05"), (17, "0.08"), (200, "0.1")])
def test_lambda_dual_route(m, rho):
    rho = mpf(rho)
    ladder = lambda_ladder(1000, m, rho, 3, C50)
    for k in (1, 2, 3):
        other = lambda_stirling(m, rho, k, C50)
        with mpmath.workdps(C50.dps):
            assert abs(ladder[k - 1] - other) <= mpf(10) ** -(50 - 12) * abs(other), k
    assert ladder[1] > 0


def test_lambda_m1_is_partition_mean():
    counts = euler_transform_counts(Family.partitions(), 400).counts
    with mpmath.workdps(C50.dps):
        e = mpmath.exp(-1)
        num = mpmath.fsum(n * mpf(c) * e**n for n, c in enumerate(counts))
        den = mpmath.fsum(mpf(c) * e**n for n, c in enumerate(counts))
        lam1 = lambda_ladder(1, 1, 1, 1, C50)[0]
        assert abs(lam1 - num / den) < mpf(10) ** -45


# ---------------------------------------------------------------- saddle


def test_solve_saddle_example():
    sol = solve_saddle(1000, 5, C50)
    assert abs(sol.rho - mpf("0.0513")) < mpf("0.002")
    assert sol.residual < mpf(10) ** -(50 - 15)
    assert sol.Lambda(2) > 0 and len(sol.lam) == 6
    assert solve_saddle(2000, 5, C50).rho < sol.rho
    with pytest.raises(DomainError):
        solve_saddle(0, 5, C50)


@pytest.mark.parametrize("n,m", [(50, 1), (300, 3), (3000, 12), (800, 800)])
def test_saddle_residual(n, m):
    sol = solve_saddle(n, m, C50)
    assert sol.residual < mpf(10) ** -(50 - 15)
    assert sol.Lambda(2) > 0


# ---------------------------------------------------------------- uniform


def test_uniform_anchor_m8(exact_count):
    exact = exact_count(5000, 8)
    sol = solve_saddle(5000, 8, C50)
    errs = [abs(rel_err(uniform_estimate(5000, 8, k, C50, sol).log_value, exact)) for k in range(3)]
    assert errs[0] < mpf("0.05")
    assert errs[1] < errs[0] and errs[1] < mpf("0.015")
    est = uniform_estimate(5000, 8, 2, C50, sol)
    assert est.check() and est.method == "uniform_gamma2"
    assert set(est.terms) == {"n_rho", "log_G", "log_rho", "gaussian", "correction"}
    with pytest.raises(DomainError):
        uniform_estimate(5000, 8, 3, C50, sol)


def test_gamma_one_formula():
    lam = (mpf(1), mpf(2), mpf(3), mpf(5), mpf(7), mpf(11))
    g1, _ = gamma_coefficients(lam)
    assert g1 == (3 * 2 * 5 - 5 * 9) / mpf(24 * 4)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_uniform_vs_subcritical_coherence(m):
    u = uniform_estimate(5000, m, 0, C50).log_value
    s = subcritical_estimate(5000, m, C50).log_value
    assert abs(u - s) < mpf("0.5")


# ---------------------------------------------------------------- phase formulas


def test_subcritical_exponent_example():
    est = subcritical_estimate(1000, 5, C50)
    assert abs(est.terms["exponent_main"] - mpf("102.65")) < mpf("0.01")
    assert est.check()
    with pytest.raises(DomainError):
        subcritical_estimate(1000, 2, C50)


def test_subcritical_over_bessel_tends_to_one():
    gaps = [abs(subcritical_estimate(n, 3, C50).log_value - bessel_estimate(n, 3, C50).log_value) for n in (10**3, 10**5, 10**7)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < mpf("0.01")


def test_phi_shift_matters_at_m40():
    est = subcritical_estimate(10**6, 40, C50)
    with mpmath.workdps(C50.dps):
        varpi = mpmath.pi**2 / 24 * (41 + mpf(2) / 40)
        assert abs(est.terms["exponent_main"] - 2 * mpmath.sqrt(varpi * 10**6)) > 1


def test_bessel_anchor(exact_count):
    for m in (3, 8):
        assert abs(rel_err(bessel_estimate(5000, m, C50).log_value, exact_count(5000, m))) < mpf("0.001")


def test_supercritical_constants_and_trend(exact_count):
    k = supercritical_constants(C50)
    with mpmath.workdps(C50.dps):
        assert abs(k["beta1"] - 3 * mpmath.cbrt(mpmath.zeta(3)) / 2) < mpf(10) ** -50
        assert abs(k["beta2"] - mpmath.pi**2 / (24 * mpmath.cbrt(mpmath.zeta(3)))) < mpf(10) ** -50
    assert abs(k["beta1"] - mpf("1.594895")) < mpf(10) ** -5
    assert abs(k["beta2"] - mpf("0.38677")) < mpf(10) ** -5
    r3000 = abs(rel_err(supercritical_estimate(3000, C50).log_value, exact_count(3000)))
    r500 = abs(rel_err(supercritical_estimate(500, C50).log_value, exact_count(500)))
    assert r3000 < mpf("0.2")
    assert r3000 < r500


def test_critical_estimate(exact_count):
    est = critical_estimate(5000, 17, C50)
    assert abs(rel_err(est.log_value, exact_count(5000, 17))) < mpf("0.1")
    r = solve_r(est.diagnostics["alpha"], "bpp", C50).r
    with mpmath.workdps(C50.dps):
        assert abs(est.diagnostics["beta2"] - mpmath.pi**2 / (24 * r)) < mpf(10) ** -45
    assert est.diagnostics["r_1"] > 0 and est.check()
    n = 10**6
    gap = critical_estimate(n, n, C50).log_value - supercritical_estimate(n, C50).log_value
    assert abs(gap) / mpmath.cbrt(n) < mpf(10) ** -3


def test_gumbel_ratio():
    n = 10**9
    big = gumbel_ratio(n, 8, C50)
    assert abs(big["log_ratio_predicted"]) < mpf("0.01")
    zero = gumbel_ratio(n, 0, C50)
    assert abs(zero["log_ratio_predicted"] + 1) <= mpf("0.1")
    assert zero["log_ratio_model"] == -1
    low = gumbel_ratio(n, -2, C50)
    assert low["log_ratio_predicted"] < zero["log_ratio_predicted"]
    assert abs(low["m_implied"] - low["m"]) <= mpf(1) / 2


# ---------------------------------------------------------------- phases, V_m, varsigma


def test_phase_classify():
    n = 10**6
    assert phase_classify(n, 3)["phase"] == "subcritical"
    assert phase_classify(n, n)["phase"] == "supercritical"
    info = phase_classify(n, 500)
    assert info["phase"] == "critical"
    assert info["m_minus"] < info["m_plus"]
    # with omega_n = log log n the lower threshold at 10^6 sits near 227
    assert abs(info["m_minus"] - mpf("227.4")) < mpf("0.1")
    with pytest.raises(DomainError):
        phase_classify(2, 1)


def test_v_ratio_bounds():
    assert v_ratio(5, mpf("0.01"), 0) == 1
    for rho in (mpf("0.002"), mpf("0.01"), mpf("0.05")):
        for m in (3, 5, 10, 100):
            far = [rho + (mpmath.pi - rho) * i / 63 for i in range(64)]
            for t in far:
                assert v_ratio(m, rho, t) <= mpf(7) / 8
                assert v_ratio(m, rho, -t) <= mpf(7) / 8
            for i in range(1, 65):
                t = rho / 2 * i / 64
                assert v_ratio(m, rho, t) <= 1 - mpf("0.3") * t**2 / rho**2


def test_sigma_j_poly():
    assert sigma_j_poly(1, 5) == 20
    assert sigma_j_poly(2, 5) == 50
    for m in range(1, 21):
        assert sigma_j_poly(1, m) == Fraction(m * (m * m - 1), 6)
        for j in range(1, 11):
            assert sigma_j_poly(j, m) == sum((m - k) * k**j for k in range(1, m))
    # degree j + 2 polynomial vanishing at m = 0 and m = 1: Lagrange-extrapolate
    # from m = 1..j+3 and check the value at 0 and the top finite difference
    for j in range(1, 7):
        xs = list(range(1, j + 4))
        ys = [sigma_j_poly(j, x) for x in xs]
        at0 = Fraction(0)
        for i, (xi, yi) in enumerate(zip(xs, ys)):
            w = Fraction(1)
            for k, xk in enumerate(xs):
                if k != i:
                    w *= Fraction(0 - xk, xi - xk)
            at0 += w * yi
        assert at0 == 0 and ys[0] == 0
        diffs = ys
        for _ in range(j + 2):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        assert diffs[0] != 0
    with pytest.raises(DomainError):
        sigma_j_poly(11, 4)
