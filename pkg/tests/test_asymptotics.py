import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from redheffer.arithmetic import fibonorial
from redheffer.asymptotics import (
    c_partial_sum,
    c_tail_bound,
    constant_C,
    constant_C0,
    constant_C_phi,
    det_asymptotic,
    det_generalized_asymptotic_check,
    example2_partial_sums,
    fibonorial_log_residual,
    log_abs,
    trace_and_radius_asymptotics,
    zeta_inverse_partial_sums,
)
from redheffer.exact_det import det_closed_form
from redheffer.matrices import fibonacci_spec


def oracle_C(terms=400):
    """sum mu(k)/F_k at 60 digits from sympy's mu and F; the tail past 400 is < 1e-80."""
    with mpmath.workdps(60):
        return sum(mpmath.mpf(int(sympy.mobius(k))) / int(sympy.fibonacci(k)) for k in range(1, terms + 1))


def oracle_C_phi(terms=300):
    with mpmath.workdps(60):
        b = -1 / mpmath.phi**2
        return mpmath.fprod(1 - b**k for k in range(1, terms + 1))


@pytest.mark.parametrize("tol", [1e-6, 1e-10, 1e-14, 1e-20])
def test_C_error_bound_is_honest(tol):
    rep = constant_C(tol, digits=40)
    assert rep.error_bound <= tol * 1.0001
    with mpmath.workdps(60):
        assert abs(rep.value - oracle_C()) <= rep.error_bound


@pytest.mark.parametrize("tol", [1e-6, 1e-12, 1e-20])
def test_C_phi_error_bound_is_honest(tol):
    rep = constant_C_phi(tol, digits=40)
    with mpmath.workdps(60):
        assert abs(rep.value - oracle_C_phi()) <= rep.error_bound <= tol * 1.0001


def test_C0_error_bound_is_honest():
    rep = constant_C0(1e-15, digits=40)
    with mpmath.workdps(60):
        assert abs(rep.value - oracle_C() * oracle_C_phi()) <= rep.error_bound


def test_C_k0_is_minimal():
    rep = constant_C(1e-8)
    assert c_tail_bound(rep.truncation) <= 1e-8 < c_tail_bound(rep.truncation - 1)


def test_C_explicit_k0():
    rep = constant_C(k0=12)
    assert rep.truncation == 12
    assert float(rep.value) == pytest.approx(float(c_partial_sum(12)), abs=1e-15)


def test_partial_sum_k0_two_is_zero():
    assert c_partial_sum(2) == 0


@pytest.mark.parametrize("k0", range(3, 201))
def test_partial_sums_negative(k0):
    assert c_partial_sum(k0) < 0


def test_tail_bound_nonincreasing():
    bounds = [c_tail_bound(k) for k in range(1, 120)]
    assert all(a >= b for a, b in zip(bounds, bounds[1:]))


def test_partial_sum_against_independent_sum():
    expected = sum(Fraction(int(sympy.mobius(k)), int(sympy.fibonacci(k))) for k in range(1, 31))
    assert c_partial_sum(30) == expected


@pytest.mark.parametrize("n", [10, 20, 40, 80])
def test_fibonorial_residual_bounded_by_b_power(n):
    b = 1 / ((1 + 5**0.5) / 2) ** 2
    assert abs(fibonorial_log_residual(n)) <= 2 * b**n / (1 - b)


def test_fibonorial_residual_sign_and_size():
    # the omitted factors prod_{k>n}(1 - b^k) pull the estimate around by about |b|^(n+1)
    with mpmath.workdps(40):
        assert abs(fibonorial_log_residual(15)) > 0
        assert abs(fibonorial_log_residual(15)) < 1e-6


@pytest.mark.parametrize("n", [20, 40, 60])
def test_det_log_asymptotic(n):
    exact = det_closed_form(fibonacci_spec(n))
    est = det_asymptotic(n)
    assert (exact < 0) == (est.sign < 0)
    assert abs(log_abs(exact) - est.log_magnitude) / log_abs(exact) < 0.01


def test_trace_ratio():
    rep = trace_and_radius_asymptotics(30)
    assert rep.trace == sympy.fibonacci(32) - 1
    assert abs(rep.trace_ratio - 1) < 1e-6
    assert abs(rep.radius_ratio - 1) < 1e-6


def test_trace_without_radius():
    rep = trace_and_radius_asymptotics(12, include_radius=False)
    assert rep.spectral_radius is None and rep.radius_ratio is None


def test_zeta_inverse_partial_sums():
    rows = zeta_inverse_partial_sums(2, 10**5)
    assert [r.n for r in rows] == [1, 10, 100, 1000, 10000, 100000]
    assert rows[-1].target == pytest.approx(6 / math.pi**2, abs=1e-12)
    assert abs(rows[-1].partial_sum - rows[-1].target) < 1e-4
    assert rows[0].partial_sum == 1.0


def test_zeta_inverse_custom_points():
    rows = zeta_inverse_partial_sums(3, 50, points=[5, 50])
    exact = sum(Fraction(int(sympy.mobius(k)), k**3) for k in range(1, 6))
    assert rows[0].partial_sum == pytest.approx(float(exact), rel=1e-14)
    with pytest.raises(ValueError):
        zeta_inverse_partial_sums(2, 10, points=[11])


def test_example2_partial_sums_report_only():
    rows = example2_partial_sums(1000)
    assert all(r.target is None for r in rows)
    expected = sum(int(sympy.mobius(k)) * math.log(k) ** 2 / k for k in range(1, 101))
    assert rows[2].n == 100
    assert rows[2].partial_sum == pytest.approx(expected, rel=1e-12)


@given(st.integers(min_value=2, max_value=4), st.integers(min_value=2, max_value=60))
def test_generalized_det_sign_matches_mobius_sum(p, n):
    assert det_generalized_asymptotic_check(p, n).sign_matches_sum


def test_generalized_det_p3_n50():
    check = det_generalized_asymptotic_check(3, 50)
    msum = 1 + sum(Fraction(int(sympy.mobius(k)), k**3) for k in range(2, 51))
    assert (check.det > 0) == (msum > 0)
    assert check.det == math.factorial(50) ** 3 * msum


def test_generalized_log_ratio_tends_to_one():
    ratios = [det_generalized_asymptotic_check(2, n).log_ratio for n in (50, 200, 800)]
    assert all(abs(r - 1) < 1e-3 for r in ratios)


def test_generalized_rejects_non_integer_power():
    with pytest.raises(ValueError):
        det_generalized_asymptotic_check(2.5, 10)


def test_values_keep_their_precision():
    rep = constant_C(1e-35, digits=45)
    with mpmath.workdps(60):
        assert abs(rep.value - oracle_C()) < 1e-34
    assert rep.covers(oracle_C(), 0)


def test_reports_serialise():
    d = constant_C(1e-10, digits=20).as_dict(20)
    assert set(d) == {"name", "value", "error_bound", "k0"}
    assert d["value"].startswith("-0.6457247182")


def test_fibonorial_growth_uses_exact_ints():
    assert log_abs(fibonorial(300)) > 700  # well past float overflow in the value itself
