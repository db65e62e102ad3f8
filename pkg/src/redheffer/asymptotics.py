"""Constants and asymptotic estimates, each with a rigorous truncation bound.

Partial sums/products are formed exactly (or at high precision when the
terms are irrational) and only the final value is rounded, so the reported
``error_bound`` is the tail bound plus a rounding allowance of 10^-digits.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .arithmetic import fibonacci_numbers, fibonorial, mobius_table, zeta
from .exact_det import det_closed_form
from .matrices import generalized, power_sequence

DEFAULT_DIGITS = int(os.environ.get("REDHEFFER_DIGITS", "30"))


@dataclass(frozen=True)
class AsymptoticReport:
    name: str
    value: mpmath.mpf
    error_bound: mpmath.mpf
    truncation: int

    def as_dict(self, digits: int = DEFAULT_DIGITS) -> dict:
        with mpmath.workdps(digits + 10):
            return {
                "name": self.name,
                "value": mpmath.nstr(self.value, digits),
                "error_bound": mpmath.nstr(self.error_bound, 6),
                "k0": self.truncation,
            }

    def covers(self, reference, reference_halfwidth=0) -> bool:
        """|reference - value| <= error_bound + reference_halfwidth, evaluated at working precision."""
        with mpmath.workdps(max(mpmath.mp.dps, DEFAULT_DIGITS) + 20):
            ref = mpmath.mpf(reference) if not isinstance(reference, Fraction) else _to_mpf(reference)
            return abs(self.value - ref) <= self.error_bound + mpmath.mpf(reference_halfwidth)


def _phi() -> mpmath.mpf:
    return (1 + mpmath.sqrt(5)) / 2


def _to_mpf(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def c_partial_sum(k0: int) -> Fraction:
    """sum_{k=1}^{k0} mu(k) / F_k, exactly."""
    if k0 < 1:
        raise ValueError("k0 must be >= 1")
    table = mobius_table(k0)
    fib = fibonacci_numbers(k0)
    return sum((Fraction(table.mu(k), fib[k - 1]) for k in range(1, k0 + 1)), Fraction(0))


def c_tail_bound(k0: int) -> mpmath.mpf:
    """phi^(2 - k0) / (phi - 1), which bounds |sum_{k>k0} mu(k) / F_k| since F_k >= phi^(k-2)."""
    phi = _phi()
    return phi ** (2 - k0) / (phi - 1)


def constant_C(tol: float = 1e-12, digits: int = DEFAULT_DIGITS, k0: int | None = None) -> AsymptoticReport:
    """The limit of sum_k mu(k) / F_k, truncated at the smallest k0 whose tail bound is <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    with mpmath.workdps(digits + 10):
        if k0 is None:
            k0 = 1
            while c_tail_bound(k0) > tol:
                k0 += 1
        value = _to_mpf(c_partial_sum(k0))
        bound = c_tail_bound(k0) + mpmath.mpf(10) ** (-digits)
        return AsymptoticReport("C", value, bound, k0)


def _b() -> mpmath.mpf:
    return -1 / _phi() ** 2


def constant_C_phi(tol: float = 1e-12, digits: int = DEFAULT_DIGITS, K: int | None = None) -> AsymptoticReport:
    """prod_{k>=1} (1 - b^k) with b = -phi^-2.

    With t = |b|^(K+1) / ((1 - |b|)(1 - |b|^(K+1))) bounding |log| of the
    omitted factors, the truncated product P_K satisfies
    |P_inf - P_K| <= P_K (e^t - 1).  K is the smallest with that <= tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    with mpmath.workdps(digits + 10):
        b = _b()
        ab = abs(b)

        def tail(K):
            return ab ** (K + 1) / ((1 - ab) * (1 - ab ** (K + 1)))

        value = mpmath.mpf(1)
        k = 0
        while True:
            k += 1
            value *= 1 - b**k
            bound = value * mpmath.expm1(tail(k))
            if (K is not None and k >= K) or (K is None and bound <= tol):
                break
        bound += mpmath.mpf(10) ** (-digits)
        return AsymptoticReport("C_phi", value, bound, k)


def constant_C0(tol: float = 1e-12, digits: int = DEFAULT_DIGITS) -> AsymptoticReport:
    """C * C_phi with the product error bound |C| e_phi + |C_phi| e_C + e_C e_phi."""
    c = constant_C(tol / 4, digits)
    cphi = constant_C_phi(tol / 4, digits)
    with mpmath.workdps(digits + 10):
        value = c.value * cphi.value
        bound = abs(c.value) * cphi.error_bound + abs(cphi.value) * c.error_bound + c.error_bound * cphi.error_bound
        return AsymptoticReport("C_0", value, bound, max(c.truncation, cphi.truncation))


def golden_ratio_report(digits: int = DEFAULT_DIGITS) -> AsymptoticReport:
    with mpmath.workdps(digits + 10):
        return AsymptoticReport("phi", _phi(), mpmath.mpf(10) ** (-digits), 0)


def b_report(digits: int = DEFAULT_DIGITS) -> AsymptoticReport:
    with mpmath.workdps(digits + 10):
        return AsymptoticReport("b", _b(), mpmath.mpf(10) ** (-digits), 0)


def euler_gamma_report(digits: int = DEFAULT_DIGITS) -> AsymptoticReport:
    with mpmath.workdps(digits + 10):
        return AsymptoticReport("gamma", +mpmath.euler, mpmath.mpf(10) ** (-digits), 0)


# -- log-scale determinant asymptotics ----------------------------------------


def log_abs(x) -> float:
    """ln|x| for big ints / Fractions without overflowing floats."""
    x = Fraction(x)
    if x == 0:
        return -math.inf
    return math.log(abs(x.numerator)) - math.log(x.denominator)


@dataclass(frozen=True)
class LogEstimate:
    sign: int
    log_magnitude: float


def det_asymptotic(n: int) -> LogEstimate:
    """det F_R(n) ~ C_0 phi^(n(n+1)/2) 5^(-n/2), on a log scale."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c0 = constant_C0(1e-15)
    phi = (1 + math.sqrt(5)) / 2
    log_mag = math.log(abs(float(c0.value))) + n * (n + 1) / 2 * math.log(phi) - n / 2 * math.log(5)
    return LogEstimate(sign=-1, log_magnitude=log_mag)


def fibonorial_log_estimate(n: int) -> float:
    """ln C_phi + (n(n+1)/2) ln phi - (n/2) ln 5."""
    cphi = constant_C_phi(1e-15)
    phi = (1 + math.sqrt(5)) / 2
    return math.log(float(cphi.value)) + n * (n + 1) / 2 * math.log(phi) - n / 2 * math.log(5)


def fibonorial_log_residual(n: int) -> float:
    """ln(n!_F) minus its asymptotic estimate, computed at high precision."""
    with mpmath.workdps(40):
        exact = mpmath.log(fibonorial(n))
        phi = _phi()
        cphi = constant_C_phi(1e-35, digits=40).value
        est = mpmath.log(cphi) + mpmath.mpf(n * (n + 1)) / 2 * mpmath.log(phi) - mpmath.mpf(n) / 2 * mpmath.log(5)
        return float(exact - est)


@dataclass(frozen=True)
class TraceRadiusReport:
    n: int
    trace: int
    trace_estimate: float
    trace_ratio: float
    spectral_radius: float | None
    radius_estimate: float
    radius_ratio: float | None


def trace_and_radius_asymptotics(n: int, include_radius: bool = True) -> TraceRadiusReport:
    """Exact trace F_{n+2} - 1 against phi^(n+2)/sqrt5, and lambda_n against phi^n/sqrt5."""
    if n < 3:
        raise ValueError("n must be >= 3")
    from .spectral import eigenvalue

    trace = sum(fibonacci_numbers(n))
    with mpmath.workdps(30):
        phi = _phi()
        t_est = phi ** (n + 2) / mpmath.sqrt(5)
        r_est = phi**n / mpmath.sqrt(5)
        t_ratio = float(mpmath.mpf(trace) / t_est)
    rho = ratio = None
    if include_radius:
        pair = eigenvalue(n, n)
        with mpmath.workdps(30):
            mid = pair.midpoint
            rho = float(mid)
            ratio = float(_to_mpf(mid) / r_est)
    return TraceRadiusReport(n, trace, float(t_est), t_ratio, rho, float(r_est), ratio)


# -- zeta-related partial sums ------------------------------------------------


def _checkpoints(n_max: int, points) -> list[int]:
    if points is None:
        pts = {1, n_max}
        p = 10
        while p < n_max:
            pts.add(p)
            p *= 10
        return sorted(pts)
    pts = sorted(set(int(p) for p in points))
    if pts and (pts[0] < 1 or pts[-1] > n_max):
        raise ValueError("checkpoints must lie in 1..n_max")
    return pts


@dataclass(frozen=True)
class SeriesPoint:
    n: int
    partial_sum: float
    target: float | None


def zeta_inverse_partial_sums(p: float, n_max: int, points=None) -> list[SeriesPoint]:
    """sum_{k<=n} mu(k) / k^p at the checkpoints, against the target 1/zeta(p)."""
    if p <= 1:
        raise ValueError("p must exceed 1")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    table = mobius_table(n_max)
    mu = np.asarray(table.values[1 : n_max + 1], dtype=np.float64)
    k = np.arange(1, n_max + 1, dtype=np.float64)
    partial = np.cumsum(mu * k ** (-float(p)))
    target = 1.0 / zeta(p, 1e-13)
    return [SeriesPoint(n, float(partial[n - 1]), target) for n in _checkpoints(n_max, points)]


NEG_TWO_GAMMA = -2 * 0.5772156649015329


def example2_partial_sums(n_max: int, points=None) -> list[SeriesPoint]:
    """sum_{k<=n} mu(k) ln^2(k) / k at the checkpoints.

    Reporting only: the series converges far too slowly for any tolerance
    against its limit to be meaningful at this scale, so ``target`` is None.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    table = mobius_table(n_max)
    mu = np.asarray(table.values[1 : n_max + 1], dtype=np.float64)
    k = np.arange(1, n_max + 1, dtype=np.float64)
    partial = np.cumsum(mu * np.log(k) ** 2 / k)
    return [SeriesPoint(n, float(partial[n - 1]), None) for n in _checkpoints(n_max, points)]


@dataclass(frozen=True)
class GeneralizedDetCheck:
    p: int
    n: int
    det: Fraction
    log_abs_det: float
    log_estimate: float
    log_ratio: float
    sign_matches_sum: bool


def det_generalized_asymptotic_check(p: int, n: int) -> GeneralizedDetCheck:
    """Exact det of the a_j = j^p matrix against zeta(p)^-1 (2 n pi)^(p/2) (n/e)^(np)."""
    if p <= 1:
        raise ValueError("p must exceed 1")
    if int(p) != p:
        raise ValueError("only integer p keeps the determinant exact")
    p = int(p)
    spec = generalized(power_sequence(n, p))
    det = det_closed_form(spec)
    table = mobius_table(n)
    msum = 1 + sum((Fraction(table.mu(k), k**p) for k in range(2, n + 1)), Fraction(0))
    log_det = log_abs(det)
    est = -math.log(zeta(p, 1e-13)) + p / 2 * math.log(2 * n * math.pi) + n * p * (math.log(n) - 1)
    ratio = log_det / est if est != 0 else math.nan
    sign_ok = (det > 0) == (msum > 0) and (det != 0) == (msum != 0)
    return GeneralizedDetCheck(p, n, det, log_det, est, ratio, sign_ok)
