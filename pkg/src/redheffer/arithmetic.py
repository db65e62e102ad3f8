"""Number-theoretic primitives: Moebius/Mertens, divisors, Fibonacci, zeta."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def _require_positive(name: str, value: int) -> None:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")


@dataclass(frozen=True)
class MobiusTable:
    """Moebius values and Mertens prefix sums for 1..limit.

    Both sequences carry a dummy slot at index 0 so that ``values[k]`` is
    mu(k) and ``mertens_prefix[k]`` is M(k); ``mertens_prefix[0] == 0``.
    """

    limit: int
    values: tuple[int, ...]
    mertens_prefix: tuple[int, ...]

    def mu(self, k: int) -> int:
        if not 1 <= k <= self.limit:
            raise IndexError(f"{k} outside table range 1..{self.limit}")
        return self.values[k]

    def mertens(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"{n} outside table range 1..{self.limit}")
        return self.mertens_prefix[n]


def mobius_sieve(limit: int) -> MobiusTable:
    """Linear sieve: every composite is struck once, by its smallest prime."""
    _require_positive("limit", limit)
    mu = [0] * (limit + 1)
    mu[1] = 1
    is_composite = bytearray(limit + 1)
    primes: list[int] = []
    for i in range(2, limit + 1):
        if not is_composite[i]:
            primes.append(i)
            mu[i] = -1
        mu_i = mu[i]
        for p in primes:
            ip = i * p
            if ip > limit:
                break
            is_composite[ip] = 1
            if i % p == 0:
                # p^2 | ip
                mu[ip] = 0
                break
            mu[ip] = -mu_i
    prefix = [0] * (limit + 1)
    running = 0
    for k in range(1, limit + 1):
        running += mu[k]
        prefix[k] = running
    return MobiusTable(limit=limit, values=tuple(mu), mertens_prefix=tuple(prefix))


_shared_table: MobiusTable | None = None


def mobius_table(limit: int) -> MobiusTable:
    """Return a shared table covering at least ``limit`` (grown geometrically)."""
    global _shared_table
    _require_positive("limit", limit)
    if _shared_table is None or _shared_table.limit < limit:
        size = max(limit, 1024)
        if _shared_table is not None:
            size = max(size, 2 * _shared_table.limit)
        _shared_table = mobius_sieve(size)
    return _shared_table


def mobius(k: int) -> int:
    _require_positive("k", k)
    return mobius_table(k).mu(k)


def mertens(n: int) -> int:
    """M(n) = mu(1) + ... + mu(n)."""
    _require_positive("n", n)
    return mobius_table(n).mertens(n)


def divisors(k: int) -> list[int]:
    """Divisors of ``k`` in ascending order."""
    _require_positive("k", k)
    small, large = [], []
    d = 1
    while d * d <= k:
        if k % d == 0:
            small.append(d)
            if d * d != k:
                large.append(k // d)
        d += 1
    return small + large[::-1]


def mobius_divisor_sum(d: int) -> int:
    """Sum of mu(d/m) over the divisors m of d; 1 for d == 1 and 0 otherwise."""
    _require_positive("d", d)
    table = mobius_table(d)
    return sum(table.mu(d // m) for m in divisors(d))


def divisor_count_sum(n: int) -> int:
    """d(1) + ... + d(n), via the floor-sum sum_i floor(n / i)."""
    _require_positive("n", n)
    total = 0
    i = 1
    while i <= n:
        q = n // i
        last = n // q
        total += q * (last - i + 1)
        i = last + 1
    return total


@dataclass(frozen=True)
class FibCache:
    """F_1..F_limit and the running fibonorials, as Python ints.

    Index 0 holds F_0 = 0 and 0!_F = 1 so that ``fib[n]`` is F_n.
    """

    limit: int
    fib: tuple[int, ...]
    fibonorial: tuple[int, ...]

    def F(self, n: int) -> int:
        return self.fib[n]


def fib_cache(limit: int) -> FibCache:
    _require_positive("limit", limit)
    fib = [0, 1]
    for _ in range(2, limit + 1):
        fib.append(fib[-1] + fib[-2])
    fact = [1]
    for k in range(1, limit + 1):
        fact.append(fact[-1] * fib[k])
    return FibCache(limit=limit, fib=tuple(fib[: limit + 1]), fibonorial=tuple(fact))


@lru_cache(maxsize=8)
def _fib_list(limit: int) -> tuple[int, ...]:
    # Fibonacci numbers only: running fibonorials up to ``limit`` would cost
    # memory quadratic in ``limit``.
    fib = [0, 1]
    for _ in range(2, limit + 1):
        fib.append(fib[-1] + fib[-2])
    return tuple(fib)


def _padded(n: int) -> int:
    return max(64, 1 << (n - 1).bit_length())


def fibonacci(n: int) -> int:
    """F_n with F_1 = F_2 = 1."""
    _require_positive("n", n)
    return _fib_list(_padded(n))[n]


def fibonacci_numbers(n: int) -> tuple[int, ...]:
    """(F_1, ..., F_n)."""
    _require_positive("n", n)
    return _fib_list(_padded(n))[1 : n + 1]


def fibonorial(n: int) -> int:
    """n!_F = F_1 F_2 ... F_n."""
    _require_positive("n", n)
    return math.prod(fibonacci_numbers(n))


GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


def zeta(p: float, tol: float = 1e-12) -> float:
    """Riemann zeta at real ``p > 1`` with ``|result - zeta(p)| <= tol``.

    With f(t) = t^-p, summing the trapezoid rule over [k, k+1] for k >= K gives
    sum_{k>K} f(k) = int_K^inf f - f(K)/2 + E, where 0 <= E <= (|f'(K)| + f''(K))/12
    because f'' is positive and decreasing.  Adding E's midpoint leaves an
    error of at most half that bound.
    """
    if p <= 1:
        raise ValueError(f"zeta needs p > 1, got {p}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    p = float(p)
    # leave a sliver of the budget for floating-point summation error
    budget = tol * 0.9

    def e_bound(K: int) -> float:
        return p * K ** (-p - 1) * (1 + (p + 1) / K) / 12

    K = max(2, math.ceil((p / (6 * budget)) ** (1.0 / (p + 1))))
    while e_bound(K) / 2 > budget:
        K *= 2
    if K > 50_000_000:
        raise ValueError(f"tolerance {tol} is out of reach for p={p} (needs K={K})")
    k = np.arange(1, K + 1, dtype=np.float64)
    head = math.fsum(k ** (-p))
    tail = K ** (1 - p) / (p - 1) - 0.5 * K ** (-p) + 0.5 * e_bound(K)
    return head + tail
