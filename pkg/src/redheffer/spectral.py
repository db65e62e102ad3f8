"""Certified spectra of Fibonacci-Redheffer matrices and their generalizations.

Eigenvalues come from bisection on the exact characteristic polynomial: each
sign is decided in integer arithmetic at a dyadic rational, so every bracket
is a certificate.  For the Fibonacci kind the starting brackets are the
interlacing intervals between consecutive Fibonacci numbers; since the n
brackets are pairwise disjoint and each shows a sign change, each holds
exactly one eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

import numpy as np

from .arithmetic import divisors, fibonacci_numbers
from .exact_det import CharPoly, charpoly, charpoly_matrix
from .matrices import DivisorMatrix, MatrixSpec, build, fibonacci_spec, is_exact
from .poly import Polynomial, poly_gcd, sign_at

DEFAULT_TOL = 1e-10
MAX_BISECTIONS = 5000


class PoleError(ValueError):
    """Evaluation point coincides with a pole F_k of the secular function."""

    def __init__(self, z, pole, k):
        super().__init__(f"z={z} hits the pole F_{k} = {pole}")
        self.z = z
        self.pole = pole
        self.k = k


class BracketError(RuntimeError):
    """Proposed bracket endpoints fail the exact sign test."""


@dataclass
class EigenPair:
    index: int
    value: float
    bracket: tuple[Fraction, Fraction] | None
    vector: list[float]
    residual: float
    left: list[float] | None = None
    exact_value: Fraction | None = None

    @property
    def midpoint(self) -> Fraction | None:
        if self.bracket is None:
            return None
        return (self.bracket[0] + self.bracket[1]) / 2


def omega(n: int) -> int:
    return n // 2


def _tol_fraction(tol) -> Fraction:
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    return Fraction(tol)


# -- brackets ----------------------------------------------------------------


def _proposed_brackets(n: int) -> list[tuple[Fraction, Fraction]]:
    fib = (0,) + fibonacci_numbers(n + 1)
    w = omega(n)
    trace = sum(fib[1 : n + 1])
    out = [(Fraction(w + 3 - n - fib[w + 2]), Fraction(0))]
    for i in range(2, n):
        if n >= 10 and i >= w + 2:
            out.append((Fraction(fib[i]), Fraction(fib[i] + 1)))
        else:
            out.append((Fraction(fib[i]), Fraction(fib[i + 1])))
    if n >= 10:
        out.append((Fraction(fib[n]), Fraction(fib[n] + 1)))
    else:
        out.append((Fraction(fib[n]), Fraction(trace + 1)))
    return out


def _fallback_brackets(n: int) -> list[tuple[Fraction, Fraction]]:
    """Wider intervals: plain interlacing, and a row-sum bound for the extremes."""
    fib = (0,) + fibonacci_numbers(n + 1)
    bound = Fraction(max([n] + [1 + fib[i] * (n // i) for i in range(2, n + 1)]) + 1)
    out = [(-bound, Fraction(0))]
    out += [(Fraction(fib[i]), Fraction(fib[i + 1])) for i in range(2, n)]
    out.append((Fraction(fib[n]), bound))
    return out


def _opposite(cp: CharPoly, lo: Fraction, hi: Fraction) -> bool:
    a, b = cp.sign_at(lo), cp.sign_at(hi)
    return a != 0 and b != 0 and a != b


def brackets(n: int, cp: CharPoly | None = None) -> list[tuple[Fraction, Fraction]]:
    """n disjoint rational intervals, one eigenvalue of F_R(n) in each.

    Interval 1 is (omega + 3 - n - F_{omega+2}, 0); interval i in 2..n-1 is
    (F_i, F_{i+1}), tightened to (F_i, F_i + 1) when n >= 10 and
    i >= omega + 2; interval n is (F_n, 1 + trace), or (F_n, F_n + 1) when
    n >= 10.  Each pair of endpoints is checked for an exact sign change;
    on failure the wider fallback interval is tried before giving up.
    """
    if n < 3:
        raise ValueError("brackets need n >= 3; n = 1, 2 have exact spectra {1} and {0, 2}")
    if cp is None:
        cp = charpoly(fibonacci_spec(n))
    proposed = _proposed_brackets(n)
    fallback = _fallback_brackets(n)
    out = []
    for i, (first, second) in enumerate(zip(proposed, fallback), start=1):
        if _opposite(cp, *first):
            out.append(first)
        elif _opposite(cp, *second):
            out.append(second)
        else:
            raise BracketError(f"no sign change for eigenvalue {i} of F_R({n}) on {first} or {second}")
    return out


def _pole_gap(lo: Fraction, hi: Fraction, poles: Sequence[int]) -> Fraction:
    best = None
    for p in poles:
        d = Fraction(0) if lo <= p <= hi else min(abs(p - lo), abs(p - hi))
        if best is None or d < best:
            best = d
    return Fraction(1) if best is None else best


def refine(cp: CharPoly, lo: Fraction, hi: Fraction, tol, poles: Sequence[int] = ()) -> tuple[Fraction, Fraction]:
    """Bisect a sign-change bracket down to width <= tol * min(1, distance to poles).

    Returns a degenerate (x, x) bracket if a midpoint is an exact root.
    """
    tol = _tol_fraction(tol)
    s_lo = cp.sign_at(lo)
    if s_lo == 0:
        return lo, lo
    if cp.sign_at(hi) == 0:
        return hi, hi
    for _ in range(MAX_BISECTIONS):
        width = hi - lo
        if width <= tol * min(Fraction(1), _pole_gap(lo, hi, poles)):
            return lo, hi
        mid = (lo + hi) / 2
        s = cp.sign_at(mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    raise BracketError(f"bisection did not converge on ({lo}, {hi})")


# -- eigenvectors / secular function ------------------------------------------


def _check_pole(z, fib: Sequence[int]) -> None:
    for k in range(2, len(fib) + 1):
        f = fib[k - 1]
        if is_exact(z):
            if z == f:
                raise PoleError(z, f, k)
        elif abs(z - f) <= 1e-12 * max(1.0, abs(f)):
            raise PoleError(z, f, k)


def eigenvector(n: int, lam) -> list:
    """Right eigenvector of F_R(n) for eigenvalue ``lam``, scaled so x_1 = 1.

    Works backwards: x_k = (1 + F_k * sum_{m>=2, km<=n} x_{km}) / (lam - F_k),
    which reduces to 1 / (lam - F_k) for k > n // 2.  Exact when ``lam`` is
    a Fraction.
    """
    fib = fibonacci_numbers(n)
    _check_pole(lam, fib)
    x = [None] * (n + 1)
    x[1] = Fraction(1) if is_exact(lam) else 1.0
    for k in range(n, 1, -1):
        tail = sum((x[j] for j in range(2 * k, n + 1, k)), 0)
        x[k] = (1 + fib[k - 1] * tail) / (lam - fib[k - 1])
    return x[1:]


@dataclass
class QSample:
    z: object
    q: object
    ratios: list = field(default_factory=list)


def q_eval(n: int, z) -> QSample:
    """Secular function Q(z) = (1 - z) + sum_{k>=2} x_k(z) with x_1 = 1.

    chi(z) = -Q(z) * prod_{k=2}^n (z - F_k) wherever Q is defined.
    """
    x = eigenvector(n, z)
    q = (1 - z) + sum(x[1:], 0)
    return QSample(z=z, q=q, ratios=x)


def secular_product(n: int, z):
    """prod_{k=2}^n (z - F_k)."""
    out = 1
    for f in fibonacci_numbers(n)[1:]:
        out *= z - f
    return out


def q_samples(n: int, z_lo: float, z_hi: float, count: int = 2001, guard: float = 1e-4) -> list[tuple[float, float]]:
    """(z, Q(z)) on a uniform grid, skipping points within ``guard`` of a pole."""
    if count < 2 or z_hi <= z_lo:
        raise ValueError("need count >= 2 and z_hi > z_lo")
    poles = fibonacci_numbers(n)[1:]
    out = []
    for z in np.linspace(z_lo, z_hi, count):
        z = float(z)
        if any(abs(z - p) < guard for p in poles):
            continue
        out.append((z, float(q_eval(n, z).q)))
    return out


def left_eigenvector(m: DivisorMatrix | MatrixSpec, lam) -> list:
    """Left eigenvector y (y^T A = lam y^T) with y_1 = 1.

    Columns 2..n of A hold only the divisor entries, so rows 2..n of the
    transposed system are lower triangular and solved by forward
    substitution; row 1 is the consistency condition (for the Fibonacci
    kind it reads sum_i y_i = lam * y_1).
    """
    if isinstance(m, MatrixSpec):
        m = build(m)
    n = m.n
    y = [None] * (n + 1)
    y[1] = Fraction(1) if is_exact(lam) else 1.0
    for j in range(2, n + 1):
        wj = m.weights[j - 1]
        diff = lam - wj
        if (is_exact(lam) and diff == 0) or (not is_exact(lam) and abs(diff) <= 1e-12 * max(1.0, abs(float(wj)))):
            raise PoleError(lam, wj, j)
        acc = 0
        for i in divisors(j)[:-1]:
            acc += m.entry(i, j) * y[i]
        y[j] = acc / diff
    return y[1:]


def residual_inf(m: DivisorMatrix, lam, x: Sequence) -> float:
    ax = m.matvec(x)
    return max(float(abs(v - lam * xi)) for v, xi in zip(ax, x))


def matrix_inf_norm(m: DivisorMatrix) -> float:
    return max(float(sum(abs(v) for _, v in m.row_items(i))) for i in range(1, m.n + 1))


# -- Fibonacci eigenvalues ----------------------------------------------------


def _pair_from_bracket(m: DivisorMatrix, i: int, lo: Fraction, hi: Fraction, with_left: bool) -> EigenPair:
    mid = (lo + hi) / 2
    x = eigenvector(m.n, mid)
    res = residual_inf(m, mid, x)
    left = [float(v) for v in left_eigenvector(m, mid)] if with_left else None
    return EigenPair(
        index=i,
        value=float(mid),
        bracket=(lo, hi),
        vector=[float(v) for v in x],
        residual=res,
        left=left,
        exact_value=mid if lo == hi else None,
    )


def eigenvalues(n: int, tol: float = DEFAULT_TOL, with_left: bool = False) -> list[EigenPair]:
    """All eigenvalues of F_R(n), ascending, each with a certified bracket."""
    _tol_fraction(tol)
    m = build(fibonacci_spec(n))
    if n == 1:
        one = Fraction(1)
        return [EigenPair(1, 1.0, (one, one), [1.0], 0.0, [1.0] if with_left else None, one)]
    if n == 2:
        out = []
        for i, lam in enumerate((Fraction(0), Fraction(2)), start=1):
            out.append(_pair_from_bracket(m, i, lam, lam, with_left))
        return out
    cp = charpoly_matrix(m)
    poles = fibonacci_numbers(n)[1:]
    out = []
    for i, (lo, hi) in enumerate(brackets(n, cp), start=1):
        lo, hi = refine(cp, lo, hi, tol, poles)
        out.append(_pair_from_bracket(m, i, lo, hi, with_left))
    return out


def eigenvalue(n: int, i: int, tol: float = DEFAULT_TOL) -> EigenPair:
    """Just the i-th eigenvalue (1-based) of F_R(n)."""
    if not 1 <= i <= n:
        raise ValueError(f"index {i} outside 1..{n}")
    if n < 3:
        return eigenvalues(n, tol)[i - 1]
    m = build(fibonacci_spec(n))
    cp = charpoly_matrix(m)
    lo, hi = brackets(n, cp)[i - 1]
    lo, hi = refine(cp, lo, hi, tol, fibonacci_numbers(n)[1:])
    return _pair_from_bracket(m, i, lo, hi, with_left=False)


# -- Gershgorin ---------------------------------------------------------------


@dataclass(frozen=True)
class Disk:
    center: Fraction
    radius: Fraction

    def contains_disk(self, other: "Disk") -> bool:
        return abs(other.center - self.center) + other.radius <= self.radius

    def meets(self, other: "Disk") -> bool:
        return abs(other.center - self.center) <= self.radius + other.radius


def gershgorin(m: DivisorMatrix) -> list[Disk]:
    out = []
    for i in range(1, m.n + 1):
        center = m.entry(i, i)
        radius = sum((abs(v) for j, v in m.row_items(i) if j != i), Fraction(0))
        out.append(Disk(center, radius))
    return out


def isolated_disks(disks: Sequence[Disk]) -> list[int]:
    """1-based indices of disks that meet no other disk."""
    return [
        i + 1
        for i, d in enumerate(disks)
        if not any(d.meets(e) for j, e in enumerate(disks) if j != i)
    ]


# -- general real-root isolation (for the generalized kind) -------------------


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: p = lead * prod a_i^i with a_i monic, square-free, coprime."""
    out = []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = p.divmod(a0)[0]
    c = dp.divmod(a0)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def _sturm_chain(p: Polynomial) -> list[tuple[int, ...]]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        r = chain[-2].divmod(chain[-1])[1]
        if r.is_zero():
            break
        chain.append(-r)
    return [tuple(reversed(q.integer_primitive().c)) for q in chain]


def _variations(chain, x: Fraction) -> int:
    signs = [s for s in (sign_at(c, x) for c in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _cauchy_bound(p: Polynomial) -> Fraction:
    lead = Fraction(p.c[-1])
    return 1 + max((abs(Fraction(v) / lead) for v in p.c[:-1]), default=Fraction(0))


def isolate_real_roots(p: Polynomial, tol=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi), one per distinct real root of square-free ``p``.

    Endpoints are never roots unless the interval is degenerate (lo == hi).
    With ``tol`` each interval is further bisected to width <= tol.
    """
    if p.degree <= 0:
        return []
    chain = _sturm_chain(p)
    ip = chain[0]
    bound = _cauchy_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, _variations(chain, -bound) - _variations(chain, bound))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            out.append((a, b))
            continue
        split = a + (b - a) / 2
        if sign_at(ip, split) == 0:
            # exact rational root: deflate it away and start over
            deflated = p.divmod(Polynomial.linear(split))[0]
            return sorted(isolate_real_roots(deflated, tol) + [(split, split)])
        vs = _variations(chain, split)
        stack.append((a, split, _variations(chain, a) - vs))
        stack.append((split, b, vs - _variations(chain, b)))
    if tol is not None:
        cp = CharPoly(p.degree, tuple(reversed(p.c)))
        out = [refine(cp, lo, hi, tol) for lo, hi in out]
    return sorted(out)


def _rational_root_in(ip: tuple[int, ...], lo: Fraction, hi: Fraction, max_candidates: int = 10_000) -> Fraction | None:
    """A rational root p/q in [lo, hi] of the integer polynomial ``ip``, if any.

    By the rational root theorem q divides the leading coefficient.
    """
    lead = abs(ip[0])
    if lead > 10**12:
        return None
    tried = 0
    for q in divisors(lead):
        for p in range(ceil(lo * q), floor(hi * q) + 1):
            tried += 1
            if tried > max_candidates:
                return None
            x = Fraction(p, q)
            if sign_at(ip, x) == 0:
                return x
    return None


@dataclass
class Spectrum:
    pairs: list[EigenPair]
    complex_roots: list[complex]
    multiplicities: list[int] = field(default_factory=list)


def _exact_nullvector(rows: list[list[Fraction]]) -> list[Fraction]:
    """A nonzero vector in the kernel of a singular exact matrix (RREF)."""
    a = [list(r) for r in rows]
    n_rows, n_cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = next(c for c in range(n_cols) if c not in pivots)
    x = [Fraction(0)] * n_cols
    x[free] = Fraction(1)
    for i, c in enumerate(pivots):
        x[c] = -a[i][free]
    return x


def _inverse_iteration(a: np.ndarray, lam: float, steps: int = 3) -> np.ndarray:
    n = a.shape[0]
    shifted = a - lam * np.eye(n)
    # nudge off exact singularity so the solve is defined
    shifted += np.eye(n) * (1e-14 * max(1.0, np.abs(a).max()))
    x = np.ones(n)
    for _ in range(steps):
        try:
            x = np.linalg.solve(shifted, x)
        except np.linalg.LinAlgError:
            x = np.linalg.lstsq(shifted, x, rcond=None)[0]
        x /= np.linalg.norm(x)
    return x


def _normalize(x: Sequence) -> list:
    big = max(x, key=abs)
    return [v / big for v in x]


def eigen_generalized(spec: MatrixSpec, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of any exact Redheffer-type matrix, no interlacing assumed.

    Real eigenvalues are isolated on each square-free factor of the exact
    characteristic polynomial; rational ones are pinned exactly.  Eigenvectors
    (right and left) come from an exact kernel for rational eigenvalues and
    from inverse iteration otherwise, normalised so the largest-magnitude
    entry is 1; no entry is assumed nonzero.
    Approximate (floating) sequences fall back to a numerical eigensolver
    and carry no brackets.
    """
    tol_f = _tol_fraction(tol)
    m = build(spec)
    if not m.exact:
        a = m.to_numpy()
        vals = np.linalg.eigvals(a)
        real = sorted(v.real for v in vals if abs(v.imag) <= 1e-9 * max(1.0, abs(v)))
        cplx = [complex(v) for v in vals if v.imag > 1e-9 * max(1.0, abs(v))]
        pairs = []
        for i, lam in enumerate(real, start=1):
            x = _normalize(list(_inverse_iteration(a, lam)))
            y = _normalize(list(_inverse_iteration(a.T, lam)))
            res = float(np.abs(a @ np.asarray(x) - lam * np.asarray(x)).max())
            pairs.append(EigenPair(i, float(lam), None, [float(v) for v in x], res, left=[float(v) for v in y]))
        return Spectrum(pairs, cplx, [1] * len(pairs))

    cp = charpoly_matrix(m)
    found: list[tuple[Fraction, Fraction, int, Fraction | None]] = []
    cplx: list[complex] = []
    for factor, mult in squarefree_decomposition(cp.polynomial()):
        ip = tuple(reversed(factor.integer_primitive().c))
        roots = isolate_real_roots(factor, tol_f)
        for lo, hi in roots:
            exact = lo if lo == hi else _rational_root_in(ip, lo, hi)
            if exact is not None:
                lo = hi = exact
            found.append((lo, hi, mult, exact))
        pairs_here = (factor.degree - len(roots)) // 2
        if pairs_here:
            # the factor is square-free, so its non-real roots are well separated;
            # the exact count says how many upper half-plane roots to keep
            approx = sorted(np.roots([float(c) for c in factor.descending()]), key=lambda r: -r.imag)
            cplx.extend(complex(r) for r in approx[:pairs_here] for _ in range(mult))
    cplx.sort(key=lambda c: (c.real, c.imag))
    found.sort(key=lambda t: t[0])
    dense = m.dense()
    a_np = m.to_numpy()
    pairs = []
    mults = []
    for i, (lo, hi, mult, exact) in enumerate(found, start=1):
        if exact is not None:
            shifted = [[v - (exact if r == c else 0) for c, v in enumerate(row)] for r, row in enumerate(dense)]
            x = _normalize(_exact_nullvector(shifted))
            y = _normalize(_exact_nullvector([list(col) for col in zip(*shifted)]))
            res = residual_inf(m, exact, x)
            value = exact
        else:
            value = (lo + hi) / 2
            x = _normalize(list(_inverse_iteration(a_np, float(value))))
            y = _normalize(list(_inverse_iteration(a_np.T, float(value))))
            res = float(np.abs(a_np @ np.asarray(x) - float(value) * np.asarray(x)).max())
        pairs.append(
            EigenPair(i, float(value), (lo, hi), [float(v) for v in x], res, left=[float(v) for v in y], exact_value=exact)
        )
        mults.append(mult)
    return Spectrum(pairs, cplx, mults)


# -- conjecture scan ----------------------------------------------------------


@dataclass
class ScanRow:
    n: int
    lambda1: float
    lambda1_in_unit: str
    near_fibonacci: str
    violations: list[int]
    bracket_fallbacks: int = 0

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "lambda1": self.lambda1,
            "minus_one_lt_lambda1_lt_zero": self.lambda1_in_unit,
            "fib_lt_lambda_lt_fib_plus_one": self.near_fibonacci,
            "violations": self.violations,
        }


def _status(lo: Fraction, hi: Fraction, low: Fraction, high: Fraction) -> str:
    """Whether (lo, hi) certainly lies in (low, high), certainly misses it, or neither."""
    if lo >= low and hi <= high:
        return "holds"
    if hi <= low or lo >= high:
        return "fails"
    return "undetermined"


def conjecture_scan(n_max: int, tol: float = DEFAULT_TOL, n_min: int = 3):
    """Yield one ScanRow per n checking -1 < lambda_1 < 0 and F_i < lambda_i < F_i + 1.

    Statuses are decided from certified brackets; nothing is asserted.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    for n in range(max(3, n_min), n_max + 1):
        pairs = eigenvalues(n, tol)
        fib = fibonacci_numbers(n)
        lo1, hi1 = pairs[0].bracket
        first = _status(lo1, hi1, Fraction(-1), Fraction(0))
        statuses = []
        violations = []
        for p in pairs[1:]:
            f = Fraction(fib[p.index - 1])
            s = _status(*p.bracket, f, f + 1)
            statuses.append(s)
            if s != "holds":
                violations.append(p.index)
        if all(s == "holds" for s in statuses):
            overall = "holds"
        elif any(s == "fails" for s in statuses):
            overall = "fails"
        else:
            overall = "undetermined"
        yield ScanRow(n, pairs[0].value, first, overall, violations)
