"""Exact determinants of Redheffer-type matrices by three independent routes.

* ``det_closed_form``: the Moebius-sum formula, over a common denominator.
* ``det_elimination``: Gaussian elimination on the realized matrix, either
  fraction-free Bareiss on a dense integer copy or a sparse pivoting path
  that exploits the divisor pattern (no fill-in when columns are eliminated
  from the last one backwards).
* ``charpoly``: the characteristic polynomial by expanding det(zI - A) along
  its last row, with the Hessenberg cofactor evaluated by the Hessenberg
  determinant recursion.  Its constant term is (-1)^n det(A).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm, prod
from typing import Sequence

import mpmath

from .arithmetic import fibonacci_numbers, fibonorial, mertens, mobius_table
from .matrices import DivisorMatrix, MatrixSpec, UnsupportedExactError, build, is_exact
from .poly import Polynomial, sign_at

CHARPOLY_MAX_N = 256


def det_closed_form(spec: MatrixSpec):
    """Closed-form determinant; a Fraction for exact specs, an mpf otherwise."""
    n = spec.n
    table = mobius_table(n)
    if spec.kind == "classic":
        return Fraction(mertens(n))
    if spec.kind in ("fibonacci", "fibonacci_variant"):
        fact = fibonorial(n)
        fib = fibonacci_numbers(n)
        # every F_k divides n!_F, so the Moebius sum is an integer here
        total = sum(table.mu(k) * (fact // fib[k - 1]) for k in range(1, n + 1))
        if spec.kind == "fibonacci":
            return Fraction(total)
        return spec.b * fact + total
    w = spec.weights()
    if all(is_exact(x) for x in w):
        big = prod(w)
        return big + sum(table.mu(k) * (big / w[k - 1]) for k in range(2, n + 1))
    big = mpmath.fprod(w)
    return big * (1 + mpmath.fsum(table.mu(k) / w[k - 1] for k in range(2, n + 1)))


# -- elimination -------------------------------------------------------------


def _integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns the rows and the product of the scales."""
    out, scale = [], 1
    for row in rows:
        den = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        out.append([int(Fraction(v) * den) for v in row])
        scale *= den
    return out, scale


def bareiss_det(rows: Sequence[Sequence]) -> Fraction:
    """Fraction-free Bareiss elimination on an exact square matrix."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(not is_exact(v) for row in rows for v in row):
        raise UnsupportedExactError("Bareiss elimination needs exact entries")
    a, scale = _integer_rows(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def _permutation_sign(perm: dict[int, int]) -> int:
    seen = set()
    sign = 1
    for start in perm:
        if start in seen:
            continue
        length = 0
        k = start
        while k not in seen:
            seen.add(k)
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sparse_det(n: int, rows: Sequence[dict]) -> Fraction:
    """Exact determinant by sparse Gaussian elimination.

    ``rows[i]`` maps column -> exact value for row ``i`` (0-based keys).
    Columns are eliminated from the last one backwards; the pivot for each
    column is the remaining row with the fewest nonzeros.
    """
    work = [{c: Fraction(v) for c, v in r.items() if v != 0} for r in rows]
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(work):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    remaining = set(range(n))
    pivot_of: dict[int, int] = {}
    det = Fraction(1)
    for c in range(n - 1, -1, -1):
        cands = col_rows.get(c, set()) & remaining
        if not cands:
            return Fraction(0)
        p = min(cands, key=lambda i: (len(work[i]), i != c, i))
        prow = work[p]
        piv = prow[c]
        remaining.discard(p)
        pivot_of[c] = p
        det *= piv
        for i in cands:
            if i == p:
                continue
            row = work[i]
            f = row[c] / piv
            for cc, v in prow.items():
                nv = row.get(cc, 0) - f * v
                if nv == 0:
                    if cc in row:
                        del row[cc]
                        col_rows[cc].discard(i)
                else:
                    if cc not in row:
                        col_rows.setdefault(cc, set()).add(i)
                    row[cc] = nv
    return _permutation_sign(pivot_of) * det


def det_elimination(m: DivisorMatrix, strategy: str = "sparse") -> Fraction:
    """Exact determinant of the realized matrix by elimination.

    ``strategy`` is ``"sparse"`` (divisor-pattern aware, fast at large n) or
    ``"bareiss"`` (dense fraction-free elimination).
    """
    if not m.exact:
        raise UnsupportedExactError(f"matrix {m.spec.kind} n={m.n} has approximate entries")
    if strategy == "bareiss":
        return bareiss_det(m.dense(cap=max(m.n, 1)))
    if strategy == "sparse":
        rows = [{j - 1: v for j, v in m.row_items(i)} for i in range(1, m.n + 1)]
        return sparse_det(m.n, rows)
    raise ValueError(f"unknown strategy {strategy!r}")


# -- Hessenberg recursion / characteristic polynomial ------------------------


def is_upper_hessenberg(h: Sequence[Sequence]) -> bool:
    return all(h[i][j] == 0 for i in range(len(h)) for j in range(i - 1))


def hessenberg_minors(h: Sequence[Sequence]) -> list:
    """det(H_0), det(H_1), ..., det(H_m) for the leading principal submatrices.

    Uses det(H_k) = sum_{r=1}^{k} (-1)^{k-r} h_{r,k} (prod_{j=r}^{k-1} h_{j+1,j}) det(H_{r-1})
    with det(H_0) = 1.  Entries may be exact scalars or Polynomials.
    """
    m = len(h)
    if any(len(row) != m for row in h):
        raise ValueError("Hessenberg input must be square")
    if not is_upper_hessenberg(h):
        raise ValueError("matrix is not upper Hessenberg")
    dets = [1]
    for k in range(1, m + 1):
        total = 0
        chain = 1
        for r in range(k, 0, -1):
            hrk = h[r - 1][k - 1]
            if hrk != 0:
                term = hrk * chain * dets[r - 1]
                total = total + term if (k - r) % 2 == 0 else total - term
            if r > 1:
                chain = chain * h[r - 1][r - 2]
                if chain == 0:
                    break
        dets.append(total)
    return dets


def hessenberg_det_recursion(h: Sequence[Sequence]):
    """Determinant of an upper Hessenberg matrix with exact or polynomial entries."""
    if len(h) == 0:
        return 1
    return hessenberg_minors(h)[-1]


@dataclass(frozen=True)
class CharPoly:
    """Monic det(zI - A); ``coeffs`` in descending powers."""

    n: int
    coeffs: tuple

    @property
    def constant_term(self):
        return self.coeffs[-1]

    def polynomial(self) -> Polynomial:
        return Polynomial(reversed(self.coeffs))

    @cached_property
    def _int_coeffs(self) -> tuple[int, ...]:
        return tuple(reversed(self.polynomial().integer_primitive().c))

    def __call__(self, z):
        acc = 0
        for c in self.coeffs:
            acc = acc * z + c
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of chi at the rational point ``x``."""
        return sign_at(self._int_coeffs, Fraction(x))

    def determinant(self):
        return self.constant_term if self.n % 2 == 0 else -self.constant_term


def _hessenberg_cofactor_matrix(m: DivisorMatrix) -> list[list]:
    """Rows 1..n-1 of zI - A with the first column removed (upper Hessenberg)."""
    n = m.n
    z = Polynomial.x()
    h = []
    for r in range(1, n):
        row = []
        for c in range(1, n):
            a = m.entry(r, c + 1)
            if r == c + 1:
                row.append(z - a)
            else:
                row.append(-a)
        h.append(row)
    return h


def charpoly_matrix(m: DivisorMatrix, max_n: int = CHARPOLY_MAX_N) -> CharPoly:
    """chi_n = (-1)^n det(H^(n)) + (z - a_nn) chi_{n-1}, with chi_1 = z - a_11.

    H^(n) is the leading (n-1)x(n-1) block of one Hessenberg matrix for the
    full size, so its minors come out of a single pass of the recursion.
    """
    n = m.n
    if n > max_n:
        raise ValueError(f"charpoly refused for n={n} > {max_n} (coefficient growth); raise max_n to force")
    if not m.exact:
        raise UnsupportedExactError("charpoly needs exact entries")
    chi = Polynomial.linear(m.corner)
    if n > 1:
        minors = hessenberg_minors(_hessenberg_cofactor_matrix(m))
        for k in range(2, n + 1):
            cof = minors[k - 1]
            cof = cof if k % 2 == 0 else -cof
            chi = cof + chi.mul_linear(m.entry(k, k))
    coeffs = tuple(int(c) if Fraction(c).denominator == 1 else Fraction(c) for c in chi.descending())
    return CharPoly(n=n, coeffs=coeffs)


def charpoly(spec: MatrixSpec, max_n: int = CHARPOLY_MAX_N) -> CharPoly:
    if not spec.exact:
        raise UnsupportedExactError("charpoly needs an exact sequence")
    return charpoly_matrix(build(spec), max_n=max_n)


@dataclass(frozen=True)
class SingularB:
    """The corner shift b that makes the Fibonacci variant singular."""

    n: int
    b: Fraction
    admissible: bool


def singular_b(n: int) -> SingularB:
    """b = -sum_{k<=n} mu(k)/F_k; admissible only when b > -1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    table = mobius_table(n)
    fib = fibonacci_numbers(n)
    b = -sum(Fraction(table.mu(k), fib[k - 1]) for k in range(1, n + 1))
    return SingularB(n=n, b=b, admissible=b > -1)


def fibonorial_by_triangular_product(n: int) -> int:
    """det D(n) as the product of its diagonal."""
    return prod(fibonacci_numbers(n))
