"""Redheffer-type matrices in divisor-structured sparse form.

Row ``i`` of every family holds a single weight ``w_i`` at the columns
``i, 2i, 3i, ...`` and a 1 in column 1 (for ``i >= 2``).  The families differ
only in their weights and in the (1, 1) corner:

* ``classic``           w_i = 1
* ``fibonacci``         w_i = F_i
* ``fibonacci_variant`` w_i = F_i, but the (1, 1) entry is ``1 + b``
* ``generalized``       w_i = a_{i + offset} for a positive sequence ``a``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Sequence

import mpmath
import numpy as np

from .arithmetic import divisor_count_sum, fibonacci_numbers, mobius_table

KINDS = ("classic", "fibonacci", "fibonacci_variant", "generalized")

DENSE_CAP = 512

EULER_GAMMA = 0.5772156649015329


class UnsupportedExactError(ValueError):
    """An exact-only operation was asked of an approximate matrix."""


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def as_scalar(x):
    """Normalise ints/Fractions/decimal strings to Fraction, floats to mpf."""
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        return mpmath.mpf(float(x))
    if isinstance(x, mpmath.mpf):
        return x
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


@dataclass(frozen=True)
class MatrixSpec:
    """What to build.

    ``sequence[k - 1]`` is a_k; entries that the offset never reaches may be
    ``None`` (e.g. a_1 for the ``a_j = j / ln^2 j`` sequence used with
    offset 1).
    """

    kind: str
    n: int
    b: Fraction | None = None
    sequence: tuple | None = None
    offset: int = 0
    sequence_id: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if self.kind == "fibonacci_variant":
            if self.b is None:
                raise ValueError("fibonacci_variant needs b")
            b = as_scalar(self.b)
            object.__setattr__(self, "b", b)
            if b <= -1:
                raise ValueError(f"b must exceed -1, got {b}")
        if self.kind == "generalized":
            if self.sequence is None:
                raise ValueError("generalized kind needs a sequence")
            if self.offset < 0:
                raise ValueError("offset must be nonnegative")
            if len(self.sequence) < self.n + self.offset:
                raise ValueError(
                    f"sequence has {len(self.sequence)} terms, need a_1..a_{self.n + self.offset}"
                )
            seq = tuple(None if a is None else as_scalar(a) for a in self.sequence)
            for i in range(1, self.n + 1):
                a = seq[i + self.offset - 1]
                if a is None or not a > 0:
                    raise ValueError(
                        f"sequence term a_{i + self.offset} = {a} is not strictly positive"
                    )
            object.__setattr__(self, "sequence", seq)

    def with_n(self, n: int) -> "MatrixSpec":
        return MatrixSpec(self.kind, n, self.b, self.sequence, self.offset, self.sequence_id)

    def weights(self) -> tuple:
        n = self.n
        if self.kind == "classic":
            return tuple(Fraction(1) for _ in range(n))
        if self.kind in ("fibonacci", "fibonacci_variant"):
            return tuple(Fraction(f) for f in fibonacci_numbers(n))
        return tuple(self.sequence[i + self.offset - 1] for i in range(1, n + 1))

    @property
    def exact(self) -> bool:
        return all(is_exact(w) for w in self.weights()) and (self.b is None or is_exact(self.b))


def classic(n: int) -> MatrixSpec:
    return MatrixSpec("classic", n)


def fibonacci_spec(n: int) -> MatrixSpec:
    return MatrixSpec("fibonacci", n)


def variant(n: int, b) -> MatrixSpec:
    return MatrixSpec("fibonacci_variant", n, b=b)


def generalized(sequence: Sequence, offset: int = 0, n: int | None = None, sequence_id: str = "") -> MatrixSpec:
    seq = tuple(sequence)
    if n is None:
        n = len(seq) - offset
    return MatrixSpec("generalized", n, sequence=seq, offset=offset, sequence_id=sequence_id)


def power_sequence(n: int, p) -> tuple:
    """a_j = j^p; exact for integer p."""
    if isinstance(p, int) or (isinstance(p, Fraction) and p.denominator == 1):
        p = int(p)
        return tuple(Fraction(j) ** p for j in range(1, n + 1))
    return tuple(mpmath.mpf(j) ** mpmath.mpf(p) for j in range(1, n + 1))


def log_shift_sequence(n: int) -> tuple:
    """a_j = j / ln^2 j for j >= 2 (a_1 left undefined), sized for offset 1."""
    return (None,) + tuple(mpmath.mpf(j) / mpmath.log(j) ** 2 for j in range(2, n + 2))


@dataclass(frozen=True)
class SparseMatrix:
    """Plain coordinate map {(i, j): value}, 1-based, zeros omitted."""

    n: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if other.n != self.n:
            raise ValueError("size mismatch")
        out = dict(self.entries)
        for ij, v in other.entries.items():
            s = out.get(ij, 0) + v
            if s == 0:
                out.pop(ij, None)
            else:
                out[ij] = s
        return SparseMatrix(self.n, out)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def dense(self) -> list[list]:
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for (i, j), v in self.entries.items():
            rows[i - 1][j - 1] = v
        return rows

    def is_upper_triangular(self) -> bool:
        return all(i <= j for (i, j) in self.entries)


@dataclass(frozen=True)
class DivisorMatrix:
    """A realized Redheffer-type matrix.

    ``rows[i - 1]`` lists the columns i, 2i, ... <= n that carry ``weights[i - 1]``.
    The (1, 1) entry is ``corner``; for all kinds except the variant it equals w_1.
    """

    spec: MatrixSpec
    weights: tuple
    corner: object
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def exact(self) -> bool:
        return is_exact(self.corner) and all(is_exact(w) for w in self.weights)

    @property
    def nnz(self) -> int:
        # row 1 owns column 1; every other row adds its first-column 1
        return sum(len(r) for r in self.rows) + (self.n - 1)

    def diagonal(self) -> tuple:
        return (self.corner,) + self.weights[1:]

    def entry(self, i: int, j: int):
        if i == 1 and j == 1:
            return self.corner
        if j == 1:
            return Fraction(1)
        if j % i == 0:
            return self.weights[i - 1]
        return Fraction(0)

    def row_items(self, i: int) -> Iterator[tuple[int, object]]:
        """Nonzero (column, value) pairs of row i, ascending by column."""
        if i == 1:
            yield 1, self.corner
            w = self.weights[0]
            for j in self.rows[0][1:]:
                yield j, w
            return
        yield 1, Fraction(1)
        w = self.weights[i - 1]
        for j in self.rows[i - 1]:
            yield j, w

    def to_sparse(self) -> SparseMatrix:
        entries = {}
        for i in range(1, self.n + 1):
            for j, v in self.row_items(i):
                if v != 0:
                    entries[(i, j)] = v
        return SparseMatrix(self.n, entries)

    def dense(self, cap: int = DENSE_CAP) -> list[list]:
        if self.n > cap:
            raise ValueError(f"dense view refused for n={self.n} > cap={cap}")
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for i in range(1, self.n + 1):
            for j, v in self.row_items(i):
                rows[i - 1][j - 1] = v
        return rows

    def to_numpy(self, cap: int = DENSE_CAP) -> np.ndarray:
        if self.n > cap:
            raise ValueError(f"dense view refused for n={self.n} > cap={cap}")
        a = np.zeros((self.n, self.n))
        for i in range(1, self.n + 1):
            for j, v in self.row_items(i):
                a[i - 1, j - 1] = float(v)
        return a

    def matvec(self, x: Sequence) -> list:
        out = []
        for i in range(1, self.n + 1):
            out.append(sum(v * x[j - 1] for j, v in self.row_items(i)))
        return out

    def rmatvec(self, y: Sequence) -> list:
        """y^T A as a list (i.e. A^T y)."""
        out = [0] * self.n
        for i in range(1, self.n + 1):
            yi = y[i - 1]
            for j, v in self.row_items(i):
                out[j - 1] += v * yi
        return out

    def trace(self):
        return sum(self.diagonal())


def build(spec: MatrixSpec) -> DivisorMatrix:
    n = spec.n
    weights = spec.weights()
    corner = weights[0]
    if spec.kind == "fibonacci_variant":
        corner = 1 + spec.b
    rows = tuple(tuple(range(i, n + 1, i)) for i in range(1, n + 1))
    return DivisorMatrix(spec=spec, weights=weights, corner=corner, rows=rows)


def d_matrix(n: int) -> SparseMatrix:
    """Upper-triangular D(n): F_i at (i, j) whenever i | j."""
    fib = fibonacci_numbers(n)
    entries = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1, i):
            entries[(i, j)] = Fraction(fib[i - 1])
    return SparseMatrix(n, entries)


def d_inverse(n: int) -> SparseMatrix:
    """Closed-form inverse of D(n): mu(j / i) / F_j at (i, j) whenever i | j."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fib = fibonacci_numbers(n)
    table = mobius_table(n)
    entries = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1, i):
            m = table.mu(j // i)
            if m:
                entries[(i, j)] = Fraction(m, fib[j - 1])
    return SparseMatrix(n, entries)


def sparse_matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    if a.n != b.n:
        raise ValueError("size mismatch")
    b_rows: dict[int, list] = {}
    for (k, j), v in b.entries.items():
        b_rows.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), v in a.entries.items():
        for j, w in b_rows.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + v * w
    return SparseMatrix(a.n, {ij: v for ij, v in out.items() if v != 0})


@dataclass(frozen=True)
class Decomposition:
    kind: str
    parts: tuple[SparseMatrix, SparseMatrix]

    def total(self) -> SparseMatrix:
        return self.parts[0] + self.parts[1]


def decompose(m: DivisorMatrix, kind: str) -> Decomposition:
    """Split into C + D (first column below the diagonal + divisor part) or T + M (rank one)."""
    n = m.n
    full = m.to_sparse()
    if kind == "CplusD":
        if m.spec.kind != "fibonacci":
            raise UnsupportedExactError("C + D split is defined for the Fibonacci kind only")
        c = SparseMatrix(n, {(i, 1): Fraction(1) for i in range(2, n + 1)})
        return Decomposition("CplusD", (c, d_matrix(n)))
    if kind == "TplusM":
        rank_one = SparseMatrix(n, {(i, 1): Fraction(1) for i in range(1, n + 1)})
        t = {}
        for ij, v in full.entries.items():
            v = v - (1 if ij[1] == 1 else 0)
            if v != 0:
                t[ij] = v
        return Decomposition("TplusM", (SparseMatrix(n, t), rank_one))
    raise ValueError(f"unknown decomposition {kind!r}")


def nnz_count(n: int) -> tuple[int, float]:
    """Exact S_n = n + sum_{j=2}^n d(j) and the estimate n ln n + 2 gamma n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    exact = n + divisor_count_sum(n) - 1
    estimate = n * math.log(n) + 2 * EULER_GAMMA * n
    return exact, estimate


# -- export / import ---------------------------------------------------------


def _fmt_exact(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _fmt_decimal(v, digits: int) -> str:
    if is_exact(v) and Fraction(v).denominator == 1:
        return str(Fraction(v).numerator)
    with mpmath.workdps(digits + 5):
        if is_exact(v):
            v = mpmath.mpf(Fraction(v).numerator) / Fraction(v).denominator
        return mpmath.nstr(v, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def to_matrix_market(m: DivisorMatrix | SparseMatrix, digits: int = 30, exact_comments: bool = True) -> str:
    """Matrix Market coordinate text.

    Integer-valued matrices use the ``integer`` field.  Otherwise the data
    lines carry decimals rounded to ``digits`` significant digits and, when
    ``exact_comments`` is set, the header repeats every non-integer entry as
    a ``%exact i j p/q`` comment so exact readers can recover it.
    """
    sp = m.to_sparse() if isinstance(m, DivisorMatrix) else m
    items = sorted(sp.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    integral = all(is_exact(v) and Fraction(v).denominator == 1 for _, v in items)
    lines = [f"%%MatrixMarket matrix coordinate {'integer' if integral else 'real'} general"]
    if isinstance(m, DivisorMatrix):
        lines.append(f"% kind={m.spec.kind} n={m.n}")
    if not integral and exact_comments:
        for (i, j), v in items:
            if is_exact(v) and Fraction(v).denominator != 1:
                lines.append(f"%exact {i} {j} {_fmt_exact(v)}")
    lines.append(f"{sp.n} {sp.n} {len(items)}")
    for (i, j), v in items:
        lines.append(f"{i} {j} {_fmt_decimal(v, digits)}")
    return "\n".join(lines) + "\n"


def from_matrix_market(text: str) -> SparseMatrix:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("%%MatrixMarket matrix coordinate"):
        raise ValueError("not a Matrix Market coordinate file")
    exact: dict = {}
    idx = 1
    while idx < len(lines) and lines[idx].startswith("%"):
        parts = lines[idx].split()
        if parts[0] == "%exact":
            exact[(int(parts[1]), int(parts[2]))] = Fraction(parts[3])
        idx += 1
    nrows, ncols, nnz = (int(t) for t in lines[idx].split())
    if nrows != ncols:
        raise ValueError("only square matrices are supported")
    entries = {}
    for line in lines[idx + 1 : idx + 1 + nnz]:
        i, j, v = line.split()
        key = (int(i), int(j))
        entries[key] = exact.get(key, Fraction(v))
    return SparseMatrix(nrows, entries)


def to_csv(m: DivisorMatrix, cap: int = DENSE_CAP) -> str:
    dense = m.dense(cap)
    return "\n".join(",".join(_fmt_exact(v) if is_exact(v) else mpmath.nstr(v, 17) for v in row) for row in dense) + "\n"
