from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import rational_sequences
from redheffer.matrices import (
    MatrixSpec,
    UnsupportedExactError,
    build,
    classic,
    d_inverse,
    d_matrix,
    decompose,
    fibonacci_spec,
    from_matrix_market,
    generalized,
    log_shift_sequence,
    nnz_count,
    power_sequence,
    sparse_matmul,
    to_csv,
    to_matrix_market,
    variant,
)
from redheffer.tables import D8_INVERSE


def oracle_dense(kind, n, weights, corner=None):
    """Entry-by-entry definition, written independently of the builder."""
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if j == 1:
                a[i - 1][j - 1] = Fraction(1) if i > 1 else Fraction(weights[0])
            elif j % i == 0:
                a[i - 1][j - 1] = Fraction(weights[i - 1])
    if corner is not None:
        a[0][0] = Fraction(corner)
    return a


def test_fibonacci_8_layout():
    a = build(fibonacci_spec(8)).dense()
    assert a[0] == [1] * 8
    assert a[1] == [1, 1, 0, 1, 0, 1, 0, 1]
    assert a[2] == [1, 0, 2, 0, 0, 2, 0, 0]
    assert a[3] == [1, 0, 0, 3, 0, 0, 0, 3]
    assert [a[i][i] for i in range(8)] == [1, 1, 2, 3, 5, 8, 13, 21]


@given(st.integers(min_value=1, max_value=40))
def test_classic_and_fibonacci_match_definition(n):
    assert build(classic(n)).dense() == oracle_dense("classic", n, [1] * n)
    fib = [sympy.fibonacci(k) for k in range(1, n + 1)]
    assert build(fibonacci_spec(n)).dense() == oracle_dense("fibonacci", n, fib)


@given(st.integers(min_value=2, max_value=30), st.fractions(min_value=Fraction(-9, 10), max_value=5))
def test_variant_changes_only_the_corner(n, b):
    fib = build(fibonacci_spec(n)).dense()
    var = build(variant(n, b)).dense()
    assert var[0][0] == 1 + b
    var[0][0] = fib[0][0]
    assert var == fib


@given(rational_sequences(min_size=1, max_size=15))
def test_generalized_matches_definition(seq):
    n = len(seq)
    assert build(generalized(seq)).dense() == oracle_dense("generalized", n, seq)


def test_offset_uses_shifted_terms():
    m = build(generalized((None, 5, 7, 11), offset=1))
    assert m.n == 3
    assert m.diagonal() == (5, 7, 11)


def test_log_shift_sequence_is_approximate():
    spec = generalized(log_shift_sequence(6), offset=1, n=6)
    assert not spec.exact
    assert not build(spec).exact
    assert float(spec.weights()[0]) == pytest.approx(2 / np.log(2) ** 2)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="nope", n=3),
        dict(kind="fibonacci", n=0),
        dict(kind="fibonacci_variant", n=3),
        dict(kind="fibonacci_variant", n=3, b=-1),
        dict(kind="generalized", n=3),
        dict(kind="generalized", n=3, sequence=(1, 2)),
        dict(kind="generalized", n=3, sequence=(1, 0, 2)),
        dict(kind="generalized", n=2, sequence=(1, -2)),
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(ValueError):
        MatrixSpec(**kwargs)


def test_power_sequence_exactness():
    assert power_sequence(4, 2) == (1, 4, 9, 16)
    assert all(isinstance(a, Fraction) for a in power_sequence(4, 3))
    assert not generalized(power_sequence(4, 1.5)).exact


@given(st.integers(min_value=1, max_value=64))
def test_d_times_inverse_is_identity(n):
    prod = sparse_matmul(d_matrix(n), d_inverse(n))
    assert prod.entries == {(i, i): 1 for i in range(1, n + 1)}


def test_d8_inverse_matches_printed_matrix():
    assert d_inverse(8).dense() == [[Fraction(v) for v in row] for row in D8_INVERSE]


def test_d_inverse_against_sympy():
    d = sympy.Matrix(d_matrix(12).dense())
    assert d.inv() == sympy.Matrix(d_inverse(12).dense())


@given(st.integers(min_value=1, max_value=30))
def test_decompositions_recombine(n):
    m = build(fibonacci_spec(n))
    cd = decompose(m, "CplusD")
    assert cd.total() == m.to_sparse()
    assert cd.parts[1].is_upper_triangular()
    tm = decompose(m, "TplusM")
    assert tm.total() == m.to_sparse()
    assert tm.parts[0].is_upper_triangular()


def test_c_plus_d_refuses_other_kinds():
    with pytest.raises(UnsupportedExactError):
        decompose(build(classic(5)), "CplusD")


@given(st.integers(min_value=1, max_value=2000))
def test_nnz_matches_divisor_count(n):
    exact, _ = nnz_count(n)
    assert exact == n + sum(sympy.divisor_count(j) for j in range(2, n + 1))


@pytest.mark.parametrize("n", [1, 2, 8, 50, 333, 2000])
def test_built_nnz_equals_count(n):
    m = build(fibonacci_spec(n))
    assert m.nnz == nnz_count(n)[0] == m.to_sparse().nnz


def test_sparsity_values():
    assert nnz_count(8)[0] == 27
    exact, estimate = nnz_count(10_000)
    assert 0.98 < exact / estimate < 1.02


@given(rational_sequences(min_size=1, max_size=20))
def test_matrix_market_round_trip_exact(seq):
    m = build(generalized(seq))
    back = from_matrix_market(to_matrix_market(m))
    assert back == m.to_sparse()


@pytest.mark.parametrize("spec", [fibonacci_spec(30), classic(17), variant(9, Fraction(1, 3))])
def test_matrix_market_readable_by_scipy(tmp_path, spec):
    scipy_io = pytest.importorskip("scipy.io")
    m = build(spec)
    path = tmp_path / "m.mtx"
    path.write_text(to_matrix_market(m))
    got = scipy_io.mmread(str(path)).toarray()
    np.testing.assert_allclose(got, m.to_numpy(), rtol=1e-15)


def test_matvec_and_rmatvec_agree_with_dense():
    m = build(generalized((Fraction(1, 2), 3, 2, 7, 5, Fraction(4, 3))))
    a = sympy.Matrix(m.dense())
    x = [Fraction(k, 3) for k in range(1, 7)]
    assert m.matvec(x) == list(a * sympy.Matrix(x))
    assert m.rmatvec(x) == list(a.T * sympy.Matrix(x))


def test_csv_export():
    text = to_csv(build(generalized((Fraction(1, 2), 1, 3))))
    assert text.splitlines() == ["1/2,1/2,1/2", "1,1,0", "1,0,3"]


def test_trace_is_fibonacci_sum():
    assert build(fibonacci_spec(10)).trace() == sympy.fibonacci(12) - 1


def test_dense_cap():
    with pytest.raises(ValueError):
        build(fibonacci_spec(600)).dense()
