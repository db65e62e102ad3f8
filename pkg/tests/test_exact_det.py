from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import rational_sequences
from redheffer.arithmetic import fibonorial, mertens
from redheffer.exact_det import (
    bareiss_det,
    charpoly,
    det_closed_form,
    det_elimination,
    fibonorial_by_triangular_product,
    hessenberg_det_recursion,
    hessenberg_minors,
    singular_b,
    sparse_det,
)
from redheffer.matrices import UnsupportedExactError, build, classic, fibonacci_spec, generalized, log_shift_sequence, variant
from redheffer.poly import Polynomial
from redheffer.tables import CHARPOLY_F5


def sympy_det(m):
    return Fraction(str(sympy.Matrix(m.dense()).det()))


def sympy_charpoly(m):
    z = sympy.Symbol("z")
    coeffs = sympy.Matrix(m.dense()).charpoly(z).all_coeffs()
    return [Fraction(str(c)) for c in coeffs]


# -- hand-checked values ------------------------------------------------------


def test_small_fibonacci_determinants():
    # 1x1: [1]; 2x2: [[1,1],[1,1]]; 3x3 by cofactor expansion = -1
    assert det_closed_form(fibonacci_spec(1)) == 1
    assert det_closed_form(fibonacci_spec(2)) == 0
    assert det_closed_form(fibonacci_spec(3)) == -1


def test_variant_example():
    # b = 1/2 is exactly the value that makes the 3x3 variant singular
    assert det_closed_form(variant(3, Fraction(1, 2))) == 0
    assert singular_b(3).b == Fraction(1, 2)


def test_sequence_examples():
    assert det_closed_form(generalized((2, 3, 4, 5, 6, 7))) == 1980
    assert det_closed_form(generalized((Fraction(1, 2), 1, 3, 4, 5, 6))) == -66


def test_golden_charpoly():
    assert charpoly(fibonacci_spec(5)).coeffs == CHARPOLY_F5


# -- independent oracle: sympy ----------------------------------------------------


@pytest.mark.parametrize("n", range(1, 13))
def test_all_routes_match_sympy_fibonacci(n):
    spec = fibonacci_spec(n)
    m = build(spec)
    expected = sympy_det(m)
    assert det_closed_form(spec) == expected
    assert det_elimination(m, "sparse") == expected
    assert det_elimination(m, "bareiss") == expected
    assert charpoly(spec).determinant() == expected


@given(rational_sequences(min_size=1, max_size=9))
def test_generalized_routes_match_sympy(seq):
    spec = generalized(seq)
    m = build(spec)
    expected = sympy_det(m)
    assert det_closed_form(spec) == expected
    assert det_elimination(m, "sparse") == expected
    assert det_elimination(m, "bareiss") == expected


@given(rational_sequences(min_size=1, max_size=8))
def test_charpoly_matches_sympy(seq):
    m = build(generalized(seq))
    assert list(charpoly(generalized(seq)).coeffs) == sympy_charpoly(m)


@given(st.integers(min_value=1, max_value=12), st.fractions(min_value=Fraction(-9, 10), max_value=4, max_denominator=20))
def test_variant_matches_sympy(n, b):
    spec = variant(n, b)
    m = build(spec)
    expected = sympy_det(m)
    assert det_closed_form(spec) == expected
    assert det_elimination(m) == expected
    assert charpoly(spec).determinant() == expected


# -- properties -----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 7, 50, 120])
def test_classic_is_mertens(n):
    m = build(classic(n))
    assert det_elimination(m) == mertens(n)
    assert det_closed_form(classic(n)) == mertens(n)


@given(st.integers(min_value=3, max_value=200))
def test_fibonacci_determinant_negative(n):
    assert det_closed_form(fibonacci_spec(n)) < 0


@given(st.integers(min_value=1, max_value=60))
def test_d_determinant_is_fibonorial(n):
    assert fibonorial_by_triangular_product(n) == fibonorial(n)


@given(st.integers(min_value=1, max_value=20))
def test_singular_b_makes_variant_singular(n):
    sb = singular_b(n)
    if sb.admissible:
        assert det_elimination(build(variant(n, sb.b))) == 0
    else:
        with pytest.raises(ValueError):
            variant(n, sb.b)


def test_singular_b_admissibility():
    # n = 2: b = -(1 - 1) = 0, n = 1: b = -1 (excluded)
    assert not singular_b(1).admissible
    assert singular_b(2).b == 0
    assert all(singular_b(n).admissible for n in range(2, 30))


def test_approximate_sequence_rejected_by_exact_routes():
    spec = generalized(log_shift_sequence(5), offset=1, n=5)
    m = build(spec)
    with pytest.raises(UnsupportedExactError):
        det_elimination(m)
    with pytest.raises(UnsupportedExactError):
        charpoly(spec)
    # the closed form still gives a high-precision approximation
    approx = det_closed_form(spec)
    assert float(approx) == pytest.approx(float(sympy.Matrix(m.to_numpy().tolist()).det()), rel=1e-9)


def test_charpoly_size_guard():
    with pytest.raises(ValueError):
        charpoly(fibonacci_spec(20), max_n=10)


# -- building blocks ----------------------------------------------------------------


def random_hessenberg(draw_vals, n):
    return [[draw_vals[i * n + j] if j >= i - 1 else 0 for j in range(n)] for i in range(n)]


@given(st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n))))
def test_hessenberg_recursion_matches_sympy(data):
    n, vals = data
    h = random_hessenberg(vals, n)
    minors = hessenberg_minors(h)
    for k in range(1, n + 1):
        assert minors[k] == sympy.Matrix([row[:k] for row in h[:k]]).det()
    assert hessenberg_det_recursion(h) == minors[-1]


def test_hessenberg_with_polynomial_entries():
    z = Polynomial.x()
    h = [[z - 1, 2], [3, z]]
    assert hessenberg_det_recursion(h) == Polynomial([-6, -1, 1])


def test_hessenberg_rejects_non_hessenberg():
    with pytest.raises(ValueError):
        hessenberg_minors([[1, 0, 0], [0, 1, 0], [1, 0, 1]])


@given(st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_and_sparse_match_sympy(rows):
    expected = sympy.Matrix(rows).det()
    assert bareiss_det(rows) == expected
    assert sparse_det(len(rows), [{j: v for j, v in enumerate(r) if v} for r in rows]) == expected
