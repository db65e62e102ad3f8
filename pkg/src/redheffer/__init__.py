"""Redheffer-type matrices: exact determinants, certified spectra, asymptotic constants."""

from .arithmetic import (
    GOLDEN_RATIO,
    divisor_count_sum,
    divisors,
    fibonacci,
    fibonacci_numbers,
    fibonorial,
    mertens,
    mobius,
    mobius_sieve,
    zeta,
)
from .asymptotics import (
    AsymptoticReport,
    c_partial_sum,
    c_tail_bound,
    constant_C,
    constant_C0,
    constant_C_phi,
    det_asymptotic,
    det_generalized_asymptotic_check,
    example2_partial_sums,
    trace_and_radius_asymptotics,
    zeta_inverse_partial_sums,
)
from .exact_det import (
    CharPoly,
    bareiss_det,
    charpoly,
    det_closed_form,
    det_elimination,
    hessenberg_det_recursion,
    singular_b,
)
from .matrices import (
    KINDS,
    DivisorMatrix,
    MatrixSpec,
    SparseMatrix,
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
    to_matrix_market,
    variant,
)
from .spectral import (
    EigenPair,
    conjecture_scan,
    eigen_generalized,
    eigenvalue,
    eigenvalues,
    eigenvector,
    gershgorin,
    left_eigenvector,
    q_eval,
    q_samples,
)

__version__ = "0.1.0"
