"""Published reference values (3 decimals) used by ``examples`` and the tests."""

from __future__ import annotations

from fractions import Fraction

# Eigenvalues of F_R(n) for n = 3..11, smallest first.
EIGENVALUE_TABLE: dict[int, tuple[float, ...]] = {
    3: (-0.247, 1.445, 2.802),
    4: (-0.284, 1.215, 2.318, 3.751),
    5: (-0.400, 1.197, 2.294, 3.600, 5.309),
    6: (-0.356, 1.159, 2.197, 3.512, 5.260, 8.228),
    7: (-0.406, 1.154, 2.193, 3.498, 5.252, 8.221, 13.087),
    8: (-0.408, 1.168, 2.206, 3.426, 5.242, 8.217, 13.086, 21.062),
    9: (-0.411, 1.171, 2.189, 3.417, 5.239, 8.215, 13.086, 21.062, 34.032),
    10: (-0.403, 1.163, 2.189, 3.421, 5.216, 8.213, 13.085, 21.062, 34.032, 55.021),
    11: (-0.411, 1.163, 2.189, 3.420, 5.215, 8.213, 13.085, 21.062, 34.032, 55.021, 89.011),
}

TABLE_TOLERANCE = 0.002

# Two six-term positive sequences and the spectra of their Redheffer-type matrices.
SEQUENCE_EXAMPLES: dict[str, dict] = {
    "A_R(6)": {
        "sequence": (Fraction(2), Fraction(3), Fraction(4), Fraction(5), Fraction(6), Fraction(7)),
        "spectrum": (0.773, 2.312, 3.946, 5.410, 6.220, 8.338),
    },
    "B_R(6)": {
        "sequence": (Fraction(1, 2), Fraction(1), Fraction(3), Fraction(4), Fraction(5), Fraction(6)),
        "spectrum": (-0.142, 1.183, 3.0, 4.141, 5.097, 6.221),
    },
}

# The eigenvalue 3 of B_R(6) and the printed eigenvector direction attached to it.
B_R6_EIGENVALUE = Fraction(3)
B_R6_VECTOR = (0, 0, -1, 0, 0, 1)

# Printed D(8)^-1, row by row; entry (i, j) is mu(j / i) / F_j when i | j.
D8_INVERSE = (
    (1, -1, Fraction(-1, 2), 0, Fraction(-1, 5), Fraction(1, 8), Fraction(-1, 13), 0),
    (0, 1, 0, Fraction(-1, 3), 0, Fraction(-1, 8), 0, 0),
    (0, 0, Fraction(1, 2), 0, 0, Fraction(-1, 8), 0, 0),
    (0, 0, 0, Fraction(1, 3), 0, 0, 0, Fraction(-1, 21)),
    (0, 0, 0, 0, Fraction(1, 5), 0, 0, 0),
    (0, 0, 0, 0, 0, Fraction(1, 8), 0, 0),
    (0, 0, 0, 0, 0, 0, Fraction(1, 13), 0),
    (0, 0, 0, 0, 0, 0, 0, Fraction(1, 21)),
)

# Monic characteristic polynomial of F_R(5), highest power first.
CHARPOLY_F5 = (1, -12, 48, -70, 16, 21)

C_REFERENCE = -0.64572472
C_PARTIAL_K12 = -0.6449772
C_TAIL_K12_LIMIT = 0.013192
C_PHI_REFERENCE = 1.226742
C0_REFERENCE = -0.7921376
