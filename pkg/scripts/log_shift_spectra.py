"""Spectra of the Redheffer-type matrices built from a_j = j / ln^2 j (j >= 2).

Reports how many eigenvalues are real and lists any complex pairs, using
mpmath at high precision so small imaginary parts are not rounding noise.

    python scripts/log_shift_spectra.py --sizes 4 6 8 12 20
"""

import argparse
from fractions import Fraction

import mpmath

from redheffer.matrices import build, generalized, log_shift_sequence


def to_mpf(v):
    return mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else mpmath.mpf(v)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8, 12, 20])
    ap.add_argument("--dps", type=int, default=50)
    args = ap.parse_args()

    with mpmath.workdps(args.dps):
        for n in args.sizes:
            m = build(generalized(log_shift_sequence(n), offset=1, n=n))
            a = mpmath.matrix([[to_mpf(v) for v in row] for row in m.dense()])
            vals = mpmath.eig(a, left=False, right=False)
            cplx = sorted((v for v in vals if mpmath.im(v) > mpmath.mpf(10) ** (-args.dps // 2)), key=lambda v: mpmath.re(v))
            real = n - 2 * len(cplx)
            pairs = ", ".join(f"{mpmath.nstr(mpmath.re(v), 8)} +/- {mpmath.nstr(mpmath.im(v), 6)}i" for v in cplx)
            print(f"n={n:<3} real eigenvalues: {real:<3} complex pairs: {len(cplx)}  {pairs}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
