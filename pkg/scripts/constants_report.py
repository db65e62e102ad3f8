"""Print C, C_phi and C_0 with their truncation points and rigorous error bounds,
plus the partial-sum series used as sanity checks.

    REDHEFFER_DIGITS=50 python scripts/constants_report.py --tol 1e-40
"""

import argparse

from redheffer.asymptotics import (
    DEFAULT_DIGITS,
    c_partial_sum,
    c_tail_bound,
    constant_C,
    constant_C0,
    constant_C_phi,
    det_asymptotic,
    example2_partial_sums,
    log_abs,
    zeta_inverse_partial_sums,
)
from redheffer.exact_det import det_closed_form
from redheffer.matrices import fibonacci_spec


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--tol", type=float, default=1e-20)
    ap.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    args = ap.parse_args()

    for rep in (constant_C(args.tol, args.digits), constant_C_phi(args.tol, args.digits), constant_C0(args.tol, args.digits)):
        d = rep.as_dict(args.digits)
        print(f"{d['name']:<6} {d['value']}  +/- {d['error_bound']}  (k0={d['k0']})")
    print(f"partial sum k0=12: {float(c_partial_sum(12)):.10f}, tail bound {float(c_tail_bound(12)):.7f}")

    print("\nn   ln|det F_R(n)|   estimate       rel. error")
    for n in (10, 20, 40, 80, 160):
        exact = log_abs(det_closed_form(fibonacci_spec(n)))
        est = det_asymptotic(n).log_magnitude
        print(f"{n:<3} {exact:>14.6f}  {est:>14.6f}  {abs(exact - est) / exact:.2e}")

    print("\nsum mu(k)/k^2 against 1/zeta(2):")
    for row in zeta_inverse_partial_sums(2, 10**6):
        print(f"  n={row.n:<8} {row.partial_sum:.10f}  target {row.target:.10f}")
    print("sum mu(k) ln^2 k / k (reported only; the limit -2 gamma is approached very slowly):")
    for row in example2_partial_sums(10**6):
        print(f"  n={row.n:<8} {row.partial_sum:.6f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
