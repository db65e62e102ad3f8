"""Write (z, Q(z)) samples of the secular function for F_R(n) as TSV.

The poles sit at F_2, ..., F_n; points within --guard of a pole are dropped,
so the file plots with honest vertical asymptotes in any external tool.

    python scripts/figure1_qplot.py --n 6 --zmin -1 --zmax 10 > q6.tsv
"""

import argparse
import sys

from redheffer.spectral import eigenvalues, q_samples


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--zmin", type=float, default=-1.0)
    ap.add_argument("--zmax", type=float, default=10.0)
    ap.add_argument("--count", type=int, default=4001)
    ap.add_argument("--guard", type=float, default=1e-4)
    args = ap.parse_args()

    out = sys.stdout
    out.write("z\tQ\n")
    for z, q in q_samples(args.n, args.zmin, args.zmax, args.count, args.guard):
        out.write(f"{z!r}\t{q!r}\n")
    roots = ", ".join(f"{p.value:.6f}" for p in eigenvalues(args.n))
    print(f"# zeros of Q (eigenvalues): {roots}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
