"""Scan -1 < lambda_1 < 0 and F_i < lambda_i < F_i + 1 over a range of n.

Statuses come from certified brackets: "holds", "fails" or "undetermined".
Nothing is asserted; the output is one JSON object per line.

    python scripts/scan_conjectures.py --n-max 80
"""

import argparse
import json
from collections import Counter

from redheffer.spectral import conjecture_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=64)
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()

    first, near = Counter(), Counter()
    for row in conjecture_scan(args.n_max, args.tol, n_min=args.n_min):
        print(json.dumps(row.as_dict()))
        first[row.lambda1_in_unit] += 1
        near[row.near_fibonacci] += 1
    print(json.dumps({"summary": {"lambda1": dict(first), "near_fibonacci": dict(near)}}))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
