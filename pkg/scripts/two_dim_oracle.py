"""Compare the two-dimensional closed form with exhaustive search over column multisets."""

import argparse

from aferbounds.bounds_core import two_dim_optimal
from aferbounds.linear_codes import exhaustive_two_dim_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    args = ap.parse_args()

    bad = 0
    for q in (2, 3):
        for n in range(2, args.n_max + 1):
            ans = two_dim_optimal(n, q)
            d, e = exhaustive_two_dim_oracle(n, q)
            flag = "ok" if (ans.d, ans.e) == (d, e) else "DIFF"
            bad += flag != "ok"
            print(f"q={q} n={n}: closed form d={ans.d} e={ans.e}  search d={d} e={e}  {flag}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
