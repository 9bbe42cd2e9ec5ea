"""Build and save the parameter database, then summarize what stays unresolved.

Usage: python3 scripts/build_database.py --k 6 --q 2 --n-max 130 --out codedb
"""

import argparse
from collections import Counter

from aferbounds.code_db import build_database


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=130)
    ap.add_argument("--out", default="codedb")
    args = ap.parse_args()

    db, reports = build_database(args.k, args.q, args.n_max)
    for path in db.save(args.out):
        print("wrote", path)
    for r in reports:
        print(f"k={r.k}: updated {r.updated}, conditional n {r.conditional}, unresolved n {r.unresolved}")
    prov = Counter(e.provenance.split(";")[-1] for e in db.entries(q=args.q) if e.k >= 3)
    for p, c in sorted(prov.items()):
        print(f"  {p}: {c}")


if __name__ == "__main__":
    main()
