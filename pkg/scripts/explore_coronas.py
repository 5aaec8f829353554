"""Bracket pd(K_n ⊙ W_m) for a grid of (n, m) with a chosen node budget.

Prints the proven interval [lo, hi] per instance and where each end came from.
"""

import argparse
import time

from pdlab.claims import gather
from pdlab.search import SolverOptions


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--offsets", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--budget-nodes", type=int, default=1_000_000)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    opts = SolverOptions(symmetry="family", threads=args.threads, budget_nodes=args.budget_nodes)
    for n in args.n:
        for off in args.offsets:
            t0 = time.perf_counter()
            f = gather(n, n + off, opts)
            span = f"{f.lo}" if f.pd is not None else f"[{f.lo}, {f.hi}]"
            print(f"K_{n} ⊙ W_{n + off}: pd = {span:8s} lo<-{f.lo_source:22s} hi<-{f.hi_source:30s} "
                  f"{time.perf_counter() - t0:6.1f}s" + (f"  ({f.undecided})" if f.undecided else ""))


if __name__ == "__main__":
    raise SystemExit(main())
