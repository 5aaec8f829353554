"""Compare the pruned solver against the naive oracle on a random corpus.

Reports every mismatch and the solver's node counts per prune setting.
"""

import argparse
import time

from pdlab.corpus import family_graphs, random_graphs
from pdlab.naive import naive_partition_dimension
from pdlab.search import SolverOptions, partition_dimension

SETTINGS = {
    "all prunes": SolverOptions(symmetry="family"),
    "no symmetry": SolverOptions(),
    "no settled": SolverOptions(prune_settled=False),
    "bare": SolverOptions(prune_twins=False, prune_settled=False),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--max-order", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    corpus = random_graphs(args.count, args.max_order, seed=args.seed) + list(family_graphs(args.max_order))
    t0 = time.perf_counter()
    want = [naive_partition_dimension(g) for g in corpus]
    print(f"naive oracle: {len(corpus)} graphs in {time.perf_counter() - t0:.2f}s")
    bad = 0
    for name, opts in SETTINGS.items():
        t0 = time.perf_counter()
        nodes = 0
        for g, pd in zip(corpus, want):
            res = partition_dimension(g, opts)
            nodes += res.stats.nodes
            if res.pd != pd:
                bad += 1
                print(f"  MISMATCH [{name}] {g.family}: solver {res.pd}, naive {pd}")
        print(f"{name:12s} nodes={nodes:8d}  {time.perf_counter() - t0:.2f}s")
    print("mismatches:", bad)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
