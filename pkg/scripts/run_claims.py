"""Verify the claim registry over a range of n and write markdown + JSON reports.

    python scripts/run_claims.py --n-max 6 --budget-nodes 2000000 --out-dir results/
"""

import argparse
import json
import time
from pathlib import Path

from pdlab.claims import exit_status, summary, to_markdown, verify_claims
from pdlab.search import SolverOptions


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--budget-nodes", type=int, default=200_000)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    args = ap.parse_args()

    opts = SolverOptions(symmetry="family", threads=args.threads, budget_nodes=args.budget_nodes)
    t0 = time.perf_counter()
    reports = verify_claims(range(args.n_min, args.n_max + 1), opts)
    secs = time.perf_counter() - t0

    args.out_dir.mkdir(parents=True, exist_ok=True)
    header = f"# Claims, n = {args.n_min}..{args.n_max}, node budget {args.budget_nodes}"
    (args.out_dir / "claims.md").write_text(to_markdown(reports, header))
    (args.out_dir / "claims.json").write_text(
        json.dumps({"summary": summary(reports), "reports": [r.to_dict() for r in reports]}, indent=2))
    print(f"{summary(reports)} in {secs:.1f}s -> {args.out_dir}")
    return exit_status(reports)


if __name__ == "__main__":
    raise SystemExit(main())
