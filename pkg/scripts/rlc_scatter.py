"""Per-code BLER of many fixed random linear codes against a per-trial fresh code.

    python3 scripts/rlc_scatter.py --n 16 --k 8 --codes 50 --trials 10000
"""

import argparse
from pathlib import Path

import numpy as np

from orbgrand.sim import format_scatter_csv, run_scatter


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--codes", type=int, default=50)
    ap.add_argument("--ebn0", type=float, default=4.5)
    ap.add_argument("--trials", type=int, default=10**4)
    ap.add_argument("--seed", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="results/rlc_scatter.csv")
    args = ap.parse_args()
    rows = run_scatter(args.n, args.k, args.codes, args.ebn0, args.trials, args.seed,
                       workers=args.workers, include_fresh=True)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(format_scatter_csv(rows, f"scatter n={args.n} k={args.k} ebn0={args.ebn0!r}"))
    blers = np.array([r.bler for r in rows[:-1]])
    q1, q3 = np.percentile(blers, [25, 75])
    better = np.mean(blers < rows[-1].bler)
    print(f"fixed codes: q1={q1:.3e} median={np.median(blers):.3e} q3={q3:.3e}")
    print(f"fresh code: {rows[-1].bler:.3e}  ({better:.0%} of fixed codes do better)")


if __name__ == "__main__":
    main()
