"""BLER and queries-per-bit curves for RLC[64,44] and RLC[128,105], soft and hard.

    python3 scripts/bler_sweeps.py --trials 100000 --workers 4
"""

import argparse
from pathlib import Path

from orbgrand.sim import SimConfig, run_sweep

PRESETS = {
    "rlc64": ("rlc-fresh:64,44", "2:0.5:6"),
    "rlc128": ("rlc-fresh:128,105", "3:0.5:7"),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--trials", type=int, default=10**4)
    ap.add_argument("--seed", type=int, default=2020)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--only", choices=sorted(PRESETS))
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    Path(args.outdir).mkdir(exist_ok=True)
    for name, (code, grid) in PRESETS.items():
        if args.only and name != args.only:
            continue
        for decoder in ("orbgrand", "hard-grand"):
            out = Path(args.outdir) / f"{name}_{decoder}.csv"
            cfg = SimConfig(code, decoder, grid, args.trials, seed=args.seed, out=str(out), workers=args.workers)
            for rec in run_sweep(cfg):
                print(f"{name} {decoder:10s} {rec.ebn0_db:4.1f} dB  bler={rec.bler:.3e}  q/bit={rec.avg_queries_per_bit:.3g}")


if __name__ == "__main__":
    main()
