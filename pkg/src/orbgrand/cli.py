"""Command-line entry point: ``orbgrand {sweep,scatter,beta-fit,patterns}``."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

from . import rng
from .channel import FitError, ebn0_to_sigma2, fit_beta, logistic_flip_probs, rank_ordered_flip_curve
from .decoder import DEFAULT_BUDGET
from .patterns import PatternStream
from .sim import ConfigError, SimConfig, format_csv, format_scatter_csv, run_scatter, run_sweep

log = logging.getLogger("orbgrand")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc}") from exc


def _cmd_sweep(args) -> None:
    cfg = SimConfig(
        code=args.code,
        decoder=args.decoder,
        ebn0=args.ebn0,
        trials=args.trials,
        budget=args.budget,
        seed=args.seed,
        out=args.out,
        workers=args.workers,
        timing=args.timing,
    )
    cfg.validate()
    records = run_sweep(cfg)
    for rec in records:
        log.info(
            "Eb/N0 %.2f dB: bler=%.3g queries/bit=%.4g abandoned=%d (%.1fs)",
            rec.ebn0_db, rec.bler, rec.avg_queries_per_bit, rec.abandonments, rec.wall_seconds,
        )
    if args.out is None:
        sys.stdout.write(format_csv(cfg, records))


def _cmd_scatter(args) -> None:
    if args.out is not None:
        # surface a bad path before the simulation runs
        SimConfig(f"rlc:{args.n},{args.k},0", out=args.out).validate()
    rows = run_scatter(
        args.n, args.k, args.codes, args.ebn0, args.trials, args.seed,
        decoder=args.decoder, budget=args.budget, workers=args.workers, include_fresh=args.fresh,
    )
    echo = (
        f"scatter n={args.n} k={args.k} codes={args.codes} ebn0={args.ebn0!r} trials={args.trials} "
        f"decoder={args.decoder} budget={args.budget} seed={args.seed}"
    )
    _emit(format_scatter_csv(rows, echo), args.out)


def _cmd_beta_fit(args) -> None:
    rate = args.rate
    if not 0 < rate <= 1:
        raise ConfigError("rate must be in (0, 1]")
    sigma2 = ebn0_to_sigma2(args.ebn0, rate)
    curve = rank_ordered_flip_curve(args.n, sigma2, args.blocks, rng.generator(args.seed, 0))
    try:
        model = fit_beta(curve)
    except FitError as exc:
        raise ConfigError(str(exc)) from exc
    fitted = logistic_flip_probs(model.beta, range(1, args.n + 1))
    buf = io.StringIO()
    buf.write(f"# beta-fit n={args.n} ebn0={args.ebn0!r} rate={rate!r} blocks={args.blocks} seed={args.seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rank_index", "empirical_flip_prob", "fitted_prob", "beta"])
    for i in range(args.n):
        w.writerow([i + 1, repr(float(curve[i])), repr(float(fitted[i])), repr(model.beta)])
    _emit(buf.getvalue(), args.out)


def _cmd_patterns(args) -> None:
    stream = PatternStream(args.n, args.ordering)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["query", "w_L", "w_H", "positions", "bits"])
    for i, p in enumerate(stream.next_batch(args.count), start=1):
        bits = "".join("1" if j in p.positions else "0" for j in range(1, args.n + 1))
        w.writerow([i, p.logistic_weight, p.hamming_weight, " ".join(map(str, p.positions)), bits])
    _emit(buf.getvalue(), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbgrand", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def sim_flags(p):
        p.add_argument("--decoder", choices=["orbgrand", "hard-grand"], default="orbgrand")
        p.add_argument("--trials", type=int, default=10_000)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("-v", "--verbose", action="store_true", help="log per-point progress")

    p = sub.add_parser("sweep", help="BLER and queries/bit over an Eb/N0 grid")
    p.add_argument("--code", required=True, help="rlc:n,k,seed | rlc-fresh:n,k | alist:path")
    p.add_argument("--ebn0", required=True, help="start:step:stop in dB (stop inclusive) or one value")
    p.add_argument("--timing", action="store_true", help="add the wall_seconds column")
    sim_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("scatter", help="per-code BLER vs queries/bit for independent RLCs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--codes", type=int, default=50)
    p.add_argument("--ebn0", type=float, required=True)
    p.add_argument("--fresh", action="store_true", help="append a row for a per-trial re-randomized RLC")
    sim_flags(p)
    p.set_defaults(func=_cmd_scatter)

    p = sub.add_parser("beta-fit", help="rank-ordered AWGN flip probabilities vs the fitted logistic model")
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--ebn0", type=float, default=4.0)
    p.add_argument("--rate", type=float, default=105 / 128)
    p.add_argument("--blocks", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_beta_fit)

    p = sub.add_parser("patterns", help="dump the first query patterns in the rank domain")
    p.add_argument("--n", type=int, default=14)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--ordering", choices=["logistic", "hamming"], default="logistic")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_patterns)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING, format="%(message)s")
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"orbgrand: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"orbgrand: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"orbgrand: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
