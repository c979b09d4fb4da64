"""Seeded Monte Carlo harness for BLER and query-complexity curves.

Trial ``t`` draws its message and noise from the Philox stream keyed by
``(seed, t)``; a re-randomized code (``rlc-fresh``) is drawn from the code
stream ``(seed, t + 1)``. Aggregates are integer sums, so a run gives the
same numbers for any split of trials across worker processes.

A block error is counted when the decoder abandons at its budget or when
the decoded word differs from the transmitted codeword.
"""

from __future__ import annotations

import csv
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import rng
from .channel import ebn0_to_sigma2
from .codes import LinearCode, load_parity_check, rlc_random
from .decoder import DEFAULT_BUDGET, search_flips

DECODERS = {"orbgrand": "logistic", "hard-grand": "hamming"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CodeSpec:
    kind: str  # "rlc" | "rlc-fresh" | "alist"
    n: int = 0
    k: int = 0
    seed: int = 0
    path: str = ""

    @classmethod
    def parse(cls, text: str) -> "CodeSpec":
        kind, _, body = text.partition(":")
        try:
            if kind == "rlc":
                n, k, seed = (int(v) for v in body.split(","))
                spec = cls("rlc", n, k, seed)
            elif kind == "rlc-fresh":
                n, k = (int(v) for v in body.split(","))
                spec = cls("rlc-fresh", n, k)
            elif kind == "alist":
                if not body:
                    raise ValueError
                return cls("alist", path=body)
            else:
                raise ValueError
        except ValueError:
            raise ConfigError(
                f"bad code spec {text!r}; expected rlc:n,k,seed | rlc-fresh:n,k | alist:path"
            ) from None
        if not 1 <= spec.k < spec.n:
            raise ConfigError(f"need 1 <= k < n in {text!r}")
        return spec

    def __str__(self) -> str:
        if self.kind == "rlc":
            return f"rlc:{self.n},{self.k},{self.seed}"
        if self.kind == "rlc-fresh":
            return f"rlc-fresh:{self.n},{self.k}"
        return f"alist:{self.path}"


@lru_cache(maxsize=8)
def _fixed_code(spec: CodeSpec) -> LinearCode:
    if spec.kind == "rlc":
        return rlc_random(spec.n, spec.k, spec.seed)
    return load_parity_check(spec.path)


def parse_grid(text: str) -> tuple[float, ...]:
    """``"start:step:stop"`` (stop inclusive) or a single value."""
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"bad Eb/N0 grid {text!r}") from None
    if len(vals) == 1:
        return (vals[0],)
    if len(vals) != 3:
        raise ConfigError(f"Eb/N0 grid must be start:step:stop, got {text!r}")
    start, step, stop = vals
    if step <= 0:
        raise ConfigError("Eb/N0 step must be positive")
    count = math.floor((stop - start) / step + 1e-9) + 1
    return tuple(round(start + i * step, 10) for i in range(max(count, 0)))


@dataclass(frozen=True)
class SimConfig:
    code: str
    decoder: str = "orbgrand"
    ebn0: tuple[float, ...] = (4.0,)
    trials: int = 1000
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    out: str | None = None
    workers: int = 1
    timing: bool = False
    code_spec: CodeSpec = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "code_spec", CodeSpec.parse(self.code))
        if isinstance(self.ebn0, str):
            object.__setattr__(self, "ebn0", parse_grid(self.ebn0))
        object.__setattr__(self, "ebn0", tuple(float(v) for v in self.ebn0))
        if not self.ebn0:
            raise ConfigError("Eb/N0 grid is empty")
        if self.decoder not in DECODERS:
            raise ConfigError(f"decoder must be one of {sorted(DECODERS)}, got {self.decoder!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.budget < 1:
            raise ConfigError("budget must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def validate(self) -> tuple[int, int]:
        """Resolve the code (loading files) and check the output path; returns ``(n, k)``."""
        spec = self.code_spec
        if spec.kind == "alist":
            try:
                code = _fixed_code(spec)
            except (OSError, ValueError) as exc:
                raise ConfigError(f"cannot load {spec.path}: {exc}") from exc
            n, k = code.n, code.k
        else:
            n, k = spec.n, spec.k
        if self.out is not None:
            parent = Path(self.out).resolve().parent
            if not parent.is_dir() or not os.access(parent, os.W_OK):
                raise ConfigError(f"output directory {parent} is not writable")
        return n, k

    def echo(self) -> str:
        """Result-determining fields only; worker count and paths are left out."""
        grid = ",".join(repr(v) for v in self.ebn0)
        return (
            f"code={self.code_spec} decoder={self.decoder} ebn0={grid} "
            f"trials={self.trials} budget={self.budget} seed={self.seed}"
        )


@dataclass(frozen=True)
class SimRecord:
    ebn0_db: float
    trials: int
    block_errors: int
    abandonments: int
    bler: float
    avg_queries_per_bit: float
    wall_seconds: float


def _trial_code(spec: CodeSpec, seed: int, trial: int) -> LinearCode:
    if spec.kind == "rlc-fresh":
        return rlc_random(spec.n, spec.k, seed, stream=trial + 1)
    return _fixed_code(spec)


def run_trial(code: LinearCode, seed: int, trial: int, sigma2: float, ordering: str, budget: int):
    """One transmission; returns ``(block_error, abandoned, queries)``.

    Draw order from the trial stream: ``k`` message bits, then ``n`` unit
    normals (the same draws :func:`orbgrand.channel.transmit` makes).
    """
    g = rng.trial_generator(seed, trial)
    u = g.integers(0, 2, code.k, dtype=np.uint8)
    c = code.encode_array(u)
    soft = (1.0 - 2.0 * c) + math.sqrt(sigma2) * g.standard_normal(code.n)
    hard = (soft < 0).astype(np.uint8)
    if ordering == "logistic":
        perm0 = np.argsort(np.abs(soft), kind="stable")
    else:
        perm0 = np.arange(code.n)
    queries, flips = search_flips(code, hard, perm0, budget, ordering)
    if flips is None:
        return True, True, queries
    hard[flips] ^= 1
    return not np.array_equal(hard, c), False, queries


def _run_chunk(cfg: SimConfig, ebn0_db: float, start: int, stop: int) -> tuple[int, int, int]:
    spec = cfg.code_spec
    ordering = DECODERS[cfg.decoder]
    errors = abandons = total_queries = 0
    for t in range(start, stop):
        code = _trial_code(spec, cfg.seed, t)
        sigma2 = ebn0_to_sigma2(ebn0_db, code.rate)
        err, ab, q = run_trial(code, cfg.seed, t, sigma2, ordering, cfg.budget)
        errors += err
        abandons += ab
        total_queries += q
    return errors, abandons, total_queries


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    size = max(1, math.ceil(trials / (workers * 4)))
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def run_point(cfg: SimConfig, ebn0_db: float) -> SimRecord:
    n, _ = cfg.validate()
    t0 = time.perf_counter()
    if cfg.workers == 1:
        errors, abandons, total_queries = _run_chunk(cfg, ebn0_db, 0, cfg.trials)
    else:
        with ProcessPoolExecutor(cfg.workers) as pool:
            futures = [pool.submit(_run_chunk, cfg, ebn0_db, a, b) for a, b in _chunks(cfg.trials, cfg.workers)]
            parts = [f.result() for f in futures]
        errors, abandons, total_queries = (sum(col) for col in zip(*parts))
    return SimRecord(
        ebn0_db=ebn0_db,
        trials=cfg.trials,
        block_errors=errors,
        abandonments=abandons,
        bler=errors / cfg.trials,
        avg_queries_per_bit=total_queries / (cfg.trials * n),
        wall_seconds=time.perf_counter() - t0,
    )


def record_columns(timing: bool) -> list[str]:
    names = [f.name for f in fields(SimRecord)]
    return names if timing else [c for c in names if c != "wall_seconds"]


def format_csv(cfg: SimConfig, records: list[SimRecord]) -> str:
    """CSV text: a ``#`` config line, a header, one row per record.

    ``wall_seconds`` is written only when ``cfg.timing`` is set, so that the
    default output is a pure function of the configuration.
    """
    cols = record_columns(cfg.timing)
    buf = io.StringIO()
    buf.write(f"# {cfg.echo()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for rec in records:
        row = asdict(rec)
        writer.writerow([repr(row[c]) if isinstance(row[c], float) else row[c] for c in cols])
    return buf.getvalue()


def run_sweep(cfg: SimConfig) -> list[SimRecord]:
    cfg.validate()
    records = [run_point(cfg, e) for e in cfg.ebn0]
    if cfg.out is not None:
        try:
            Path(cfg.out).write_text(format_csv(cfg, records))
        except OSError as exc:
            raise ConfigError(f"cannot write {cfg.out}: {exc}") from exc
    return records


@dataclass(frozen=True)
class ScatterRow:
    code_seed: int | str
    bler: float
    avg_queries_per_bit: float


def run_scatter(
    n: int,
    k: int,
    num_codes: int,
    ebn0_db: float,
    trials: int,
    seed: int,
    *,
    decoder: str = "orbgrand",
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    include_fresh: bool = False,
) -> list[ScatterRow]:
    """Evaluate ``num_codes`` independent RLCs; code ``i`` uses ``code_seed = seed + i``.

    Every code sees the same trial streams (keyed by ``seed``). With
    ``include_fresh`` a final row, ``code_seed="fresh"``, re-draws the code
    on every trial.
    """
    if num_codes < 1:
        raise ConfigError("num_codes must be >= 1")
    rows = []
    for i in range(num_codes):
        cfg = SimConfig(f"rlc:{n},{k},{seed + i}", decoder, (ebn0_db,), trials, budget, seed, workers=workers)
        rec = run_point(cfg, ebn0_db)
        rows.append(ScatterRow(seed + i, rec.bler, rec.avg_queries_per_bit))
    if include_fresh:
        cfg = SimConfig(f"rlc-fresh:{n},{k}", decoder, (ebn0_db,), trials, budget, seed, workers=workers)
        rec = run_point(cfg, ebn0_db)
        rows.append(ScatterRow("fresh", rec.bler, rec.avg_queries_per_bit))
    return rows


def format_scatter_csv(rows: list[ScatterRow], echo: str) -> str:
    buf = io.StringIO()
    buf.write(f"# {echo}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["code_seed", "bler", "avg_queries_per_bit"])
    for r in rows:
        writer.writerow([r.code_seed, repr(r.bler), repr(r.avg_queries_per_bit)])
    return buf.getvalue()
