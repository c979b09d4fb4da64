"""BPSK over AWGN and the soft information ORBGRAND consumes.

Bit 0 maps to +1, bit 1 to -1; symbols have unit energy. ``sigma2`` is the
noise variance per real dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import BitWord, _bits_to_int


@dataclass(frozen=True, eq=False)
class SoftBlock:
    soft: np.ndarray
    sigma2: float
    hard: BitWord
    reliability: np.ndarray

    @classmethod
    def from_soft(cls, soft, sigma2: float) -> "SoftBlock":
        soft = np.array(soft, dtype=np.float64)
        soft.setflags(write=False)
        rel = np.abs(soft)
        rel.setflags(write=False)
        hard = BitWord(soft.size, _bits_to_int(soft < 0))
        return cls(soft, float(sigma2), hard, rel)

    @property
    def n(self) -> int:
        return self.soft.size

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SoftBlock)
            and self.sigma2 == other.sigma2
            and np.array_equal(self.soft, other.soft)
        )


@dataclass(frozen=True, eq=False)
class RankPermutation:
    """``r[j-1]`` is the 1-based channel index of the ``j``-th least reliable bit."""

    r: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=np.int64)
        if r.ndim != 1 or not np.array_equal(np.sort(r), np.arange(1, r.size + 1)):
            raise ValueError("r must be a permutation of 1..n")
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return self.r.size

    def __eq__(self, other) -> bool:
        return isinstance(other, RankPermutation) and np.array_equal(self.r, other.r)

    def __iter__(self):
        return iter(int(v) for v in self.r)


@dataclass(frozen=True)
class FlipModel:
    """Rank-ordered flip probabilities with the fitted logistic parameter.

    ``excluded`` counts entries at 0 or >= 1/2 left out of the regression;
    ``degenerate`` marks a fit with no decreasing trend (``beta`` is then 0).
    """

    probs: tuple[float, ...]
    beta: float
    excluded: int = 0
    degenerate: bool = False

    def fitted(self, count: int | None = None) -> np.ndarray:
        i = np.arange(1, (len(self.probs) if count is None else count) + 1)
        return logistic_flip_probs(self.beta, i)


class FitError(ValueError):
    pass


def ebn0_to_sigma2(ebn0_db: float, rate: float) -> float:
    """Noise variance for unit-energy BPSK at the given Eb/N0 and code rate."""
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    return 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))


def transmit(c: BitWord, sigma2: float, rng: np.random.Generator) -> SoftBlock:
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    x = 1.0 - 2.0 * c.to_array().astype(np.float64)
    return SoftBlock.from_soft(x + np.sqrt(sigma2) * rng.standard_normal(c.n), sigma2)


def rank_order(s: SoftBlock) -> RankPermutation:
    """Stable ascending sort of channel positions by reliability."""
    return RankPermutation(np.argsort(s.reliability, kind="stable") + 1)


def posterior_flip_prob(s: SoftBlock) -> np.ndarray:
    """Probability that each hard decision is wrong given its soft value."""
    if s.sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    # 1 / (1 + exp(2|y|/sigma2)) without overflow
    return np.exp(-np.logaddexp(0.0, 2.0 * s.reliability / s.sigma2))


def logistic_flip_probs(beta: float, ranks) -> np.ndarray:
    """``2**(-beta*i) / (1 + 2**(-beta*i))`` for 1-based ranks ``i``."""
    t = np.exp2(-beta * np.asarray(ranks, dtype=np.float64))
    return t / (1.0 + t)


def fit_beta(sorted_probs) -> FlipModel:
    """Least-squares fit of ``log2(A_i / (1 - A_i)) = -beta * i`` through the origin.

    ``i`` is the 1-based rank of each entry in the original sequence; entries
    at 0 or >= 1/2 are skipped and counted in ``excluded``.
    """
    probs = np.asarray(sorted_probs, dtype=np.float64)
    if probs.ndim != 1:
        raise FitError("expected a 1-D sequence")
    if np.any(np.diff(probs) > 0):
        raise FitError("probabilities must be non-increasing")
    ranks = np.arange(1, probs.size + 1, dtype=np.float64)
    usable = (probs > 0) & (probs < 0.5)
    excluded = int(probs.size - usable.sum())
    if usable.sum() < 2:
        raise FitError(f"need at least 2 probabilities strictly inside (0, 1/2), got {int(usable.sum())}")
    p, i = probs[usable], ranks[usable]
    model_probs = tuple(float(v) for v in probs)
    if p[0] == p[-1]:
        return FlipModel(model_probs, 0.0, excluded, degenerate=True)
    logit2 = np.log2(p) - np.log2(1.0 - p)
    beta = float(-(i @ logit2) / (i @ i))
    if beta <= 0:
        return FlipModel(model_probs, 0.0, excluded, degenerate=True)
    return FlipModel(model_probs, beta, excluded)


def rank_ordered_flip_curve(n: int, sigma2: float, blocks: int, rng: np.random.Generator) -> np.ndarray:
    """Mean over ``blocks`` transmissions of the rank-ordered posterior flip probabilities.

    Entry ``i`` is the average flip probability of the ``(i+1)``-th least
    reliable bit. The all-zero word is sent; by channel symmetry the curve
    does not depend on the codeword.
    """
    if blocks < 1:
        raise ValueError("blocks must be >= 1")
    soft = 1.0 + np.sqrt(sigma2) * rng.standard_normal((blocks, n))
    probs = np.exp(-np.logaddexp(0.0, 2.0 * np.abs(soft) / sigma2))
    return np.sort(probs, axis=1)[:, ::-1].mean(axis=0)
