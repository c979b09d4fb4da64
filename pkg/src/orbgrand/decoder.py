"""GRAND query loop and its hard-detection and ORBGRAND schedules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from . import _kernels
from .channel import SoftBlock, rank_order
from .codes import LinearCode
from .gf2 import BitWord, DimensionError
from .patterns import PatternStream, apply_rank_permutation

DEFAULT_BUDGET = 10**7
FOUND = "found"
ABANDONED = "abandoned"

_INT64_MAX = np.iinfo(np.int64).max


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of one guessing run.

    ``queries`` is the number of membership tests made, counting the test of
    the received word itself; on ``found`` it is the schedule position of the
    returned word.
    """

    codeword: BitWord | None
    queries: int
    status: str

    @property
    def found(self) -> bool:
        return self.status == FOUND


def grand_core(
    member: Callable[[BitWord], bool],
    y_hard: BitWord,
    schedule: Iterable[BitWord],
    budget: int = DEFAULT_BUDGET,
) -> DecodeOutcome:
    """Subtract noise guesses from ``y_hard`` in schedule order until a codeword appears."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    queries = 0
    for z in schedule:
        if queries == 0 and z.value != 0:
            raise ValueError("schedule must start with the all-zero noise effect")
        queries += 1
        candidate = y_hard ^ z
        if member(candidate):
            return DecodeOutcome(candidate, queries, FOUND)
        if queries >= budget:
            break
    return DecodeOutcome(None, queries, ABANDONED)


def orbgrand_schedule(s: SoftBlock) -> Iterator[BitWord]:
    """Channel-domain noise guesses: the logistic stream mapped through the rank order."""
    r = rank_order(s)
    return (apply_rank_permutation(p, r) for p in PatternStream(s.n, "logistic"))


def hamming_schedule(n: int) -> Iterator[BitWord]:
    return (p.to_bitword() for p in PatternStream(n, "hamming"))


def search_flips(
    code: LinearCode, hard_bits: np.ndarray, perm0: np.ndarray, budget: int, ordering: str
) -> tuple[int, np.ndarray | None]:
    """Run a compiled search; return ``(queries, flipped channel indices or None)``.

    ``perm0`` is the 0-based rank order (``perm0[j]`` is the channel index of
    rank ``j + 1``). This is the array-level entry point used by the
    simulator; it makes the same queries as :func:`grand_core`.
    """
    search = _kernels.logistic_search if ordering == "logistic" else _kernels.hamming_search
    target = code.syndrome_words(hard_bits)
    cols = np.ascontiguousarray(code.column_syndromes[perm0])
    out = np.empty(code.n, dtype=np.int64)
    queries, m = search(cols, target, min(int(budget), _INT64_MAX), out)
    if m < 0:
        return int(queries), None
    return int(queries), perm0[out[:m] - 1]


def _decode(code: LinearCode, y_hard: BitWord, perm0: np.ndarray, budget: int, ordering: str) -> DecodeOutcome:
    if y_hard.n != code.n:
        raise DimensionError(f"received word has {y_hard.n} bits, code has n={code.n}")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    queries, flips = search_flips(code, y_hard.to_array(), perm0, budget, ordering)
    if flips is None:
        return DecodeOutcome(None, queries, ABANDONED)
    noise = BitWord.from_positions(code.n, (int(f) for f in flips))
    return DecodeOutcome(y_hard ^ noise, queries, FOUND)


def orbgrand_decode(code: LinearCode, s: SoftBlock, budget: int = DEFAULT_BUDGET) -> DecodeOutcome:
    """ORBGRAND: logistic-weight schedule placed by the reliability rank order.

    Only the hard decisions and the rank order of reliabilities are used.
    """
    if s.n != code.n:
        raise DimensionError(f"soft block has {s.n} values, code has n={code.n}")
    perm0 = rank_order(s).r - 1
    return _decode(code, s.hard, perm0, budget, "logistic")


def hard_grand_decode(code: LinearCode, y_hard: BitWord, budget: int = DEFAULT_BUDGET) -> DecodeOutcome:
    """Hard-detection GRAND: increasing Hamming weight, ties in lexicographic order."""
    return _decode(code, y_hard, np.arange(code.n), budget, "hamming")
