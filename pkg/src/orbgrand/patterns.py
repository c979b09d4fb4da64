"""Noise-effect query schedules in the rank domain.

Positions are 1-based ranks: position 1 is the least reliable bit. Two
orderings are provided.

``logistic``
    Sort key ``(w_L, w_H, positions)``: logistic weight (sum of positions)
    first, then the number of flipped bits, then lexicographic order of the
    ascending position list. Patterns with equal ``w_L`` are equally likely
    under the logistic reliability model, so the secondary keys are a
    convention; they are fixed here so every run queries in the same order.
    For fixed ``(w_L, w_H)`` the patterns are exactly the partitions of ``w_L``
    into ``w_H`` distinct parts no larger than ``n``.

``hamming``
    Sort key ``(w_H, positions)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .gf2 import BitWord, DimensionError

ORDERINGS = ("logistic", "hamming")


@dataclass(frozen=True)
class ErrorPattern:
    positions: tuple[int, ...]
    n: int

    def __post_init__(self):
        prev = 0
        for p in self.positions:
            if p <= prev or p > self.n:
                raise ValueError(f"positions must be strictly increasing in [1, {self.n}]: {self.positions}")
            prev = p

    @property
    def hamming_weight(self) -> int:
        return len(self.positions)

    @property
    def logistic_weight(self) -> int:
        return sum(self.positions)

    def to_bitword(self) -> BitWord:
        """The pattern itself as a rank-domain word (rank ``j`` at bit ``j - 1``)."""
        return BitWord.from_positions(self.n, (p - 1 for p in self.positions))


def logistic_weight(p: ErrorPattern) -> int:
    return p.logistic_weight


def hamming_weight(p: ErrorPattern) -> int:
    return p.hamming_weight


def _min_sum(j: int, lo: int) -> int:
    # j distinct parts, all > lo
    return j * lo + j * (j + 1) // 2


def _max_sum(j: int, n: int) -> int:
    # j distinct parts, all <= n
    return j * n - j * (j - 1) // 2


def first_partition(total: int, parts: int, n: int, lo: int = 0) -> list[int] | None:
    """Lexicographically smallest ``parts`` distinct integers in ``(lo, n]`` summing to ``total``."""
    if not _min_sum(parts, lo) <= total <= _max_sum(parts, n):
        return None
    out = []
    for j in range(parts, 0, -1):
        v = max(lo + 1, total - _max_sum(j - 1, n))
        out.append(v)
        total -= v
        lo = v
    return out


def next_partition(a: Sequence[int], n: int) -> list[int] | None:
    """Lexicographic successor of ``a`` among partitions with the same sum and length."""
    m = len(a)
    if m < 2:
        return None
    remaining = a[-1]
    for i in range(m - 2, -1, -1):
        remaining += a[i]
        tail = m - i - 1
        v = max(a[i] + 1, remaining - _max_sum(tail, n))
        # the remaining tail parts must exceed v
        if remaining - v >= _min_sum(tail, v):
            return list(a[:i]) + [v] + first_partition(remaining - v, tail, n, v)
    return None


def next_combination(a: Sequence[int], n: int) -> list[int] | None:
    m = len(a)
    for i in range(m - 1, -1, -1):
        if a[i] < n - (m - 1 - i):
            v = a[i] + 1
            return list(a[:i]) + list(range(v, v + m - i))
    return None


def _max_weight(n: int, ordering: str) -> int:
    return n * (n + 1) // 2 if ordering == "logistic" else n


_STATE_RE = re.compile(
    r"^(?P<ordering>\w+) n=(?P<n>\d+) cap=(?P<cap>-|\d+) w=(?P<w>\d+) cursor=(?P<cursor>start|end|\(([\d,]*)\))$"
)


class PatternStream:
    """Resumable iterator over all ``2**n`` error patterns in schedule order.

    ``max_weight_cap`` bounds the ordering's primary weight (``w_L`` for
    logistic, ``w_H`` for hamming); the stream is exhausted after the last
    pattern within the cap.
    """

    def __init__(self, n: int, ordering: str = "logistic", max_weight_cap: int | None = None):
        if n < 1:
            raise DimensionError("block length must be >= 1")
        if ordering not in ORDERINGS:
            raise ValueError(f"ordering must be one of {ORDERINGS}, got {ordering!r}")
        self.n = n
        self.ordering = ordering
        self.max_weight_cap = max_weight_cap
        self._weight = 0
        self._cursor: list[int] | None = None
        self._started = False
        self._done = False

    def __iter__(self) -> Iterator[ErrorPattern]:
        return self

    def __next__(self) -> ErrorPattern:
        if self._done:
            raise StopIteration
        if not self._started:
            self._started = True
            self._weight, self._cursor = 0, []
        else:
            self._advance()
        if self._done:
            raise StopIteration
        return ErrorPattern(tuple(self._cursor), self.n)

    @property
    def exhausted(self) -> bool:
        return self._done

    def _limit(self) -> int:
        top = _max_weight(self.n, self.ordering)
        if self.max_weight_cap is not None:
            top = min(top, self.max_weight_cap)
        return top

    def _advance(self) -> None:
        n, cur = self.n, self._cursor
        if self.ordering == "hamming":
            nxt = next_combination(cur, n)
            if nxt is None:
                m = len(cur) + 1
                nxt = list(range(1, m + 1)) if m <= self._limit() else None
                self._weight = m
            self._set(nxt)
            return
        nxt = next_partition(cur, n)
        w, m = self._weight, len(cur)
        while nxt is None:
            m += 1
            if m * (m + 1) // 2 > w:
                w, m = w + 1, 1
                if w > self._limit():
                    break
            nxt = first_partition(w, m, n)
        self._weight = w
        self._set(nxt)

    def _set(self, nxt: list[int] | None) -> None:
        if nxt is None:
            self._done = True
            self._cursor = None
        else:
            self._cursor = nxt

    def next_batch(self, size: int) -> list[ErrorPattern]:
        """Up to ``size`` further patterns; fewer only when the stream runs out."""
        out = []
        for p in self:
            out.append(p)
            if len(out) == size:
                break
        return out

    def state(self) -> str:
        """Plain-text cursor: ``"<ordering> n=<n> cap=<cap|-> w=<weight> cursor=<start|end|(p1,p2,..)>"``."""
        cap = "-" if self.max_weight_cap is None else str(self.max_weight_cap)
        if not self._started:
            cursor = "start"
        elif self._done:
            cursor = "end"
        else:
            cursor = "(" + ",".join(map(str, self._cursor)) + ")"
        return f"{self.ordering} n={self.n} cap={cap} w={self._weight} cursor={cursor}"

    @classmethod
    def from_state(cls, text: str) -> "PatternStream":
        match = _STATE_RE.match(text.strip())
        if match is None:
            raise ValueError(f"malformed stream state: {text!r}")
        cap = None if match["cap"] == "-" else int(match["cap"])
        stream = cls(int(match["n"]), match["ordering"], cap)
        stream._weight = int(match["w"])
        cursor = match["cursor"]
        if cursor == "end":
            stream._started, stream._done = True, True
        elif cursor != "start":
            body = cursor[1:-1]
            stream._cursor = [int(v) for v in body.split(",")] if body else []
            stream._started = True
            ErrorPattern(tuple(stream._cursor), stream.n)
        return stream


def next_pattern(stream: PatternStream) -> ErrorPattern | None:
    """Next pattern, or ``None`` once the stream is exhausted."""
    return next(stream, None)


def logistic_patterns(n: int, max_weight_cap: int | None = None) -> PatternStream:
    return PatternStream(n, "logistic", max_weight_cap)


def hamming_patterns(n: int, max_weight_cap: int | None = None) -> PatternStream:
    return PatternStream(n, "hamming", max_weight_cap)


def apply_rank_permutation(p: ErrorPattern, r) -> BitWord:
    """Map a rank-domain pattern to channel positions.

    ``r`` is a :class:`~orbgrand.channel.RankPermutation` or a sequence of
    1-based channel indices with ``r[j-1]`` the channel index of the ``j``-th
    least reliable bit.
    """
    perm = np.asarray(getattr(r, "r", r))
    if perm.shape != (p.n,):
        raise DimensionError(f"pattern length {p.n} vs permutation length {perm.size}")
    return BitWord.from_positions(p.n, (int(perm[j - 1]) - 1 for j in p.positions))
