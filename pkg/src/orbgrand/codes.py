"""Binary linear codes: random linear codes, alist ingestion, membership."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import rng
from .gf2 import BinMatrix, BitWord, ConstructionError, DimensionError, syndrome, systematic_generator


class AlistParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] binary linear code with parity-check ``H`` and generator ``G``."""

    n: int
    k: int
    H: BinMatrix = field(repr=False)
    G: BinMatrix = field(repr=False)
    label: str = ""

    def __post_init__(self):
        if not 1 <= self.k < self.n:
            raise DimensionError(f"need 1 <= k < n, got n={self.n}, k={self.k}")
        if (self.H.rows, self.H.cols) != (self.n - self.k, self.n):
            raise DimensionError(f"H is {self.H.rows}x{self.H.cols}, expected {self.n - self.k}x{self.n}")
        if (self.G.rows, self.G.cols) != (self.k, self.n):
            raise DimensionError(f"G is {self.G.rows}x{self.G.cols}, expected {self.k}x{self.n}")

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def column_syndromes(self) -> np.ndarray:
        """Packed syndrome of each unit vector, shape ``(n, ceil((n-k)/64))``."""
        cols = self.H.column_words()
        cols.setflags(write=False)
        return cols

    def syndrome_words(self, bits: np.ndarray) -> np.ndarray:
        """Packed syndrome of a 0/1 array, in the ``column_syndromes`` layout."""
        idx = np.flatnonzero(bits)
        if idx.size == 0:
            return np.zeros(self.column_syndromes.shape[1], dtype=np.uint64)
        return np.bitwise_xor.reduce(self.column_syndromes[idx], axis=0)

    def encode_array(self, u: np.ndarray) -> np.ndarray:
        return (u.astype(np.int64) @ self.G.array.astype(np.int64) & 1).astype(np.uint8)


def membership(code: LinearCode, y: BitWord) -> bool:
    if y.n != code.n:
        raise DimensionError(f"word has {y.n} bits, code has n={code.n}")
    return syndrome(code.H, y).value == 0


def rlc_random(n: int, k: int, seed: int, stream: int = 0) -> LinearCode:
    """Random linear code in systematic form, ``G = [I_k | P]``, ``H = [P^T | I_{n-k}]``.

    ``P`` is filled row-major from the raw bits of the Philox stream keyed by
    ``(seed, CODE, stream)``, so the code is identical on every platform.
    """
    if not 1 <= k < n:
        raise DimensionError(f"need 1 <= k < n, got n={n}, k={k}")
    m = n - k
    P = rng.raw_bits(seed, rng.CODE, stream, k * m).reshape(k, m)
    G = np.hstack([np.eye(k, dtype=np.uint8), P])
    H = np.hstack([P.T, np.eye(m, dtype=np.uint8)])
    label = f"rlc[{n},{k}]#{seed}" if stream == 0 else f"rlc[{n},{k}]#{seed}.{stream}"
    return LinearCode(n, k, BinMatrix(H), BinMatrix(G), label)


def code_from_parity_check(H: BinMatrix, label: str = "") -> LinearCode:
    G, _ = systematic_generator(H)
    return LinearCode(H.cols, H.cols - H.rows, H, G, label)


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise AlistParseError(lineno, f"non-integer token ({exc})") from None


def parse_alist(text: str) -> BinMatrix:
    """Parse MacKay's alist format into a dense parity-check matrix.

    Index lists are 1-based; zero entries are treated as padding.
    """
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    pos = 0

    def take(what: str) -> tuple[int, list[int]]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] + 1 if lines else 1
            raise AlistParseError(last, f"unexpected end of file, expected {what}")
        lineno, line = lines[pos]
        pos += 1
        return lineno, _ints(line, lineno)

    lineno, head = take("'n m' header")
    if len(head) != 2 or min(head) < 1:
        raise AlistParseError(lineno, "header must be two positive integers 'n m'")
    n, m = head
    lineno, maxdeg = take("maximum degrees")
    if len(maxdeg) != 2:
        raise AlistParseError(lineno, "expected two maximum degrees")
    lineno, col_deg = take("column degrees")
    if len(col_deg) != n:
        raise AlistParseError(lineno, f"expected {n} column degrees, got {len(col_deg)}")
    lineno, row_deg = take("row degrees")
    if len(row_deg) != m:
        raise AlistParseError(lineno, f"expected {m} row degrees, got {len(row_deg)}")

    H = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        lineno, idx = take(f"index list of column {j + 1}")
        idx = [i for i in idx if i != 0]
        if len(idx) != col_deg[j]:
            raise AlistParseError(lineno, f"column {j + 1} lists {len(idx)} rows, degree says {col_deg[j]}")
        for i in idx:
            if not 1 <= i <= m:
                raise AlistParseError(lineno, f"row index {i} outside [1, {m}]")
            H[i - 1, j] = 1
    for i in range(m):
        lineno, idx = take(f"index list of row {i + 1}")
        idx = sorted(j for j in idx if j != 0)
        if len(idx) != row_deg[i]:
            raise AlistParseError(lineno, f"row {i + 1} lists {len(idx)} columns, degree says {row_deg[i]}")
        if idx != list(np.flatnonzero(H[i]) + 1):
            raise AlistParseError(lineno, f"row {i + 1} disagrees with the column lists")
    return BinMatrix(H)


def format_alist(H: BinMatrix) -> str:
    a = H.array
    m, n = a.shape
    col_lists = [list(np.flatnonzero(a[:, j]) + 1) for j in range(n)]
    row_lists = [list(np.flatnonzero(a[i]) + 1) for i in range(m)]
    max_c = max(len(c) for c in col_lists)
    max_r = max(len(r) for r in row_lists)

    def padded(items, width):
        return " ".join(str(v) for v in list(items) + [0] * (width - len(items)))

    out = [f"{n} {m}", f"{max_c} {max_r}"]
    out.append(" ".join(str(len(c)) for c in col_lists))
    out.append(" ".join(str(len(r)) for r in row_lists))
    out += [padded(c, max_c) for c in col_lists]
    out += [padded(r, max_r) for r in row_lists]
    return "\n".join(out) + "\n"


def load_parity_check(path) -> LinearCode:
    path = Path(path)
    H = parse_alist(path.read_text(encoding="ascii"))
    return code_from_parity_check(H, label=path.stem)


def write_alist(H: BinMatrix, path) -> None:
    Path(path).write_text(format_alist(H), encoding="ascii")


__all__ = [
    "AlistParseError",
    "ConstructionError",
    "LinearCode",
    "code_from_parity_check",
    "format_alist",
    "load_parity_check",
    "membership",
    "parse_alist",
    "rlc_random",
    "write_alist",
]
