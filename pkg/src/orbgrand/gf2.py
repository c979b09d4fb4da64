"""Dense GF(2) linear algebra on packed bit blocks.

Packing convention: bit ``i`` of a block (0-based channel position ``i``) is
bit ``i % 64`` of word ``i // 64``, i.e. LSB-first within little-endian
64-bit words. ``BitWord.value`` is the same layout as one Python integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class DimensionError(ValueError):
    """Operands have incompatible lengths or shapes."""


class ConstructionError(ValueError):
    """A matrix does not satisfy the rank requirement of a construction."""


def _bits_to_int(bits: np.ndarray) -> int:
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _int_to_bits(value: int, n: int) -> np.ndarray:
    raw = value.to_bytes((n + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[:n]


@dataclass(frozen=True)
class BitWord:
    """Fixed-length binary block stored as a packed integer."""

    n: int
    value: int = 0

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value))
        if self.n < 1:
            raise DimensionError(f"BitWord length must be >= 1, got {self.n}")
        if self.value < 0 or self.value >> self.n:
            raise ValueError(f"value does not fit in {self.n} bits")

    @classmethod
    def zeros(cls, n: int) -> "BitWord":
        return cls(n, 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitWord":
        arr = np.fromiter((int(b) for b in bits), dtype=np.int64)
        if arr.size and ((arr < 0) | (arr > 1)).any():
            raise ValueError("bits must be 0 or 1")
        return cls(int(arr.size), _bits_to_int(arr))

    @classmethod
    def from_str(cls, text: str) -> "BitWord":
        """Parse ``"1100"``; the first character is position 0."""
        return cls.from_bits(int(ch) for ch in text.strip())

    @classmethod
    def from_positions(cls, n: int, positions: Iterable[int]) -> "BitWord":
        """Word with ones at the given 0-based positions."""
        value = 0
        for p in map(int, positions):
            if not 0 <= p < n:
                raise DimensionError(f"position {p} outside [0, {n})")
            value |= 1 << p
        return cls(n, value)

    def to_array(self) -> np.ndarray:
        return _int_to_bits(self.value, self.n)

    def words(self) -> np.ndarray:
        """Packed uint64 words, LSB-first."""
        nwords = (self.n + 63) // 64
        raw = self.value.to_bytes(8 * nwords, "little")
        return np.frombuffer(raw, dtype="<u8").astype(np.uint64)

    def weight(self) -> int:
        return bin(self.value).count("1")

    def positions(self) -> list[int]:
        return [i for i in range(self.n) if (self.value >> i) & 1]

    def __getitem__(self, i: int) -> int:
        if not -self.n <= i < self.n:
            raise IndexError(i)
        return (self.value >> (i % self.n)) & 1

    def __len__(self) -> int:
        return self.n

    def __xor__(self, other: "BitWord") -> "BitWord":
        return xor(self, other)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_array())


def xor(a: BitWord, b: BitWord) -> BitWord:
    if a.n != b.n:
        raise DimensionError(f"length mismatch: {a.n} vs {b.n}")
    return BitWord(a.n, a.value ^ b.value)


class BinMatrix:
    """Immutable dense matrix over GF(2)."""

    __slots__ = ("_a", "_row_ints")

    def __init__(self, entries):
        a = np.array(entries, dtype=np.uint8, copy=True)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionError(f"expected a non-empty 2-D array, got shape {a.shape}")
        if (a > 1).any():
            raise ValueError("entries must be 0 or 1")
        a.setflags(write=False)
        self._a = a
        self._row_ints = None

    @classmethod
    def from_row_ints(cls, rows: Sequence[int], cols: int) -> "BinMatrix":
        return cls(np.array([_int_to_bits(r, cols) for r in rows], dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        """Read-only uint8 view of the entries."""
        return self._a

    @property
    def row_ints(self) -> tuple[int, ...]:
        if self._row_ints is None:
            self._row_ints = tuple(_bits_to_int(row) for row in self._a)
        return self._row_ints

    def transpose(self) -> "BinMatrix":
        return BinMatrix(self._a.T)

    def rank(self) -> int:
        return len(_echelon(self.row_ints)[0])

    def column_words(self) -> np.ndarray:
        """Column ``j`` packed as a (rows)-bit syndrome: shape ``(cols, ceil(rows/64))``.

        XOR-ing the columns at the set positions of ``y`` gives ``syndrome(H, y)``
        in the same packing, which is what the search kernels consume.
        """
        nwords = (self.rows + 63) // 64
        padded = np.zeros((self.cols, 64 * nwords), dtype=np.uint8)
        padded[:, : self.rows] = self._a.T
        packed = np.packbits(padded, axis=1, bitorder="little")
        return packed.view("<u8").astype(np.uint64).reshape(self.cols, nwords)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinMatrix) and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash((self._a.shape, self.row_ints))

    def __repr__(self) -> str:
        return f"BinMatrix({self.rows}x{self.cols})"


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def syndrome(H: BinMatrix, y: BitWord) -> BitWord:
    """``H @ y.T`` over GF(2); bit ``i`` of the result is the check of row ``i``."""
    if H.cols != y.n:
        raise DimensionError(f"H has {H.cols} columns but word has {y.n} bits")
    value = 0
    for i, row in enumerate(H.row_ints):
        value |= _parity(row & y.value) << i
    return BitWord(H.rows, value)


def _echelon(rows: Sequence[int]) -> tuple[list[tuple[int, int]], int | None]:
    """Row-by-row reduction with the lowest set column as pivot.

    Returns ``(basis, first_dependent)`` where ``basis`` holds
    ``(pivot_column, reduced_row)`` pairs in insertion order.
    """
    basis: list[tuple[int, int]] = []
    first_dependent = None
    for i, row in enumerate(rows):
        for col, brow in basis:
            if (row >> col) & 1:
                row ^= brow
        if row == 0:
            if first_dependent is None:
                first_dependent = i
            continue
        pivot = (row & -row).bit_length() - 1
        # keep earlier basis rows clear of the new pivot column
        basis = [(c, b ^ row if (b >> pivot) & 1 else b) for c, b in basis]
        basis.append((pivot, row))
    return basis, first_dependent


def systematic_generator(H: BinMatrix) -> tuple[BinMatrix, list[int]]:
    """Generator matrix for the null space of a full-row-rank ``H``.

    ``H`` is brought to reduced row echelon form taking, for each row in turn,
    its leftmost surviving nonzero column as pivot. The returned
    ``pivot_columns`` lists those columns in row order; every other column is
    an information column, and row ``i`` of ``G`` is the codeword with a single
    one on the ``i``-th information column.
    """
    basis, dependent = _echelon(H.row_ints)
    if dependent is not None:
        raise ConstructionError(
            f"parity-check matrix is rank deficient: row {dependent} depends on earlier rows"
        )
    n = H.cols
    pivots = [c for c, _ in basis]
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    if not free:
        raise ConstructionError("parity-check matrix has full column rank; code has k = 0")
    g_rows = []
    for f in free:
        word = 1 << f
        for col, row in basis:
            if (row >> f) & 1:
                word |= 1 << col
        g_rows.append(word)
    return BinMatrix.from_row_ints(g_rows, n), pivots


def encode(G: BinMatrix, u: BitWord) -> BitWord:
    """``u @ G`` over GF(2)."""
    if u.n != G.rows:
        raise DimensionError(f"message has {u.n} bits but G has {G.rows} rows")
    value = 0
    for i, row in enumerate(G.row_ints):
        if (u.value >> i) & 1:
            value ^= row
    return BitWord(G.cols, value)
