"""Static bitvectors with rank/select, and invertible permutations.

All positions are 1-based. ``rank(c, 0)`` is 0 for every bitvector, so
boundary arithmetic in the block tree never needs a special case.

Scalar queries run on ``array('q')`` directories, which index and bisect
at C speed; the numpy arrays are kept for bulk construction and
serialization.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left, bisect_right

import numpy as np


def _as_int_array(values) -> array:
    return array("q", np.ascontiguousarray(values, dtype=np.int64).tobytes())


class RankSelectBitvector:
    """Plain bitvector with constant-time rank and select.

    The acceleration data is a full prefix-count table plus the positions
    of the ones and zeros.
    """

    def __init__(self, bits):
        self.bits = np.asarray(bits, dtype=bool).ravel()
        self.length = int(self.bits.size)
        counts = np.zeros(self.length + 1, dtype=np.int64)
        np.cumsum(self.bits, out=counts[1:])
        self._rank1 = _as_int_array(counts)
        self._ones = _as_int_array(np.flatnonzero(self.bits) + 1)
        self._zeros = _as_int_array(np.flatnonzero(~self.bits) + 1)
        self._bitlist = self.bits.tolist()

    def __len__(self):
        return self.length

    def __getitem__(self, p: int) -> int:
        if not 1 <= p <= self.length:
            raise IndexError(f"bit position {p} outside [1, {self.length}]")
        return int(self._bitlist[p - 1])

    def __repr__(self):
        return f"RankSelectBitvector({''.join('1' if b else '0' for b in self._bitlist[:64])}{'...' if self.length > 64 else ''})"

    @property
    def ones(self) -> int:
        return self._rank1[self.length]

    @property
    def zeros(self) -> int:
        return self.length - self._rank1[self.length]

    def rank1(self, p: int) -> int:
        if not 0 <= p <= self.length:
            raise IndexError(f"rank position {p} outside [0, {self.length}]")
        return self._rank1[p]

    def rank0(self, p: int) -> int:
        return p - self.rank1(p)

    def rank(self, c: int, p: int) -> int:
        return self.rank1(p) if c else self.rank0(p)

    def select1(self, r: int) -> int:
        if not 1 <= r <= len(self._ones):
            raise IndexError(f"select_1({r}) with {len(self._ones)} ones")
        return self._ones[r - 1]

    def select0(self, r: int) -> int:
        if not 1 <= r <= len(self._zeros):
            raise IndexError(f"select_0({r}) with {len(self._zeros)} zeros")
        return self._zeros[r - 1]

    def select(self, c: int, r: int) -> int:
        return self.select1(r) if c else self.select0(r)

    def rank1_array(self) -> np.ndarray:
        """Prefix counts as a numpy array, index p holding rank_1(p)."""
        return np.frombuffer(self._rank1, dtype=np.int64)

    def ones_array(self) -> np.ndarray:
        return np.frombuffer(self._ones, dtype=np.int64)

    def zeros_array(self) -> np.ndarray:
        return np.frombuffer(self._zeros, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, RankSelectBitvector) and np.array_equal(self.bits, other.bits)


class SparseBitvector:
    """Bitvector stored as the sorted positions of its ones.

    ``select1`` is a direct lookup. ``select0`` and ``rank`` are binary
    searches over the one positions: the r-th zero sits after exactly the
    ones whose count of preceding zeros, ``select1(j) - j``, is below r.
    """

    def __init__(self, ones, length: int):
        ones = np.ascontiguousarray(ones, dtype=np.int64)
        if ones.size:
            if np.any(np.diff(ones) <= 0):
                raise ValueError("one positions must be strictly increasing")
            if ones[0] < 1 or ones[-1] > length:
                raise ValueError(f"one positions must lie in [1, {length}]")
        self.length = int(length)
        self._ones = _as_int_array(ones)
        # zeros preceding the j-th one; non-decreasing
        self._zeros_before = _as_int_array(ones - np.arange(1, ones.size + 1))

    @classmethod
    def from_bits(cls, bits):
        bits = np.asarray(bits, dtype=bool).ravel()
        return cls(np.flatnonzero(bits) + 1, bits.size)

    def __len__(self):
        return self.length

    def __getitem__(self, p: int) -> int:
        if not 1 <= p <= self.length:
            raise IndexError(f"bit position {p} outside [1, {self.length}]")
        k = bisect_left(self._ones, p)
        return int(k < len(self._ones) and self._ones[k] == p)

    @property
    def ones(self) -> int:
        return len(self._ones)

    @property
    def zeros(self) -> int:
        return self.length - len(self._ones)

    def rank1(self, p: int) -> int:
        if not 0 <= p <= self.length:
            raise IndexError(f"rank position {p} outside [0, {self.length}]")
        return bisect_right(self._ones, p)

    def rank0(self, p: int) -> int:
        return p - self.rank1(p)

    def rank(self, c: int, p: int) -> int:
        return self.rank1(p) if c else self.rank0(p)

    def select1(self, r: int) -> int:
        if not 1 <= r <= len(self._ones):
            raise IndexError(f"select_1({r}) with {len(self._ones)} ones")
        return self._ones[r - 1]

    def select0(self, r: int) -> int:
        if not 1 <= r <= self.zeros:
            raise IndexError(f"select_0({r}) with {self.zeros} zeros")
        return r + bisect_left(self._zeros_before, r)

    def select(self, c: int, r: int) -> int:
        return self.select1(r) if c else self.select0(r)

    def ones_array(self) -> np.ndarray:
        return np.frombuffer(self._ones, dtype=np.int64)

    def to_bits(self) -> np.ndarray:
        bits = np.zeros(self.length, dtype=bool)
        bits[self.ones_array() - 1] = True
        return bits

    def __eq__(self, other):
        return (isinstance(other, SparseBitvector) and self.length == other.length
                and self._ones == other._ones)


class InvertiblePermutation:
    """Permutation of [1..size] with O(1) apply and invert (full inverse kept)."""

    def __init__(self, forward):
        forward = np.ascontiguousarray(forward, dtype=np.int64)
        size = forward.size
        inverse = np.zeros(size, dtype=np.int64)
        if size:
            if forward.min() < 1 or forward.max() > size:
                raise ValueError("permutation values must lie in [1, size]")
            inverse[forward - 1] = np.arange(1, size + 1)
            if np.any(inverse == 0):
                raise ValueError("not a permutation: repeated values")
        self.size = size
        self._fwd = _as_int_array(forward)
        self._inv = _as_int_array(inverse)

    def __len__(self):
        return self.size

    def apply(self, i: int) -> int:
        if not 1 <= i <= self.size:
            raise IndexError(f"permutation index {i} outside [1, {self.size}]")
        return self._fwd[i - 1]

    def invert(self, j: int) -> int:
        if not 1 <= j <= self.size:
            raise IndexError(f"permutation value {j} outside [1, {self.size}]")
        return self._inv[j - 1]

    __call__ = apply

    def forward_array(self) -> np.ndarray:
        return np.frombuffer(self._fwd, dtype=np.int64)

    def inverse_array(self) -> np.ndarray:
        return np.frombuffer(self._inv, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, InvertiblePermutation) and self._fwd == other._fwd
