"""The grid of block-boundary pairs used to find primary occurrences.

Every marked block ``B = B_left . B_right`` that is split further gives one
point pairing ``B_right`` (an X string) with ``B_left`` read backwards (a Y
string); every boundary between top-level blocks ``B_i | B_{i+1}`` gives
one point pairing the text suffix starting at ``B_{i+1}`` with ``B_i``
reversed. X and Y strings are ranked lexicographically (a proper prefix
sorts first, ties by text position) and the points become a permutation
x-rank -> y-rank stored in a wavelet tree. ``T[y]`` is where the point's X
string starts in the padded text; the strings themselves are never stored.
"""

from __future__ import annotations

import enum
from array import array
from functools import cmp_to_key
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .wavelet import WaveletTree


class Ordering(enum.IntEnum):
    LT = -1             # sorts before every string prefixed by the query
    PREFIX_RANGE = 0    # has the query as a prefix
    GT = 1              # sorts after every string prefixed by the query


class OccurrenceGrid:

    def __init__(self, col_to_row: WaveletTree, T, b0: int, n: int, tree=None):
        self.col_to_row = col_to_row
        self.T = array("q", T)
        self.b0 = b0
        self.n = n
        self.tree = tree

    @property
    def num_points(self) -> int:
        return len(self.T)

    def x_string_bounds(self, y: int) -> Tuple[int, int]:
        """(start, max length) of the X string of the point with y-rank y."""
        if not 1 <= y <= len(self.T):
            raise IndexError(f"row {y} outside [1, {len(self.T)}]")
        t = self.T[y - 1]
        if (t - 1) % self.b0 == 0:
            return t, self.n - t + 1
        return t, (t - 1) & -(t - 1)

    def y_string_length(self, y: int) -> int:
        t, max_len = self.x_string_bounds(y)
        return self.b0 if (t - 1) % self.b0 == 0 else max_len

    def row_of(self, x: int) -> int:
        return self.col_to_row.access(x)

    def x_string(self, x: int, limit: Optional[int] = None) -> list:
        t, max_len = self.x_string_bounds(self.row_of(x))
        length = max_len if limit is None else min(limit, max_len)
        return self.tree.extract_padded(t, length)

    def y_string(self, y: int, limit: Optional[int] = None) -> list:
        t, _ = self.x_string_bounds(y)
        length = self.y_string_length(y)
        if limit is not None:
            length = min(limit, length)
        return self.tree.extract_padded(t - length, length)[::-1]

    def compare_x(self, x: int, q: Sequence[int]) -> Ordering:
        """Where the X string of column x falls relative to strings prefixed by q.

        Symbols are read one, then 4, 16, ... at a time until the order is decided.
        """
        t = self.T[self.col_to_row.access(x) - 1]
        t1 = t - 1
        max_len = self.n - t1 if t1 % self.b0 == 0 else t1 & -t1
        length = min(len(q), max_len)
        tree = self.tree
        done, chunk = 0, 1
        while done < length:
            c = min(chunk, length - done)
            if c == 1:
                s = [tree._symbol(t + done)]
            else:
                s = []
                tree._read(0, t + done, c, s)
            head = q[done:done + c]
            if s != head:
                return Ordering.LT if s < head else Ordering.GT
            done += c
            chunk *= 4
        return Ordering.LT if length < len(q) else Ordering.PREFIX_RANGE

    def compare_y(self, y: int, q_rev: Sequence[int]) -> Ordering:
        """Same as :meth:`compare_x` for the left context of row y, read leftwards."""
        t = self.T[y - 1]
        t1 = t - 1
        max_len = self.b0 if t1 % self.b0 == 0 else t1 & -t1
        length = min(len(q_rev), max_len)
        tree = self.tree
        done, chunk = 0, 1
        while done < length:
            c = min(chunk, length - done)
            if c == 1:
                s = [tree._symbol(t1 - done)]
            else:
                s = []
                tree._read(0, t - done - c, c, s)
                s.reverse()
            head = q_rev[done:done + c]
            if s != head:
                return Ordering.LT if s < head else Ordering.GT
            done += c
            chunk *= 4
        return Ordering.LT if length < len(q_rev) else Ordering.PREFIX_RANGE

    def range_report(self, x1: int, x2: int, y1: int, y2: int, with_x: bool = True) -> List[Tuple[int, int]]:
        return self.col_to_row.range_report(x1, x2, y1, y2, with_x=with_x)

    def points(self) -> List[Tuple[int, int]]:
        return [(x, self.row_of(x)) for x in range(1, self.num_points + 1)]


# ---------------------------------------------------------------------------
# construction

def grid_points(tree) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(T, X length, Y length) of every point, in generation order.

    Split points come level by level in block order, then the top-level
    boundaries. A top-level boundary's X length is the whole suffix.
    """
    Ts, xl, yl = [], [], []
    for l, lv in enumerate(tree.levels[:-1]):
        starts = tree.explicit_block_starts(l)[lv.D.bits]
        half = lv.b // 2
        Ts.append(starts + half)
        xl.append(np.full(starts.size, half, dtype=np.int64))
        yl.append(np.full(starts.size, half, dtype=np.int64))
    tops = np.arange(1, tree.z_top, dtype=np.int64) * tree.b0 + 1
    Ts.append(tops)
    xl.append(tree.n - tops + 1)
    yl.append(np.full(tops.size, tree.b0, dtype=np.int64))
    return np.concatenate(Ts), np.concatenate(xl), np.concatenate(yl)


class _Reader:
    """Big-endian 16-bit encoding of symbol strings, so bytes order = symbol order."""

    def __init__(self, tree, text: Optional[np.ndarray]):
        self.tree = tree
        if text is not None:
            text = np.asarray(text, dtype=np.int64)
            self.fwd = text.astype(">u2").tobytes()
            self.rev = text[::-1].astype(">u2").tobytes()
        else:
            self.fwd = self.rev = None

    def forward(self, t: int, length: int) -> bytes:
        if self.fwd is not None:
            return self.fwd[2 * (t - 1):2 * (t - 1 + length)]
        return np.array(self.tree.extract_padded(t, length), dtype=">u2").tobytes()

    def backward(self, t: int, length: int) -> bytes:
        """``length`` symbols read leftwards from t-1."""
        if self.rev is not None:
            k = self.tree.n - t + 1
            return self.rev[2 * k:2 * (k + length)]
        return np.array(self.tree.extract_padded(t - length, length)[::-1], dtype=">u2").tobytes()


def _compare_suffixes(reader: _Reader, n: int, a: int, b: int) -> int:
    """Lexicographic comparison of the padded-text suffixes starting at a and b."""
    done, step = 0, 64
    while True:
        la, lb = min(step, n - a + 1 - done), min(step, n - b + 1 - done)
        sa, sb = reader.forward(a + done, la), reader.forward(b + done, lb)
        if sa != sb or la < step or lb < step:
            return (sa > sb) - (sa < sb)
        done += step
        step *= 2


def _sorted_order(keys: List[bytes], Ts: np.ndarray) -> List[int]:
    return sorted(range(len(keys)), key=lambda k: (keys[k], Ts[k]))


def build_grid(tree, text: Optional[np.ndarray] = None) -> "OccurrenceGrid":
    """Build the grid of ``tree``.

    ``text`` (the padded text, 0-based numpy array) only speeds up the
    sorting; without it every key is extracted from the tree.
    """
    Ts, xlen, ylen = grid_points(tree)
    Ts_list = Ts.tolist()
    reader = _Reader(tree, text)
    cap = tree.b0
    num = len(Ts_list)

    xkeys = [reader.forward(t, min(xl, cap)) for t, xl in zip(Ts_list, xlen.tolist())]
    ykeys = [reader.backward(t, yl) for t, yl in zip(Ts_list, ylen.tolist())]

    x_order = _sorted_order(xkeys, Ts_list)
    # suffix points sharing their first b0 symbols need the full comparison
    suffix_cmp = cmp_to_key(lambda a, b: _compare_suffixes(reader, tree.n, Ts_list[a], Ts_list[b]))
    k = 0
    while k < num:
        e = k + 1
        while e < num and xkeys[x_order[e]] == xkeys[x_order[k]]:
            e += 1
        if e - k > 1 and xlen[x_order[k]] >= cap:
            x_order[k:e] = sorted(x_order[k:e], key=suffix_cmp)
        k = e
    y_order = _sorted_order(ykeys, Ts_list)

    y_rank = np.empty(num, dtype=np.int64)
    y_rank[np.asarray(y_order, dtype=np.int64)] = np.arange(1, num + 1)
    col_to_row = y_rank[np.asarray(x_order, dtype=np.int64)] if num else np.zeros(0, dtype=np.int64)
    T = Ts[np.asarray(y_order, dtype=np.int64)] if num else np.zeros(0, dtype=np.int64)
    wt = WaveletTree(col_to_row, sigma=max(num, 1))
    return OccurrenceGrid(wt, T.tolist(), tree.b0, tree.n, tree)
