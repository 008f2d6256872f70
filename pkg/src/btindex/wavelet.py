"""Pointerless balanced wavelet tree over a sequence of values in [1..sigma].

Each level keeps one bitvector holding the bits of all nodes of that
depth side by side; node boundaries are recovered with rank. A value goes
right at depth d when its bit ``depth-1-d`` (of ``value-1``) is set.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .succinct import RankSelectBitvector


class WaveletTree:

    def __init__(self, values=None, sigma: int = 0, *, levels: List[RankSelectBitvector] = None):
        if levels is not None:
            self.levels = levels
            self.size = len(levels[0]) if levels else 0
            self.sigma = sigma
            self.depth = len(levels)
            return
        seq = np.asarray(values, dtype=np.int64) - 1
        self.size = int(seq.size)
        self.sigma = int(sigma)
        self.depth = max(1, int(self.sigma - 1).bit_length())
        self.levels = []
        for d in range(self.depth):
            shift = self.depth - 1 - d
            bits = (seq >> shift) & 1
            self.levels.append(RankSelectBitvector(bits.astype(bool)))
            # stable partition inside each node: nodes are runs of equal high bits
            prefix = seq >> shift
            order = np.lexsort((bits, prefix >> 1))
            seq = seq[order]

    def __len__(self):
        return self.size

    def access(self, x: int) -> int:
        """Value at 1-based position x."""
        if not 1 <= x <= self.size:
            raise IndexError(f"position {x} outside [1, {self.size}]")
        p = x - 1                     # 0-based offset in the current level
        start, end = 0, self.size     # current node's range
        value = 0
        for bv in self.levels:
            r = bv._rank1
            ones_before = r[start]
            zeros_in = (end - start) - (r[end] - ones_before)
            if bv._bitlist[p]:
                p = start + zeros_in + (r[p] - ones_before)
                start = start + zeros_in
                value = value * 2 + 1
            else:
                p = start + (p - start) - (r[p] - ones_before)
                end = start + zeros_in
                value = value * 2
        return value + 1

    def range_report(self, x1: int, x2: int, y1: int, y2: int, with_x: bool = True) -> List[Tuple[int, int]]:
        """Points (x, value) with x in [x1, x2] and value in [y1, y2].

        With ``with_x=False`` the x coordinate is returned as 0, which
        skips the upward walk that recovers it.
        """
        out: List[Tuple[int, int]] = []
        x1, x2 = max(x1, 1), min(x2, self.size)
        y1, y2 = max(y1, 1), min(y2, self.sigma)
        if x1 > x2 or y1 > y2 or self.size == 0:
            return out
        top = 1 << self.depth
        # (depth, node start, node end, query lo, query hi, value lo) with 0-based half-open ranges
        stack = [(0, 0, self.size, x1 - 1, x2, 0)]
        while stack:
            d, start, end, lo, hi, vlo = stack.pop()
            span = top >> d
            if vlo + span <= y1 - 1 or vlo >= y2:
                continue
            if d == self.depth:
                for k in range(lo, hi):
                    x = self._locate(k, vlo) if with_x else 0
                    out.append((x, vlo + 1))
                continue
            r = self.levels[d]._rank1
            ones_before = r[start]
            zeros_in = (end - start) - (r[end] - ones_before)
            mid = start + zeros_in
            lo0 = start + (lo - start) - (r[lo] - ones_before)
            hi0 = start + (hi - start) - (r[hi] - ones_before)
            lo1 = mid + (r[lo] - ones_before)
            hi1 = mid + (r[hi] - ones_before)
            half = span >> 1
            if lo1 < hi1:
                stack.append((d + 1, mid, end, lo1, hi1, vlo + half))
            if lo0 < hi0:
                stack.append((d + 1, start, mid, lo0, hi0, vlo))
        return out

    def _locate(self, k: int, value0: int) -> int:
        """Original 1-based position of leaf offset k holding 0-based value ``value0``."""
        # node starts on the root-to-leaf path
        starts = [0] * (self.depth + 1)
        start, end = 0, self.size
        for d, bv in enumerate(self.levels):
            starts[d] = start
            r = bv._rank1
            zeros_in = (end - start) - (r[end] - r[start])
            if (value0 >> (self.depth - 1 - d)) & 1:
                start += zeros_in
            else:
                end = start + zeros_in
        p = k
        for d in range(self.depth - 1, -1, -1):
            bv = self.levels[d]
            s = starts[d]
            child_start = start
            if (value0 >> (self.depth - 1 - d)) & 1:
                p = bv.select1(bv.rank1(s) + (p - child_start) + 1) - 1
            else:
                p = bv.select0(bv.rank0(s) + (p - child_start) + 1) - 1
            start = s
        return p + 1
