"""Block tree construction, extraction and position projection.

The text gets a terminator (``sigma + 1``) and is padded with a second
reserved symbol (``sigma + 2``) up to ``z_top * b0`` symbols, with ``b0`` the
smallest power of two such that ``z * b0`` covers the terminated text.
Level ``l`` works on ``S_l``, the concatenation of the blocks whose
ancestors are all marked. Pairs and sources are searched among the windows
of ``S_l`` that are also substrings of the text, so a match never runs
across two blocks that are not neighbours in the text. Unmarked blocks keep no pointer; their source
is recovered through the sparse bitvector ``F_l`` and the permutation
``pi_l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import lz
from .succinct import InvertiblePermutation, RankSelectBitvector, SparseBitvector


class BuildInvariantError(RuntimeError):
    """Construction produced a structure violating a block tree invariant."""


# ---------------------------------------------------------------------------
# leftmost-occurrence search with Karp-Rabin fingerprints

_MODS = (2147483647, 2147483629)
_BASES = (1000003, 911382323)
_CHUNK = 1 << 22


def _powers(base: int, mod: int, count: int) -> np.ndarray:
    out = np.empty(max(count, 1), dtype=np.int64)
    out[0] = 1
    filled, mult = 1, base % mod
    while filled < count:
        k = min(filled, count - filled)
        out[filled:filled + k] = out[:k] * mult % mod
        filled += k
        mult = mult * mult % mod
    return out[:count]


def _window_keys(seq: np.ndarray, length: int) -> np.ndarray:
    """Fingerprint of every window ``seq[q:q+length]`` (equal windows, equal keys)."""
    n = seq.size
    key = np.zeros(n - length + 1, dtype=np.int64)
    for mod, base in zip(_MODS, _BASES):
        pw = _powers(base, mod, n)
        inv = _powers(pow(base, -1, mod), mod, n - length + 1)
        pref = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(seq * pw % mod, out=pref[1:])
        pref %= mod
        raw = (pref[length:] - pref[:-length]) % mod
        key = key * _MODS[1] + raw * inv % mod
    return key


def _gather(seq: np.ndarray, starts: np.ndarray, length: int) -> np.ndarray:
    return seq[starts[:, None] + np.arange(length)]


def seam_windows(starts: np.ndarray, b: int, length: int) -> np.ndarray:
    """Mask of the windows of S_l that cross a seam between blocks not adjacent in the text.

    ``starts`` are the text offsets of the explicit blocks of length b.
    """
    nb = starts.size
    count = nb * b - length + 1
    diff = np.zeros(count + 1, dtype=np.int64)
    seams = (np.flatnonzero(starts[:-1] + b != starts[1:]) + 1) * b
    lo = np.maximum(seams - length + 1, 0)
    hi = np.minimum(seams, count)
    np.add.at(diff, lo, 1)
    np.add.at(diff, hi, -1)
    return np.cumsum(diff[:-1]) > 0


def leftmost_occurrences(seq: np.ndarray, length: int, positions: np.ndarray,
                         excluded: Optional[np.ndarray] = None) -> np.ndarray:
    """For each 0-based window start in ``positions``, the leftmost equal window.

    Windows flagged in ``excluded`` never match anything. Fingerprint matches
    are verified symbol by symbol; on a collision the candidates sharing the
    fingerprint are scanned left to right.
    """
    positions = np.asarray(positions, dtype=np.int64)
    if positions.size == 0:
        return positions.copy()
    keys = _window_keys(seq, length)
    if excluded is not None:
        bad = np.flatnonzero(excluded)
        keys[bad] = -1 - bad            # fingerprints are non-negative
    _, first_idx, inverse = np.unique(keys, return_index=True, return_inverse=True)
    inverse = inverse.ravel()
    cand = first_idx[inverse[positions]].astype(np.int64)

    todo = np.flatnonzero(cand < positions)
    step = max(1, _CHUNK // length)
    for lo in range(0, todo.size, step):
        sel = todo[lo:lo + step]
        same = np.all(_gather(seq, cand[sel], length) == _gather(seq, positions[sel], length), axis=1)
        for k in sel[~same]:
            pos = positions[k]
            target = seq[pos:pos + length]
            for q in np.flatnonzero(inverse == inverse[pos]):
                if np.array_equal(seq[q:q + length], target):
                    cand[k] = q
                    break
    return cand


# ---------------------------------------------------------------------------
# index structures

@dataclass
class LevelData:
    """One level: block length, marks, and the source encoding of unmarked blocks."""
    b: int
    D: RankSelectBitvector
    F: SparseBitvector
    pi: InvertiblePermutation
    source_starts: Optional[np.ndarray] = None   # 1-based in S_l, indexed by unmarked rank

    @property
    def n_l(self) -> int:
        return len(self.D) * self.b

    @property
    def w_l(self) -> int:
        return self.D.zeros

    @classmethod
    def from_parts(cls, b: int, marked: np.ndarray, sources: np.ndarray) -> "LevelData":
        """``sources[r-1]`` is the 1-based S_l start of the r-th unmarked block's source."""
        D = RankSelectBitvector(marked)
        sources = np.asarray(sources, dtype=np.int64)
        w = sources.size
        # F_l: one 0 per symbol of S_l, followed by a 1 per source starting there
        order = np.argsort(sources, kind="stable")
        ones = sources[order] + np.arange(1, w + 1)
        F = SparseBitvector(ones, len(D) * b + w)
        perm = np.empty(w, dtype=np.int64)
        perm[order] = np.arange(1, w + 1)
        return cls(b, D, F, InvertiblePermutation(perm), sources)

    def recover_sources(self) -> np.ndarray:
        perm = self.pi.forward_array()
        if perm.size == 0:
            return np.zeros(0, dtype=np.int64)
        return self.F.ones_array()[perm - 1] - perm


@dataclass
class BlockTreeIndex:
    sigma: int
    n_original: int
    n: int
    z: int
    z_top: int
    b0: int
    levels: List[LevelData]
    leaf_symbols: np.ndarray
    grid: Optional["OccurrenceGrid"] = None   # noqa: F821
    alphabet: Optional[bytes] = None          # byte value of each symbol, for byte texts
    _leaves: list = field(default_factory=list, repr=False)
    _fast: Optional[list] = field(default=None, repr=False)

    def __post_init__(self):
        self.leaf_symbols = np.asarray(self.leaf_symbols, dtype=np.int64)
        self._leaves = self.leaf_symbols.tolist()

    @property
    def terminator(self) -> int:
        return self.sigma + 1

    @property
    def padding(self) -> int:
        return self.sigma + 2

    @property
    def height(self) -> int:
        """Index L of the last level, where blocks hold one symbol."""
        return len(self.levels) - 1

    @property
    def num_unmarked(self) -> int:
        return sum(lv.w_l for lv in self.levels)

    @property
    def num_internal(self) -> int:
        """Marked blocks that are split further (every level but the last)."""
        return sum(lv.D.ones for lv in self.levels[:-1])

    @property
    def w(self) -> int:
        """Leaves of the tree: unmarked blocks plus marked last-level blocks."""
        return self.num_unmarked + self.levels[-1].D.ones

    # -- extraction --------------------------------------------------------

    def symbol_at(self, i: int) -> int:
        """Symbol at padded position i, walking the levels one position at a time."""
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} outside [1, {self.n}]")
        for lv in self.levels:
            b, D = lv.b, lv.D
            j = (i - 1) // b + 1
            if D[j] == 0:
                r = D.rank0(j)
                t = lv.pi.apply(r)
                p = lv.F.select1(t)
                s = (j - 1) * b + 1
                i = (p - t) + (i - s)
                j = (i - 1) // b + 1
            if b == 1:
                return self._leaves[D.rank1(j) - 1]
            i = (D.rank1(j) - 1) * b + (i - 1) % b + 1
        raise AssertionError("last level must have unit blocks")

    def _fast_levels(self) -> list:
        """Per-level (b, bits, rank_1 table, pi_l, one positions of F_l) for the hot loops."""
        if self._fast is None:
            self._fast = [(lv.b, lv.D._bitlist, lv.D._rank1, lv.pi._fwd, lv.F._ones)
                          for lv in self.levels]
        return self._fast

    def _symbol(self, i: int) -> int:
        """Unchecked :meth:`symbol_at` on the flattened level tables."""
        for b, bits, rank1, fwd, ones in self._fast_levels():
            j0 = (i - 1) // b
            if not bits[j0]:
                t = fwd[j0 - rank1[j0]]
                i = ones[t - 1] - t + (i - 1 - j0 * b)
                j0 = (i - 1) // b
            if b == 1:
                return self._leaves[rank1[j0]]
            i = rank1[j0] * b + (i - 1) % b + 1
        raise AssertionError("last level must have unit blocks")

    def _read(self, l: int, i: int, length: int, out: list) -> None:
        """Append ``S_l[i .. i+length-1]`` to ``out``, one block-sized chunk at a time."""
        b, bits, rank1, fwd, ones = self._fast_levels()[l]
        while length > 0:
            j0 = (i - 1) // b
            off = (i - 1) - j0 * b
            take = min(length, b - off)
            if not bits[j0]:
                t = fwd[j0 - rank1[j0]]               # pi_l(rank_0(D_l, j))
                self._read(l, ones[t - 1] - t + off, take, out)
            elif b == 1:
                out.append(self._leaves[rank1[j0]])
            else:
                self._read(l + 1, rank1[j0] * b + off + 1, take, out)
            i += take
            length -= take

    def extract_padded(self, i: int, length: int) -> list:
        if length < 0 or i < 1 or i + length - 1 > self.n:
            raise IndexError(f"range [{i}, {i + length - 1}] outside [1, {self.n}]")
        out: list = []
        self._read(0, i, length, out)
        return out

    def extract(self, i: int, length: int) -> list:
        """Symbols ``text[i .. i+length-1]`` of the original text (1-based)."""
        if length < 0 or i < 1 or i + length - 1 > self.n_original:
            raise IndexError(f"range [{i}, {i + length - 1}] outside [1, {self.n_original}]")
        return self.extract_padded(i, length)

    def extract_bytes(self, i: int, length: int) -> bytes:
        if self.alphabet is None:
            raise ValueError("index was not built from bytes")
        table = self.alphabet
        return bytes(table[s - 1] for s in self.extract(i, length))

    # -- level projections -------------------------------------------------

    def project_down(self, l: int, i: int) -> int:
        """Position in S_{l+1} of the symbol at S_l[i]; its block must be marked."""
        lv = self.levels[l]
        if l >= self.height:
            raise ValueError("the last level has no level below it")
        if not 1 <= i <= lv.n_l:
            raise IndexError(f"position {i} outside S_{l}[1..{lv.n_l}]")
        j = (i - 1) // lv.b + 1
        if lv.D[j] == 0:
            raise ValueError(f"block {j} of level {l} is unmarked")
        return (lv.D.rank1(j) - 1) * lv.b + (i - 1) % lv.b + 1

    def project_up(self, l: int, i: int) -> int:
        """Position in S_{l-1} of the symbol at S_l[i]."""
        if not 1 <= l <= self.height:
            raise ValueError(f"level {l} has no level above it")
        lv = self.levels[l]
        if not 1 <= i <= lv.n_l:
            raise IndexError(f"position {i} outside S_{l}[1..{lv.n_l}]")
        up = self.levels[l - 1]
        j = (i - 1) // up.b + 1
        return (up.D.select1(j) - 1) * up.b + (i - 1) % up.b + 1

    def source_position(self, l: int, r: int) -> int:
        """Start in S_l of the source of the r-th unmarked block of level l."""
        lv = self.levels[l]
        t = lv.pi.apply(r)
        return lv.F.select1(t) - t

    def explicit_block_starts(self, l: int) -> np.ndarray:
        """1-based start in the padded text of every explicit block of level l."""
        starts = np.arange(self.z_top, dtype=np.int64) * self.b0 + 1
        for lv in self.levels[:l]:
            marked = starts[lv.D.bits]
            starts = np.stack([marked, marked + lv.b // 2], axis=1).ravel()
        return starts

    def to_text_positions(self, l: int, positions: np.ndarray) -> np.ndarray:
        """Map 1-based S_l positions to padded-text positions."""
        positions = np.asarray(positions, dtype=np.int64)
        b = self.levels[l].b
        starts = self.explicit_block_starts(l)
        return starts[(positions - 1) // b] + (positions - 1) % b

    # -- queries -----------------------------------------------------------

    def search(self, pattern: Sequence[int]) -> List[int]:
        from .search import search
        return search(self, pattern)

    def count(self, pattern: Sequence[int]) -> int:
        return len(self.search(pattern))

    def encode_pattern(self, pattern: bytes) -> Optional[list]:
        """Symbols for a byte pattern, or None if it uses bytes absent from the text."""
        if self.alphabet is None:
            raise ValueError("index was not built from bytes")
        lookup = {byte: k + 1 for k, byte in enumerate(self.alphabet)}
        try:
            return [lookup[c] for c in pattern]
        except KeyError:
            return None

    def stats(self) -> dict:
        """Sizes of the tree, the grid, and the information-theoretic space estimate."""
        w = self.w
        log_n = math.log2(self.n) if self.n > 1 else 1.0
        return {
            "sigma": self.sigma,
            "n_original": self.n_original,
            "n": self.n,
            "z": self.z,
            "z_top": self.z_top,
            "b0": self.b0,
            "levels": len(self.levels),
            "w": w,
            "unmarked_blocks": self.num_unmarked,
            "internal_blocks": self.num_internal,
            "num_points": self.grid.num_points if self.grid is not None else None,
            "estimated_bits": int(math.ceil(3 * w * log_n)),
        }


# ---------------------------------------------------------------------------
# construction

def encode_bytes(data: bytes):
    """Dense symbols 1..sigma for the byte values present, in byte order."""
    if not data:
        raise ValueError("empty input")
    present = np.zeros(256, dtype=bool)
    raw = np.frombuffer(data, dtype=np.uint8)
    present[raw] = True
    alphabet = bytes(np.flatnonzero(present).tolist())
    code = np.cumsum(present).astype(np.int64)
    return code[raw], alphabet


def top_level_shape(length: int, z: int):
    """(b0, z_top, n) for a text of ``length`` symbols parsed into z phrases."""
    n1 = length + 1
    b0 = 1
    while b0 * z < n1:
        b0 *= 2
    z_top = -(-n1 // b0)
    return b0, z_top, z_top * b0


def _check_sources(seq, starts, b, marked, blocks, src):
    """Sources start before their block, copy it, and cover only marked, contiguous blocks."""
    if blocks.size == 0:
        return
    pos = blocks * b
    if np.any(src >= pos):
        raise BuildInvariantError(f"a source at block length {b} does not precede its block")
    if not np.all(_gather(seq, src, b) == _gather(seq, pos, b)):
        raise BuildInvariantError(f"a source at block length {b} differs from its block")
    first, last = src // b, (src + b - 1) // b
    if not (np.all(marked[first]) and np.all(marked[last])):
        raise BuildInvariantError(f"a source at block length {b} overlaps an unmarked block")
    split = first != last
    if np.any(starts[first[split]] + b != starts[last[split]]):
        raise BuildInvariantError(f"a source at block length {b} spans non-adjacent text")


def build(text: Sequence[int], sigma: Optional[int] = None, *, with_grid: bool = True) -> BlockTreeIndex:
    """Build the block tree (and occurrence grid) over ``text``, symbols in [1..sigma]."""
    symbols = np.asarray(text, dtype=np.int64).ravel()
    if symbols.size == 0:
        raise ValueError("cannot index an empty text")
    if sigma is None:
        sigma = int(symbols.max())
    if symbols.min() < 1 or symbols.max() > sigma:
        raise ValueError(f"symbols must lie in [1, {sigma}]")

    z = lz.parse(symbols.tolist()).z
    b0, z_top, n = top_level_shape(symbols.size, z)
    S = np.full(n, sigma + 2, dtype=np.int64)
    S[:symbols.size] = symbols
    S[symbols.size] = sigma + 1

    levels = []
    starts = np.arange(z_top, dtype=np.int64) * b0     # 0-based text offsets of explicit blocks
    b = b0
    while True:
        nb = starts.size
        seq = S[(starts[:, None] + np.arange(b)).ravel()]
        marked = np.zeros(nb, dtype=bool)
        if nb == 1:
            marked[0] = True
        else:
            # only text-adjacent blocks form a pair, and only windows that are
            # real text substrings count as earlier occurrences
            pairs = np.flatnonzero(starts[:-1] + b == starts[1:])
            pair_pos = pairs * b
            own = leftmost_occurrences(seq, 2 * b, pair_pos, seam_windows(starts, b, 2 * b)) == pair_pos
            marked[pairs[own]] = True
            marked[pairs[own] + 1] = True
        blocks = np.flatnonzero(~marked)
        src = leftmost_occurrences(seq, b, blocks * b, seam_windows(starts, b, b))
        _check_sources(seq, starts, b, marked, blocks, src)
        levels.append(LevelData.from_parts(b, marked, src + 1))
        if b == 1:
            leaf_symbols = seq[marked]
            break
        b //= 2
        kept = starts[marked]
        starts = np.stack([kept, kept + b], axis=1).ravel()

    index = BlockTreeIndex(sigma, int(symbols.size), n, z, z_top, b0, levels, leaf_symbols)
    if with_grid:
        from .grid import build_grid
        index.grid = build_grid(index, S)
    return index


def build_from_bytes(data: bytes, **kwargs) -> BlockTreeIndex:
    symbols, alphabet = encode_bytes(data)
    index = build(symbols, len(alphabet), **kwargs)
    index.alphabet = alphabet
    return index
