"""Brute-force reference implementations.

These are direct transcriptions of the definitions, quadratic or worse,
and share no code with the index. They back the test suite and the
``btindex verify`` command.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .lz import Phrase, PhraseList


def naive_search(text: Sequence, pattern: Sequence) -> List[int]:
    """All 1-based p with text[p..p+m-1] == pattern, by direct scan."""
    text, pattern = list(text), list(pattern)
    m = len(pattern)
    if m == 0 or m > len(text):
        return []
    return [p + 1 for p in range(len(text) - m + 1) if text[p:p + m] == pattern]


def naive_search_bytes(text: bytes, pattern: bytes) -> List[int]:
    """Same as :func:`naive_search` for byte strings, using ``bytes.find``."""
    out = []
    if not pattern:
        return out
    k = text.find(pattern)
    while k >= 0:
        out.append(k + 1)
        k = text.find(pattern, k + 1)
    return out


def naive_first_occurrence(seq: Sequence, window_start: int, window_len: int) -> Optional[int]:
    """Leftmost 1-based p < window_start whose window equals the one at window_start."""
    seq = list(seq)
    target = seq[window_start - 1:window_start - 1 + window_len]
    for p in range(1, window_start):
        if seq[p - 1:p - 1 + window_len] == target:
            return p
    return None


def naive_lz_parse(text: Sequence) -> PhraseList:
    """Quadratic longest-previous-non-overlapping-factor parse."""
    text = list(text)
    n = len(text)
    phrases = []
    i = 0
    while i < n:
        best_len, best_src = 0, None
        for j in range(i):
            length = 0
            while i + length < n and j + length < i and text[j + length] == text[i + length]:
                length += 1
            if length > best_len:
                best_len, best_src = length, j
        if best_len == 0:
            phrases.append(Phrase(i + 1, 1, None))
            i += 1
        else:
            phrases.append(Phrase(i + 1, best_len, best_src + 1))
            i += best_len
    return PhraseList(phrases)


@dataclass
class OracleLevel:
    """One level of the definitional block tree, with everything materialized."""
    block_len: int
    block_starts: List[int]         # 1-based start in the padded text of each explicit block
    seq: list                        # S_l
    marked: List[bool]
    sources: dict = field(default_factory=dict)   # block index (1-based) -> source start in S_l


@dataclass
class OracleBlockTree:
    text: list                       # padded text
    z: int
    b0: int
    z_top: int
    levels: List[OracleLevel]


def _first_in_text(text: list, start: int, length: int) -> int:
    target = text[start - 1:start - 1 + length]
    for p in range(1, start + 1):
        if text[p - 1:p - 1 + length] == target:
            return p
    raise AssertionError("window not found in its own text")


def _to_level(starts: List[int], b: int, p: int, length: int) -> int:
    """S_l position of the text window [p..p+length-1], which must lie in explicit blocks."""
    first = last = None
    for j, s in enumerate(starts):
        if s <= p < s + b:
            first = j
        if s <= p + length - 1 < s + b:
            last = j
    assert first is not None and last is not None, "occurrence leaves the explicit blocks"
    assert starts[last] - starts[first] == (last - first) * b, "occurrence spans non-adjacent blocks"
    return first * b + (p - starts[first]) + 1


def oracle_block_tree(text: Sequence[int], sigma: Optional[int] = None) -> OracleBlockTree:
    """Build the block tree straight from its definition.

    A pair of text-adjacent blocks is marked when the text holds no earlier
    copy of it; an unmarked block points at the first copy of its content in
    the text, expressed as a position of S_l. Terminator ``sigma+1`` and
    padding ``sigma+2`` follow the index's conventions; everything else is
    recomputed here by brute force.
    """
    text = list(text)
    sigma = sigma if sigma is not None else max(text)
    z = naive_lz_parse(text).z
    padded = text + [sigma + 1]
    b0 = 1
    while b0 * z < len(padded):
        b0 *= 2
    z_top = -(-len(padded) // b0)
    padded += [sigma + 2] * (z_top * b0 - len(padded))

    levels = []
    starts = [1 + k * b0 for k in range(z_top)]
    b = b0
    while True:
        seq = [padded[s - 1 + d] for s in starts for d in range(b)]
        nb = len(starts)
        marked = [nb == 1] * nb
        for j in range(1, nb):
            s = starts[j - 1]
            if starts[j] == s + b and _first_in_text(padded, s, 2 * b) == s:
                marked[j - 1] = marked[j] = True
        level = OracleLevel(b, list(starts), seq, marked)
        for j in range(1, nb + 1):
            if not marked[j - 1]:
                first = _first_in_text(padded, starts[j - 1], b)
                level.sources[j] = _to_level(starts, b, first, b)
        levels.append(level)
        if b == 1:
            break
        half = b // 2
        starts = [x for s, mk in zip(starts, marked) if mk for x in (s, s + half)]
        b = half
    return OracleBlockTree(padded, z, b0, z_top, levels)
