"""Greedy non-overlapping LZ77 factorization (LZSS flavour).

Each phrase is the longest prefix of the remaining text that occurs
entirely inside the already-parsed prefix, copied from its leftmost such
occurrence; when not even one symbol repeats, the phrase is a length-1
literal. The phrase count ``z`` fixes the block tree's top-level block size.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import List, Optional, Sequence


@dataclass(frozen=True)
class Phrase:
    start: int              # 1-based
    length: int
    source: Optional[int]   # 1-based source start, None for a literal

    @property
    def is_literal(self) -> bool:
        return self.source is None


@dataclass
class PhraseList:
    phrases: List[Phrase]

    @property
    def z(self) -> int:
        return len(self.phrases)

    def __len__(self):
        return len(self.phrases)

    def __iter__(self):
        return iter(self.phrases)

    def decode(self, literals: Sequence[int]) -> list:
        """Rebuild the text from the phrases.

        ``literals`` holds the symbol of each literal phrase, in order.
        """
        out: list = []
        lit = iter(literals)
        for ph in self.phrases:
            if ph.is_literal:
                out.append(next(lit))
            else:
                out.extend(out[ph.source - 1:ph.source - 1 + ph.length])
        return out


def _encode(symbols: Sequence[int]):
    """Map the symbols to a bytes-like haystack plus its item width."""
    distinct = sorted(set(symbols))
    if len(distinct) <= 256:
        code = {s: k for k, s in enumerate(distinct)}
        return bytes(code[s] for s in symbols), 1
    code = {s: k for k, s in enumerate(distinct)}
    return array("I", (code[s] for s in symbols)).tobytes(), array("I").itemsize


def _find(hay: bytes, needle: bytes, end: int, width: int) -> int:
    """Leftmost aligned occurrence of ``needle`` inside ``hay[:end]``, or -1."""
    start = 0
    while True:
        k = hay.find(needle, start, end)
        if k < 0 or k % width == 0:
            return k
        start = k + 1


def _extend(hay: bytes, src: int, pos: int, length: int, limit: int) -> int:
    """Grow a match of ``length`` bytes at src/pos while it stays below ``limit``."""
    step = 64
    while length < limit:
        take = min(step, limit - length)
        a = hay[src + length:src + length + take]
        b = hay[pos + length:pos + length + take]
        if a == b:
            length += take
            step *= 2
            continue
        k = 0
        while a[k] == b[k]:
            k += 1
        return length + k
    return length


def parse(text: Sequence[int]) -> PhraseList:
    """Factorize ``text`` greedily into non-overlapping phrases.

    Ties among equally long sources resolve to the leftmost one.
    """
    n = len(text)
    if n == 0:
        raise ValueError("cannot parse an empty text")
    hay, width = _encode(text)
    phrases = []
    i = 0                                   # byte offset of the current phrase
    total = n * width
    while i < total:
        best_len, best_src = 0, -1
        probe = width
        while i + probe <= total and probe <= i:
            src = _find(hay, hay[i:i + probe], i, width)
            if src < 0:
                break
            # the source must end at or before i
            length = _extend(hay, src, i, probe, min(total - i, i - src))
            length -= length % width
            best_len, best_src = length, src
            probe = length + width
        if best_len == 0:
            phrases.append(Phrase(i // width + 1, 1, None))
            i += width
        else:
            phrases.append(Phrase(i // width + 1, best_len // width, best_src // width + 1))
            i += best_len
    return PhraseList(phrases)
