"""Binary index file.

Layout, all integers little-endian::

    "BTIX" | version u32 | header 9 x u64 | sections ... | section table |
    table offset u64 | CRC-32 u32 of everything before it

The header holds sigma, n_original, n, z, z_top, b0, level count, w and
the number of grid points. The section table is a u32 count followed by
(id u32, offset u64, length u64) entries. Bitvectors are a u64 length plus
the bits packed LSB-first; sparse bitvectors store their universe, their
count of ones and the gaps between consecutive ones as LEB128 varints.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path
from typing import List

import numpy as np

from .blocktree import BlockTreeIndex, LevelData
from .grid import OccurrenceGrid
from .succinct import InvertiblePermutation, RankSelectBitvector, SparseBitvector
from .wavelet import WaveletTree

MAGIC = b"BTIX"
VERSION = 1

SEC_ALPHABET = 1
SEC_LEVELS = 2
SEC_LEAVES = 3
SEC_GRID = 4
SEC_T = 5

_HEADER = struct.Struct("<9Q")
_ENTRY = struct.Struct("<IQQ")


class CorruptIndexError(ValueError):
    """The file is not a valid index (bad magic, version, checksum or layout)."""


# -- primitive encoders ------------------------------------------------------

def _u64(v: int) -> bytes:
    return struct.pack("<Q", v)


def _varints(values) -> bytes:
    out = bytearray()
    for v in values:
        while v >= 0x80:
            out.append((v & 0x7F) | 0x80)
            v >>= 7
        out.append(v)
    return bytes(out)


def _width(max_value: int) -> int:
    for w in (1, 2, 4):
        if max_value < 1 << (8 * w):
            return w
    return 8


_DTYPES = {1: "<u1", 2: "<u2", 4: "<u4", 8: "<u8"}


def _ints(values: np.ndarray) -> bytes:
    values = np.asarray(values, dtype=np.int64)
    w = _width(int(values.max()) if values.size else 0)
    return _u64(values.size) + bytes([w]) + values.astype(_DTYPES[w]).tobytes()


def _bitvector(bits: np.ndarray) -> bytes:
    bits = np.asarray(bits, dtype=bool)
    return _u64(bits.size) + np.packbits(bits, bitorder="little").tobytes()


def _sparse(F: SparseBitvector) -> bytes:
    ones = F.ones_array()
    gaps = np.diff(ones, prepend=0).tolist()
    return _u64(F.length) + _u64(len(gaps)) + _varints(gaps)


class _Reader:

    def __init__(self, data: bytes, pos: int = 0, end: int = None):
        self.data = data
        self.pos = pos
        self.end = len(data) if end is None else end

    def take(self, k: int) -> bytes:
        if self.pos + k > self.end:
            raise CorruptIndexError("truncated section")
        out = self.data[self.pos:self.pos + k]
        self.pos += k
        return out

    def u64(self) -> int:
        return struct.unpack("<Q", self.take(8))[0]

    def varints(self, count: int) -> List[int]:
        out = []
        data, pos, end = self.data, self.pos, self.end
        for _ in range(count):
            v = shift = 0
            while True:
                if pos >= end:
                    raise CorruptIndexError("truncated varint")
                byte = data[pos]
                pos += 1
                v |= (byte & 0x7F) << shift
                if byte < 0x80:
                    break
                shift += 7
            out.append(v)
        self.pos = pos
        return out

    def ints(self) -> np.ndarray:
        count = self.u64()
        w = self.take(1)[0]
        if w not in _DTYPES:
            raise CorruptIndexError(f"bad integer width {w}")
        return np.frombuffer(self.take(count * w), dtype=_DTYPES[w]).astype(np.int64)

    def bitvector(self) -> RankSelectBitvector:
        length = self.u64()
        raw = np.frombuffer(self.take((length + 7) // 8), dtype=np.uint8)
        return RankSelectBitvector(np.unpackbits(raw, bitorder="little", count=length).astype(bool))

    def sparse(self) -> SparseBitvector:
        length = self.u64()
        count = self.u64()
        ones = np.cumsum(np.asarray(self.varints(count), dtype=np.int64))
        try:
            return SparseBitvector(ones, length)
        except ValueError as exc:
            raise CorruptIndexError(str(exc)) from exc


# -- index ---------------------------------------------------------------------

def dumps(index: BlockTreeIndex) -> bytes:
    grid = index.grid
    if grid is None:
        raise ValueError("index has no occurrence grid")
    sections = []
    alphabet = index.alphabet or b""
    sections.append((SEC_ALPHABET, _u64(len(alphabet)) + alphabet))

    parts = []
    for lv in index.levels:
        parts += [_u64(lv.b), _bitvector(lv.D.bits), _sparse(lv.F), _ints(lv.pi.forward_array())]
    sections.append((SEC_LEVELS, b"".join(parts)))
    sections.append((SEC_LEAVES, _ints(index.leaf_symbols)))

    wt = grid.col_to_row
    parts = [_u64(wt.size), _u64(wt.sigma), _u64(wt.depth)]
    parts += [_bitvector(bv.bits) for bv in wt.levels]
    sections.append((SEC_GRID, b"".join(parts)))
    sections.append((SEC_T, _u64(grid.num_points) + np.asarray(grid.T, dtype="<i8").tobytes()))

    out = bytearray(MAGIC + struct.pack("<I", VERSION))
    out += _HEADER.pack(index.sigma, index.n_original, index.n, index.z, index.z_top,
                        index.b0, len(index.levels), index.w, grid.num_points)
    table = []
    for sid, payload in sections:
        table.append((sid, len(out), len(payload)))
        out += payload
    table_offset = len(out)
    out += struct.pack("<I", len(table))
    for entry in table:
        out += _ENTRY.pack(*entry)
    out += _u64(table_offset)
    out += struct.pack("<I", zlib.crc32(out))
    return bytes(out)


def loads(data: bytes) -> BlockTreeIndex:
    data = bytes(data)
    if len(data) < 4 + 4 + _HEADER.size + 4 + 8 + 4:
        raise CorruptIndexError("file too short")
    if data[:4] != MAGIC:
        raise CorruptIndexError("bad magic")
    (crc,) = struct.unpack("<I", data[-4:])
    if zlib.crc32(data[:-4]) != crc:
        raise CorruptIndexError("checksum mismatch")
    (version,) = struct.unpack("<I", data[4:8])
    if version != VERSION:
        raise CorruptIndexError(f"unsupported version {version}")
    sigma, n_original, n, z, z_top, b0, nlevels, w, num_points = _HEADER.unpack_from(data, 8)

    (table_offset,) = struct.unpack("<Q", data[-12:-4])
    rd = _Reader(data, table_offset, len(data) - 12)
    (count,) = struct.unpack("<I", rd.take(4))
    sections = {}
    for _ in range(count):
        sid, off, length = _ENTRY.unpack(rd.take(_ENTRY.size))
        if off + length > table_offset:
            raise CorruptIndexError("section outside the file")
        sections[sid] = (off, length)
    missing = {SEC_ALPHABET, SEC_LEVELS, SEC_LEAVES, SEC_GRID, SEC_T} - sections.keys()
    if missing:
        raise CorruptIndexError(f"missing sections {sorted(missing)}")

    def reader(sid):
        off, length = sections[sid]
        return _Reader(data, off, off + length)

    rd = reader(SEC_ALPHABET)
    alphabet = rd.take(rd.u64()) or None

    rd = reader(SEC_LEVELS)
    levels = []
    for _ in range(nlevels):
        b = rd.u64()
        D, F = rd.bitvector(), rd.sparse()
        try:
            pi = InvertiblePermutation(rd.ints())
        except ValueError as exc:
            raise CorruptIndexError(str(exc)) from exc
        lv = LevelData(b, D, F, pi)
        lv.source_starts = lv.recover_sources()
        levels.append(lv)

    leaves = reader(SEC_LEAVES).ints()

    rd = reader(SEC_GRID)
    size, wt_sigma, depth = rd.u64(), rd.u64(), rd.u64()
    wt = WaveletTree(sigma=wt_sigma, levels=[rd.bitvector() for _ in range(depth)])
    if wt.size != size:
        raise CorruptIndexError("wavelet tree size mismatch")

    rd = reader(SEC_T)
    npts = rd.u64()
    T = np.frombuffer(rd.take(8 * npts), dtype="<i8").tolist()
    if npts != num_points or size != num_points:
        raise CorruptIndexError("grid size mismatch")

    index = BlockTreeIndex(sigma, n_original, n, z, z_top, b0, levels, leaves, alphabet=alphabet)
    index.grid = OccurrenceGrid(wt, T, b0, n, index)
    if index.w != w:
        raise CorruptIndexError("header and levels disagree on w")
    return index


def save(index: BlockTreeIndex, path) -> int:
    data = dumps(index)
    Path(path).write_bytes(data)
    return len(data)


def load(path) -> BlockTreeIndex:
    return loads(Path(path).read_bytes())
