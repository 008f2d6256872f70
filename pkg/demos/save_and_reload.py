"""
Saving and reloading an index
=============================

Indexes are written to a single checksummed file. Loading it gives back an
index that answers every query exactly as before.
"""

import tempfile
from pathlib import Path

from btindex import build_from_bytes, search_bytes
from btindex.serialize import CorruptIndexError, load, save

text = b"to be or not to be, that is the question; " * 50
index = build_from_bytes(text)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "hamlet.btx"
    size = save(index, path)
    print(f"{len(text)} bytes of text -> {size} bytes of index")
    print(index.stats())

    again = load(path)
    for pattern in (b"to be", b"question", b"not"):
        assert search_bytes(again, pattern) == search_bytes(index, pattern)
        print(pattern, len(search_bytes(again, pattern)))

    # a single flipped bit is caught by the checksum
    blob = bytearray(path.read_bytes())
    blob[100] ^= 1
    path.write_bytes(bytes(blob))
    try:
        load(path)
    except CorruptIndexError as exc:
        print("refused to load:", exc)
