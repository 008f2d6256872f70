"""
Searching a text through its index
==================================

Build an index over some bytes, then ask where a pattern occurs and read
pieces of the text back without keeping the original around.
"""

from btindex import build_from_bytes, search_bytes

text = b"how much wood would a woodchuck chuck if a woodchuck could chuck wood"
index = build_from_bytes(text)

# positions are 1-based
for pattern in (b"wood", b"chuck", b"o", b"could", b"tree"):
    print(f"{pattern.decode():>6}: {search_bytes(index, pattern)}")

# any substring can be read back from the index alone
print(index.extract_bytes(23, 9))

# the search results agree with a plain scan
import re
assert search_bytes(index, b"wood") == [m.start() + 1 for m in re.finditer(b"(?=wood)", text)]
