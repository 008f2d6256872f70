"""
Looking inside the block tree
=============================

Each level cuts the surviving text into blocks of half the previous length.
A block stays explicit (marked) when it takes part in the leftmost
occurrence of some pair of consecutive blocks; every other block is
replaced by a pointer to the leftmost earlier copy of its content.
"""

from btindex import build_from_bytes

text = b"abracadabra abracadabra abracadabra"
index = build_from_bytes(text)

print(f"n={index.n_original} padded to {index.n}, z={index.z}, b0={index.b0}")

alphabet = index.alphabet
def show(symbols):
    extra = {index.terminator: "$", index.padding: "#"}
    return "".join(extra.get(s) or chr(alphabet[s - 1]) for s in symbols)

for l, level in enumerate(index.levels):
    starts = index.explicit_block_starts(l).tolist()
    blocks = []
    for j, start in enumerate(starts, start=1):
        content = show(index.extract_padded(start, level.b))
        blocks.append(content if level.D[j] else f"({content})")
    print(f"level {l} b={level.b:<2} " + " ".join(blocks))

# parenthesised blocks are unmarked; their sources sit earlier on the same level
level = index.levels[0]
for r, j in enumerate(level.D.zeros_array().tolist(), start=1):
    print(f"top-level block {j} copies the level-0 string starting at {index.source_position(0, r)}")

# the leaves: unmarked blocks plus the symbols kept at the last level
print(f"w={index.w} leaves, {index.grid.num_points} grid points")
