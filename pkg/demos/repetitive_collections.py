"""
How the tree grows with repetition
==================================

The number of leaves w tracks the number of phrases z of the text, not its
length. A collection of near-identical copies has few phrases, so its tree
stays small even though the text is long.
"""

import math
import random

from btindex import build_from_bytes

rng = random.Random(1)
letters = b"acgt"
seed = bytes(rng.choice(letters) for _ in range(512))


def copies(count, rate):
    out = bytearray(seed * count)
    for k in range(len(out)):
        if rng.random() < rate:
            out[k] = rng.choice(letters)
    return bytes(out)


print(f"{'copies':>6} {'rate':>6} {'n':>7} {'z':>6} {'w':>7} {'w / (z log(n/z))':>17}")
for count in (8, 32, 128):
    for rate in (0.0, 0.01, 0.05):
        data = copies(count, rate)
        index = build_from_bytes(data)
        n, z, w = index.n, index.z, index.w
        print(f"{count:>6} {rate:>6} {len(data):>7} {z:>6} {w:>7} {w / (z * (1 + math.log2(n / z))):>17.2f}")

# a random text of the same length for contrast: nearly every block is a leaf
data = bytes(rng.choice(letters) for _ in range(128 * 512))
index = build_from_bytes(data)
print(f"random text: n={len(data)} z={index.z} w={index.w}")
