"""``btindex`` command line.

    btindex build <in> -o <out>
    btindex search <idx> <pattern> [--count]
    btindex extract <idx> <from> <len>
    btindex stats <idx>
    btindex verify <idx> <orig> [--patterns N] [--max-m M] [--seed S]

Exit codes: 0 ok, 1 usage, 2 I/O, 3 corrupt index, 4 verification failure.
Patterns may contain ``\\xHH`` escapes; ``\\\\`` is a literal backslash.
"""

from __future__ import annotations

import argparse
import os
import random
import re
import sys
from pathlib import Path

from . import serialize
from .blocktree import build_from_bytes
from .oracle import naive_search_bytes
from .search import search_bytes

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_CORRUPT, EXIT_VERIFY = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_ESCAPE = re.compile(rb"\\x([0-9a-fA-F]{2})|\\\\")


def decode_pattern(text: str) -> bytes:
    raw = os.fsencode(text)
    return _ESCAPE.sub(lambda mo: bytes([int(mo.group(1), 16)]) if mo.group(1) else b"\\", raw)


def _read(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}")


def _load(path):
    data = _read(path)
    try:
        return serialize.loads(data)
    except serialize.CorruptIndexError as exc:
        raise _Exit(EXIT_CORRUPT, f"corrupt index {path}: {exc}")


def _write_stats(out, stats: dict) -> None:
    for key, value in stats.items():
        print(f"{key}: {value}", file=out)


def cmd_build(args, out) -> int:
    data = _read(args.input)
    if not data:
        raise _Exit(EXIT_IO, "empty input")
    index = build_from_bytes(data)
    blob = serialize.dumps(index)
    try:
        Path(args.output).write_bytes(blob)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write {args.output}: {exc.strerror or exc}")
    st = index.stats()
    for key in ("n_original", "n", "z", "z_top", "b0", "levels", "w", "num_points"):
        print(f"{key}: {st[key]}", file=out)
    print(f"bytes_written: {len(blob)}", file=out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    index = _load(args.index)
    positions = search_bytes(index, decode_pattern(args.pattern))
    if args.count:
        print(len(positions), file=out)
    else:
        out.write("".join(f"{p}\n" for p in positions))
    return EXIT_OK


def cmd_extract(args, out) -> int:
    index = _load(args.index)
    start, length = args.start, args.length
    if length < 0 or start < 1 or start + length - 1 > index.n_original:
        raise _Exit(EXIT_USAGE, f"range [{start}, {start + length - 1}] outside [1, {index.n_original}]")
    data = index.extract_bytes(start, length)
    out.flush()
    getattr(out, "buffer", out).write(data)
    return EXIT_OK


def cmd_stats(args, out) -> int:
    index = _load(args.index)
    st = index.stats()
    st["file_bytes"] = os.path.getsize(args.index)
    st["estimated_bytes"] = (st["estimated_bits"] + 7) // 8
    _write_stats(out, st)
    return EXIT_OK


def sample_patterns(text: bytes, count: int, max_m: int, seed: int):
    """Deterministic mix of patterns cut from ``text`` and random ones over its bytes."""
    rng = random.Random(seed)
    alphabet = sorted(set(text))
    patterns = []
    for k in range(count):
        m = rng.randint(1, max(1, min(max_m, len(text))))
        if k % 2 == 0:
            p = rng.randrange(len(text) - m + 1)
            patterns.append(text[p:p + m])
        else:
            patterns.append(bytes(rng.choice(alphabet) for _ in range(m)))
    ranges = []
    for _ in range(count):
        length = rng.randint(0, min(len(text), 4 * max_m))
        ranges.append((rng.randint(1, len(text) - length + 1), length))
    return patterns, ranges


def cmd_verify(args, out) -> int:
    index = _load(args.index)
    text = _read(args.original)
    if not text:
        raise _Exit(EXIT_IO, "empty original")
    failure = None
    if index.n_original != len(text):
        failure = f"length: index has {index.n_original} symbols, original has {len(text)}"
    patterns, ranges = sample_patterns(text, args.patterns, args.max_m, args.seed)
    occ = 0
    if failure is None:
        for pat in patterns:
            expected = naive_search_bytes(text, pat)
            got = search_bytes(index, pat)
            occ += len(expected)
            if got != expected:
                failure = f"search {pat!r}: index found {len(got)}, oracle found {len(expected)}"
                break
    if failure is None:
        for start, length in ranges:
            if index.extract_bytes(start, length) != text[start - 1:start - 1 + length]:
                failure = f"extract {start} {length}"
                break
    print(f"patterns: {len(patterns)}", file=out)
    print(f"occurrences: {occ}", file=out)
    print(f"extracts: {len(ranges)}", file=out)
    print(f"seed: {args.seed}", file=out)
    if failure is not None:
        print(f"MISMATCH {failure}", file=out)
        return EXIT_VERIFY
    print("OK", file=out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="btindex", description="Block-tree compressed self-index.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="index a file")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", help="print the 1-based positions of a pattern")
    p.add_argument("index")
    p.add_argument("pattern")
    p.add_argument("--count", action="store_true", help="print only the number of occurrences")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("extract", help="write text[from .. from+len-1] to stdout")
    p.add_argument("index")
    p.add_argument("start", type=int, metavar="from")
    p.add_argument("length", type=int, metavar="len")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("stats", help="print index statistics")
    p.add_argument("index")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check the index against the original file")
    p.add_argument("index")
    p.add_argument("original")
    p.add_argument("--patterns", type=int, default=200)
    p.add_argument("--max-m", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except _Exit as exc:
        print(f"btindex: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
