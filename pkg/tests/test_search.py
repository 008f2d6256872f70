import importlib
import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from btindex.blocktree import build, build_from_bytes
from btindex.oracle import naive_search, oracle_block_tree
from btindex.search import find_range, occurrences, report_secondary, search, search_bytes
from conftest import small_texts

search_mod = importlib.import_module("btindex.search")


def test_banana():
    idx = build_from_bytes(b"banana")
    assert search_bytes(idx, b"a") == [2, 4, 6]
    assert search_bytes(idx, b"ana") == [2, 4]
    assert search_bytes(idx, b"banana") == [1]
    assert search_bytes(idx, b"nab") == []
    assert search_bytes(idx, b"x") == []


def test_whole_text_and_absent():
    text = [1, 2, 3, 1, 2, 1, 3, 3, 2, 1]
    idx = build(text)
    assert search(idx, text) == [1]
    assert search(idx, [3, 3, 3]) == []
    assert search(idx, text + [1]) == []


def test_invalid_patterns():
    idx = build([1, 2, 1])
    with pytest.raises(ValueError):
        search(idx, [])
    with pytest.raises(ValueError):
        search(idx, [3])
    with pytest.raises(ValueError):
        search(idx, [0])


def all_patterns(text, max_m=8):
    return {tuple(text[i:i + m]) for m in range(1, max_m + 1) for i in range(len(text) - m + 1)}


@pytest.mark.parametrize("text", small_texts(30, seed=31, max_len=90))
def test_every_substring_found_exactly_once(text):
    idx = build(text)
    for p in all_patterns(text):
        got = occurrences(idx, p)
        limit = len(text) - len(p) + 1
        assert Counter(x for x in got if x <= limit) == Counter(naive_search(text, p))
        assert len(set(got)) == len(got)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=120), st.lists(st.integers(1, 3), min_size=1, max_size=6))
def test_search_matches_oracle(text, pattern):
    idx = build(text, sigma=3)
    assert search(idx, pattern) == naive_search(text, pattern)


@pytest.mark.parametrize("text", small_texts(10, seed=32))
def test_single_symbol_patterns(text):
    idx = build(text)
    for c in range(1, idx.sigma + 1):
        assert search(idx, [c]) == [i + 1 for i, s in enumerate(text) if s == c]


def test_wildcard_range_is_everything():
    idx = build([1, 2, 2, 1, 2, 1, 1])
    assert find_range(idx.grid, None, "X") == (1, idx.grid.num_points)
    with pytest.raises(ValueError):
        find_range(idx.grid, None, "Y")
    lo, hi = find_range(idx.grid, [idx.sigma + 3], "X")
    assert lo > hi


@pytest.mark.parametrize("text", small_texts(12, seed=33))
def test_find_range_matches_scan(text):
    idx = build(text)
    g = idx.grid
    padded = oracle_block_tree(text, idx.sigma).text
    xs, ys = [], []
    for x in range(1, g.num_points + 1):
        t, ml = g.x_string_bounds(g.row_of(x))
        xs.append(padded[t - 1:t - 1 + ml])
    for y in range(1, g.num_points + 1):
        t, _ = g.x_string_bounds(y)
        ys.append(padded[t - 1 - g.y_string_length(y):t - 1][::-1])
    rng = random.Random(len(text))
    for _ in range(200):
        p = list(rng.choice(sorted(all_patterns(text, 6)))) if rng.random() < 0.7 else \
            [rng.randint(1, idx.sigma) for _ in range(rng.randint(1, 5))]
        for k in range(1, len(p) + 1):
            for q, strings, axis in ((p[k - 1::-1], ys, "Y"), (p[k:], xs, "X")):
                if not q:
                    continue
                hits = [r for r, s in enumerate(strings, 1) if s[:len(q)] == q]
                lo, hi = find_range(g, q, axis)
                if hits:
                    assert (lo, hi) == (hits[0], hits[-1])
                    assert hits == list(range(hits[0], hits[-1] + 1))
                else:
                    assert lo > hi


def _capture_secondary(monkeypatch):
    calls = []
    real = search_mod.report_secondary

    def spy(index, l, i, m, sink):
        calls.append((l, i, m))
        real(index, l, i, m, sink)

    monkeypatch.setattr(search_mod, "report_secondary", spy)
    return calls


def test_long_pattern_does_not_descend(monkeypatch):
    text = [1, 2, 3, 4] * 20 + [2, 1]
    idx = build(text)
    m = idx.b0 // 2 + 1
    calls = _capture_secondary(monkeypatch)
    search_mod.report_primary(idx, 1, m, lambda p: None)
    assert calls == [(0, 1, m)]


def test_primary_descends_through_marked_blocks(monkeypatch):
    idx = build([1] * 64)
    assert idx.b0 == 16
    calls = _capture_secondary(monkeypatch)
    found = []
    search_mod.report_primary(idx, 1, 2, found.append)
    # the leftmost pair is marked at every level, so descent stops only when b/2 < m
    assert calls == [(3, 1, 2)]
    assert 1 in found
    assert len(set(found)) == len(found)


def test_secondary_without_unmarked_blocks_only_projects_up():
    idx = build(list(range(1, 17)))
    last = len(idx.levels) - 1
    found = []
    report_secondary(idx, last, 3, 1, found.append)
    expected = 3
    for l in range(last, 0, -1):
        expected = idx.project_up(l, expected)
    assert found == [expected]


def test_secondary_window_longer_than_block():
    idx = build([1, 2] * 40)
    assert idx.levels[0].w_l > 0
    found = []
    report_secondary(idx, 0, 1, idx.b0 + 1, found.append)
    assert found == [1]


@pytest.mark.parametrize("text", small_texts(8, seed=34, max_len=200))
def test_byte_and_symbol_search_agree(text):
    data = bytes(96 + c for c in text)
    idx = build_from_bytes(data)
    rng = random.Random(len(text))
    for _ in range(30):
        i = rng.randint(0, len(data) - 1)
        pat = data[i:i + rng.randint(1, 8)]
        assert search_bytes(idx, pat) == naive_search(list(data), list(pat))


def _copies_with_seams():
    # mutated copies of a 256-symbol unit; with plain S_l matching, some
    # unmarked blocks would copy a window that runs across two blocks which
    # are not neighbours in the text
    rng = random.Random(76)
    for unit_len in (64, 128, 256):
        unit = [rng.randint(1, 4) for _ in range(unit_len)]
        text = unit * 16
        for k in range(len(text)):
            if rng.random() < 0.01:
                text[k] = rng.randint(1, 4)
    return text


def test_sources_never_straddle_a_seam():
    import numpy as np
    from btindex.blocktree import leftmost_occurrences, seam_windows

    text = _copies_with_seams()
    idx = build(text)
    padded = np.array(idx.extract_padded(1, idx.n))
    straddling = 0
    for l, lv in enumerate(idx.levels):
        starts = idx.explicit_block_starts(l) - 1
        seq = padded[(starts[:, None] + np.arange(lv.b)).ravel()]
        blocks = lv.D.zeros_array() - 1
        plain = leftmost_occurrences(seq, lv.b, blocks * lv.b)
        seams = seam_windows(starts, lv.b, lv.b)
        straddling += int(seams[plain].sum())
        assert not seams[lv.source_starts - 1].any()
    assert straddling > 0          # the fixture really exercises the seam rule
    rng = random.Random(1)
    for _ in range(300):
        i = rng.randrange(len(text))
        p = text[i:i + rng.choice([2, 4, 8, 16, 32])]
        assert search(idx, p) == naive_search(text, p)
