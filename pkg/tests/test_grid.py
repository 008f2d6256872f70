import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from btindex.blocktree import build
from btindex.grid import OccurrenceGrid, Ordering, build_grid, grid_points
from btindex.oracle import oracle_block_tree
from btindex.wavelet import WaveletTree
from conftest import small_texts


def materialized(idx):
    """X and Y strings of every point, by x-rank and y-rank, read from the padded text."""
    padded = oracle_block_tree(idx.extract(1, idx.n_original), idx.sigma).text
    g = idx.grid
    xs, ys = [], []
    for y in range(1, g.num_points + 1):
        t, max_len = g.x_string_bounds(y)
        ylen = g.y_string_length(y)
        ys.append(padded[t - 1 - ylen:t - 1][::-1])
    for x in range(1, g.num_points + 1):
        t, max_len = g.x_string_bounds(g.row_of(x))
        xs.append(padded[t - 1:t - 1 + max_len])
    return padded, xs, ys


def reference_compare(s, q):
    if s[:len(q)] == q:
        return Ordering.PREFIX_RANGE
    return Ordering.LT if s < q else Ordering.GT


TEXTS = small_texts(25, seed=21) + [[1] * 50, [1, 2] * 30, list(range(1, 27))]


@pytest.mark.parametrize("text", TEXTS)
def test_point_count(text):
    idx = build(text)
    g = idx.grid
    assert g.num_points == idx.num_internal + idx.z_top - 1 == idx.w - 1
    assert sorted(g.col_to_row.access(x) for x in range(1, g.num_points + 1)) == \
        list(range(1, g.num_points + 1))


def test_single_top_block_has_only_split_points():
    idx = build([1])
    assert idx.z_top == 1
    Ts, _, _ = grid_points(idx)
    assert Ts.tolist() == [2]
    assert idx.grid.num_points == idx.num_internal


def test_x_string_bounds_examples():
    g = OccurrenceGrid(WaveletTree([1, 2], 2), [7, 9], b0=8, n=32)
    assert g.x_string_bounds(1) == (7, 2)
    assert g.x_string_bounds(2) == (9, 32 - 9 + 1)
    assert g.y_string_length(2) == 8
    with pytest.raises(IndexError):
        g.x_string_bounds(3)


@pytest.mark.parametrize("text", TEXTS)
def test_bounds_match_construction(text):
    idx = build(text)
    Ts, xl, yl = grid_points(idx)
    by_t = {t: (x, y) for t, x, y in zip(Ts.tolist(), xl.tolist(), yl.tolist())}
    g = idx.grid
    for y in range(1, g.num_points + 1):
        t, max_len = g.x_string_bounds(y)
        assert by_t[t] == (max_len, g.y_string_length(y))


@pytest.mark.parametrize("text", TEXTS)
def test_strings_are_sorted(text):
    idx = build(text)
    padded, xs, ys = materialized(idx)
    assert xs == sorted(xs)
    assert ys == sorted(ys)
    g = idx.grid
    for x in range(1, g.num_points + 1):
        assert g.x_string(x) == xs[x - 1]
    for y in range(1, g.num_points + 1):
        assert g.y_string(y) == ys[y - 1]


@pytest.mark.parametrize("text", TEXTS[:12])
def test_grid_without_text_is_identical(text):
    idx = build(text)
    g2 = build_grid(idx)
    assert list(g2.T) == list(idx.grid.T)
    assert [g2.row_of(x) for x in range(1, g2.num_points + 1)] == \
        [idx.grid.row_of(x) for x in range(1, g2.num_points + 1)]


@pytest.mark.parametrize("text", TEXTS[:15])
def test_compare_matches_materialized(text):
    idx = build(text)
    g = idx.grid
    _, xs, ys = materialized(idx)
    rng = random.Random(len(text))
    symbols = list(range(1, idx.sigma + 3))
    queries = [[]]
    for _ in range(40):
        queries.append([rng.choice(symbols) for _ in range(rng.randint(1, 10))])
    for s in xs[:10]:
        queries.append(s[:rng.randint(1, len(s))])
    for q in queries:
        for x in range(1, g.num_points + 1):
            assert g.compare_x(x, q) == reference_compare(xs[x - 1], q)
        for y in range(1, g.num_points + 1):
            assert g.compare_y(y, q) == reference_compare(ys[y - 1], q)


def test_empty_query_is_prefix_of_everything():
    g = build([1, 2, 1, 1, 2, 2, 1]).grid
    assert all(g.compare_x(x, []) is Ordering.PREFIX_RANGE for x in range(1, g.num_points + 1))


def test_query_above_all_strings():
    idx = build([1, 2, 1, 1, 2, 2, 1])
    g = idx.grid
    top = [idx.sigma + 3]
    assert all(g.compare_x(x, top) is Ordering.LT for x in range(1, g.num_points + 1))


def test_left_context_prefix():
    text = [1, 2, 1, 2, 2, 1, 1, 2]       # "abab baab"
    idx = build(text)
    g = idx.grid
    hits = [y for y in range(1, g.num_points + 1) if g.y_string(y, 2) == [2, 1]]
    assert hits
    for y in hits:
        assert g.compare_y(y, [2]) is Ordering.PREFIX_RANGE
        assert g.compare_y(y, [2, 1]) is Ordering.PREFIX_RANGE


# -- wavelet tree --------------------------------------------------------------

def brute_report(values, x1, x2, y1, y2):
    return sorted((x, values[x - 1]) for x in range(x1, x2 + 1) if y1 <= values[x - 1] <= y2)


def test_range_report_random_rectangles():
    rng = random.Random(17)
    values = list(range(1, 301))
    rng.shuffle(values)
    wt = WaveletTree(values, 300)
    assert [wt.access(x) for x in range(1, 301)] == values
    assert wt.range_report(5, 4, 1, 300) == []
    assert sorted(wt.range_report(1, 300, 1, 300)) == [(x, values[x - 1]) for x in range(1, 301)]
    for _ in range(1000):
        x1, x2 = sorted(rng.randint(1, 300) for _ in range(2))
        y1, y2 = sorted(rng.randint(1, 300) for _ in range(2))
        assert sorted(wt.range_report(x1, x2, y1, y2)) == brute_report(values, x1, x2, y1, y2)


@settings(max_examples=100)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=80), st.data())
def test_range_report_with_repeated_values(values, data):
    wt = WaveletTree(values, 40)
    n = len(values)
    x1 = data.draw(st.integers(1, n))
    x2 = data.draw(st.integers(x1, n))
    y1 = data.draw(st.integers(1, 40))
    y2 = data.draw(st.integers(y1, 40))
    assert sorted(wt.range_report(x1, x2, y1, y2)) == brute_report(values, x1, x2, y1, y2)
    ys = sorted(y for _, y in brute_report(values, x1, x2, y1, y2))
    assert sorted(y for _, y in wt.range_report(x1, x2, y1, y2, with_x=False)) == ys
