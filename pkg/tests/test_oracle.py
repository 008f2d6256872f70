import pytest

from btindex.oracle import (
    naive_first_occurrence, naive_lz_parse, naive_search, naive_search_bytes, oracle_block_tree,
)


def test_naive_search():
    assert naive_search("banana", "ana") == [2, 4]
    assert naive_search([1, 1, 1], [1, 1]) == [1, 2]
    assert naive_search([1, 2], [1, 2, 3]) == []


def test_naive_search_bytes_overlapping():
    assert naive_search_bytes(b"aaaa", b"aa") == [1, 2, 3]
    assert naive_search_bytes(b"abc", b"d") == []


def test_first_occurrence():
    seq = [1, 2, 1, 2, 3]
    assert naive_first_occurrence(seq, 3, 2) == 1
    assert naive_first_occurrence(seq, 4, 2) is None     # only earlier positions count
    assert naive_first_occurrence(seq, 1, 2) is None


def test_naive_lz_parse_covers_text():
    pl = naive_lz_parse([1, 2, 1, 2, 1, 2, 3])
    assert sum(p.length for p in pl) == 7
    assert [(p.start, p.length, p.source) for p in pl] == \
        [(1, 1, None), (2, 1, None), (3, 2, 1), (5, 2, 1), (7, 1, None)]


def test_oracle_tree_padding():
    ref = oracle_block_tree([1, 2, 1], sigma=2)
    assert ref.text[:4] == [1, 2, 1, 3]
    assert all(c == 4 for c in ref.text[4:])
    assert len(ref.text) == ref.b0 * ref.z_top
    assert ref.levels[-1].block_len == 1
