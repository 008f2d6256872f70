"""Pattern search: primary occurrences through the grid, secondary ones
through the sources of unmarked blocks.

For every cut ``P = P[1..k] . P[k+1..m]`` the reversed left part is binary
searched among the Y strings and the right part among the X strings; each
grid point in the resulting rectangle is a primary occurrence. Each primary
occurrence is pushed down the levels while it stays inside marked blocks,
then walked back up; at every level on the way the unmarked blocks whose
sources cover it receive a copy, which is walked up in turn.

A one-symbol pattern ``c`` is searched as ``c*`` with ``*`` matching any
symbol; the terminator makes this work for the last text position.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence, Tuple

from .grid import OccurrenceGrid, Ordering

Sink = Callable[[int], None]


def _validate(index, pattern: Sequence[int]) -> list:
    q = [int(c) for c in pattern]
    if not q:
        raise ValueError("empty pattern")
    for c in q:
        if not 1 <= c <= index.sigma:
            raise ValueError(f"symbol {c} outside the alphabet [1, {index.sigma}]")
    return q


def find_range(grid: OccurrenceGrid, q: Optional[Sequence[int]], axis: str) -> Tuple[int, int]:
    """Rank interval [lo, hi] of the X (or Y) strings prefixed by q; lo > hi when empty.

    ``q=None`` is the wildcard and selects every column.
    """
    num = grid.num_points
    if q is None:
        if axis != "X":
            raise ValueError("the wildcard only applies to the X axis")
        return 1, num
    if axis == "X":
        cmp = grid.compare_x
    elif axis == "Y":
        cmp = grid.compare_y
    else:
        raise ValueError(f"unknown axis {axis!r}")

    lo, hi = 1, num + 1                 # first rank not sorting before q
    after = num + 1                     # smallest rank seen sorting after q
    while lo < hi:
        mid = (lo + hi) // 2
        c = cmp(mid, q)
        if c is Ordering.LT:
            lo = mid + 1
        else:
            hi = mid
            if c is Ordering.GT:
                after = mid
    first = lo
    hi = after                          # first rank sorting after q
    while lo < hi:
        mid = (lo + hi) // 2
        if cmp(mid, q) is Ordering.GT:
            hi = mid
        else:
            lo = mid + 1
    return first, lo - 1


def report_secondary(index, l: int, i: int, m: int, sink: Sink) -> None:
    """Walk the occurrence at S_l[i..i+m-1] up to the text, emitting it and all its copies.

    Sources that can contain the window start in [i+m-b_l, i]; they are the
    ones of F_l between the corresponding zeros. Window ends are clamped to
    S_l and each candidate is re-checked for coverage. Pending copies are
    kept on an explicit stack instead of recursing.
    """
    levels = index.levels
    b0 = index.b0
    stack = [(l, i)]
    while stack:
        l, i = stack.pop()
        b = b0 >> l
        while l >= 0:
            lv = levels[l]
            k = max(1, i + m - b)
            k2 = min(i, lv.n_l - b + 1)
            if k <= k2 and lv.w_l:
                F, pi, D = lv.F, lv.pi, lv.D
                p = F.select0(k)
                p2 = F.select0(k2 + 1) if k2 < F.zeros else len(F) + 1
                for t in range(p - k + 1, p2 - k2):
                    src = F.select1(t) - t
                    if src <= i and src + b >= i + m:
                        q = pi.invert(t)
                        stack.append((l, (D.select0(q) - 1) * b + 1 + (i - src)))
            l -= 1
            b *= 2
            if l >= 0:
                j = (i - 1) // b + 1
                i = (levels[l].D.select1(j) - 1) * b + (i - 1) % b + 1
        sink(i)


def report_primary(index, i: int, m: int, sink: Sink) -> None:
    """Report the primary occurrence at text position i and everything copied from it."""
    l, b = 0, index.b0
    while b // 2 >= m:
        D = index.levels[l].D
        j, j2 = (i - 1) // b + 1, (i + m - 2) // b + 1
        if not (D[j] and D[j2]):
            break
        i = (D.rank1(j) - 1) * b + (i - 1) % b + 1
        l += 1
        b //= 2
    report_secondary(index, l, i, m, sink)


def occurrences(index, pattern: Sequence[int]) -> List[int]:
    """Every emitted occurrence, in emission order and before deduplication."""
    q = _validate(index, pattern)
    m = len(q)
    if m > index.n_original:
        return []
    grid = index.grid
    out: List[int] = []
    wildcard = m == 1
    if wildcard:
        m = 2
    for k in range(1, m):
        y1, y2 = find_range(grid, q[k - 1::-1], "Y")
        if y1 > y2:
            continue
        x1, x2 = find_range(grid, None if wildcard else q[k:], "X")
        if x1 > x2:
            continue
        for _, y in grid.range_report(x1, x2, y1, y2, with_x=False):
            report_primary(index, grid.T[y - 1] - k, m, out.append)
    return out


def search(index, pattern: Sequence[int]) -> List[int]:
    """Sorted 1-based start positions of ``pattern`` in the original text."""
    found = occurrences(index, pattern)
    assert len(set(found)) == len(found), "an occurrence was reported twice"
    limit = index.n_original - len(pattern) + 1
    return sorted(p for p in found if p <= limit)


def search_bytes(index, pattern: bytes) -> List[int]:
    """Search a byte pattern in an index built from bytes; absent bytes match nothing."""
    q = index.encode_pattern(pattern)
    if q is None or not q:
        return []
    return search(index, q)
