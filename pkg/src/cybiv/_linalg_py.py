"""Pure-Python fraction-free row reduction on sparse integer rows.

Rows are ``dict[int, int]`` maps from column to nonzero entry.  The output of
:func:`rref_int` is canonical: each row is primitive (content 1), its pivot
entry is positive, and every pivot column is zero in every other row.  The
compiled kernel produces identical output.
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush
from math import gcd
from typing import Iterable


def make_primitive(row: dict[int, int], pivot: int | None = None) -> dict[int, int]:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if pivot is None:
        pivot = min(row)
    if row[pivot] < 0:
        g = -g
    if g == 1:
        return row
    return {k: v // g for k, v in row.items()}


def reduce_row(row: dict[int, int], echelon: dict[int, dict[int, int]]) -> dict[int, int]:
    """Eliminate every pivot column of ``echelon`` from ``row`` (a fresh dict)."""
    row = dict(row)
    heap = [c for c in row if c in echelon]
    if not heap:
        return row
    heapify(heap)
    while heap:
        c = heappop(heap)
        a = row.get(c)
        if not a:
            continue
        prow = echelon[c]
        p = prow[c]
        g = gcd(p, a)
        mp = p // g
        ma = a // g
        if mp != 1:
            row = {k: v * mp for k, v in row.items()}
        for k, v in prow.items():
            old = row.get(k)
            if old is None:
                row[k] = -ma * v
                if k in echelon:
                    heappush(heap, k)
            else:
                nv = old - ma * v
                if nv:
                    row[k] = nv
                else:
                    del row[k]
        if mp != 1 and row:
            row = make_primitive(row)
    return row


def echelon_insert(row: dict[int, int], echelon: dict[int, dict[int, int]]) -> int | None:
    """Reduce ``row`` and add it to ``echelon``; return its pivot or None if dependent."""
    r = reduce_row(row, echelon)
    if not r:
        return None
    pivot = min(r)
    echelon[pivot] = make_primitive(r, pivot)
    return pivot


def back_substitute(echelon: dict[int, dict[int, int]]) -> None:
    """Turn a row-echelon map into reduced form in place."""
    pivots = sorted(echelon)
    for idx in range(len(pivots) - 1, -1, -1):
        c = pivots[idx]
        prow = echelon[c]
        p = prow[c]
        for c2 in pivots[:idx]:
            row = echelon[c2]
            a = row.get(c)
            if not a:
                continue
            g = gcd(p, a)
            mp = p // g
            ma = a // g
            if mp != 1:
                row = {k: v * mp for k, v in row.items()}
            for k, v in prow.items():
                nv = row.get(k, 0) - ma * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            echelon[c2] = make_primitive(row, c2)


def rref_int(rows: Iterable[dict[int, int]], ncols: int | None = None) -> tuple[list[dict[int, int]], list[int]]:
    echelon: dict[int, dict[int, int]] = {}
    for row in rows:
        if row:
            echelon_insert(row, echelon)
    back_substitute(echelon)
    pivots = sorted(echelon)
    return [echelon[c] for c in pivots], pivots
