"""Exact rank of small integer matrices (fraction-free Bareiss elimination)."""

from __future__ import annotations

from typing import Sequence


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[int(x) for x in row] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, n_rows):
            f = m[r][col]
            for c in range(col, n_cols):
                # exact by Sylvester's identity
                m[r][c] = (p * m[r][c] - f * m[rank][c]) // prev
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank
