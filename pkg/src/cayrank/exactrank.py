"""Exact matrix rank over the Gaussian rationals via fraction-free
(Bareiss-style) elimination; deterministic pivot choice so reported pivot
columns are reproducible."""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .scalars import ExactComplex, ONE


def rank_with_pivots(rows: Sequence[Sequence[ExactComplex]]) -> Tuple[int, List[int]]:
    """Rank and the list of pivot column indices (first independent columns,
    left to right).  Matrix given row-major; entries ExactComplex."""
    m = [list(row) for row in rows if any(row)]  # zero rows never matter
    if not m or not m[0]:
        return 0, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: List[int] = []
    prev = ONE
    piv_r = 0
    for col in range(n_cols):
        sel = None
        for r in range(piv_r, n_rows):
            if m[r][col]:
                sel = r
                break
        if sel is None:
            continue
        if sel != piv_r:
            m[piv_r], m[sel] = m[sel], m[piv_r]
        pivots.append(col)
        p = m[piv_r][col]
        for r in range(piv_r + 1, n_rows):
            mr = m[r]
            mp = m[piv_r]
            fr = mr[col]
            for c in range(col + 1, n_cols):
                mr[c] = (p * mr[c] - fr * mp[c]) / prev
            mr[col] = ExactComplex(0)
        prev = p
        piv_r += 1
        if piv_r == n_rows:
            break
    return len(pivots), pivots


def rank(rows: Sequence[Sequence[ExactComplex]]) -> int:
    return rank_with_pivots(rows)[0]
