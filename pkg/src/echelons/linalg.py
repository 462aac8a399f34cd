"""Exact Gaussian elimination over Q on sparse rows.

Rows are dicts ``{column: Fraction}``.  Pivots are chosen as the first
nonzero column in the caller's column order, which keeps the result
deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Row = Dict[int, Fraction]


def rref(rows: Sequence[Row], ncols: int, col_order: Sequence[int] = None) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows[k]`` has a 1 at ``pivots[k]`` and
    zeros at every other pivot column.  ``col_order`` ranks the columns for
    pivot selection (default: natural order).
    """
    rank = {c: r for r, c in enumerate(col_order)} if col_order is not None else None
    work = [dict(r) for r in rows if r]
    pivots: List[int] = []
    basis: List[Row] = []
    for row in work:
        # eliminate existing pivots
        for pr, pc in zip(basis, pivots):
            v = row.get(pc)
            if v:
                _axpy(row, -v, pr)
        if not row:
            continue
        pc = min(row, key=rank.__getitem__) if rank else min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        # back-substitute into earlier rows
        for pr in basis:
            v = pr.get(pc)
            if v:
                _axpy(pr, -v, row)
        basis.append(row)
        pivots.append(pc)
    return basis, pivots


def _axpy(dst: Row, a: Fraction, src: Row) -> None:
    for c, v in src.items():
        w = dst.get(c, 0) + a * v
        if w:
            dst[c] = w
        else:
            dst.pop(c, None)


def solve(rows: Sequence[Row], rhs: Sequence[Fraction], ncols: int) -> Optional[Dict[int, Fraction]]:
    """One solution of ``A u = rhs`` (free variables set to 0), or ``None``."""
    aug = ncols
    full = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[aug] = Fraction(b)
        full.append(row)
    red, pivots = rref(full, ncols + 1)
    sol: Dict[int, Fraction] = {}
    for row, pc in zip(red, pivots):
        if pc == aug:
            return None
        v = row.get(aug, 0)
        if v:
            sol[pc] = v
    return sol


def nullspace(rows: Sequence[Row], ncols: int) -> List[Row]:
    """Basis of ``{u : A u = 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = {free: Fraction(1)}
        for row, pc in zip(red, pivots):
            v = row.get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def rank(rows: Sequence[Row], ncols: int) -> int:
    return len(rref(rows, ncols)[1])
