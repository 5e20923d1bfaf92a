"""Exact linear solves over the rationals.

Systems are given column-wise: each unknown owns a sparse column (a dict from
row key to coefficient). Row keys can be anything hashable, which lets callers
use monomials directly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .errors import InconsistencyError


def solve_columns(
    columns: Sequence[Mapping[Hashable, object]],
    rhs: Mapping[Hashable, object],
    require_unique: bool = True,
) -> list:
    """Solve ``sum_j u_j * columns[j] == rhs`` exactly.

    Raises :class:`InconsistencyError` when the system has no solution, or when
    ``require_unique`` is set and the columns are linearly dependent.
    """
    n = len(columns)
    # row-reduce on the augmented matrix stored as dict rows
    rows: dict[Hashable, dict[int, object]] = {}
    for j, col in enumerate(columns):
        for r, c in col.items():
            if c:
                rows.setdefault(r, {})[j] = c
    for r, c in rhs.items():
        if c:
            rows.setdefault(r, {})[n] = c
    work = list(rows.values())

    pivots: list[tuple[int, dict]] = []
    pivot_cols = set()
    remaining = work
    for j in range(n):
        piv = None
        best = None
        for idx, row in enumerate(remaining):
            if j in row:
                size = len(row)
                if best is None or size < best:
                    piv, best = idx, size
                    if size == 1:
                        break
        if piv is None:
            if require_unique:
                raise InconsistencyError(f"linear system is singular (column {j})")
            continue
        prow = remaining.pop(piv)
        inv = Fraction(1) / Fraction(prow[j])
        prow = {k: _norm(v * inv) for k, v in prow.items()}
        new_remaining = []
        for row in remaining:
            f = row.get(j)
            if f:
                for k, v in prow.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = _norm(nv)
                    else:
                        row.pop(k, None)
            if row:
                new_remaining.append(row)
        remaining = new_remaining
        pivots.append((j, prow))
        pivot_cols.add(j)

    for row in remaining:
        if row:
            # only the rhs entry left means 0 = nonzero
            raise InconsistencyError("linear system has no solution")

    sol: list = [0] * n
    for j, prow in reversed(pivots):
        val = prow.get(n, 0)
        for k, v in prow.items():
            if k != j and k != n:
                val -= v * sol[k]
        sol[j] = _norm(val)
    return sol


def _norm(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v
