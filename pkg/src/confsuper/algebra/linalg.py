"""Exact Gaussian elimination over any field-like element type.

Matrix entries must support ``+ - * /`` and truthiness as a zero test
(Fraction, GaussianRational, RationalFunction all do).  Right-hand sides
may live in a vector space over that field, e.g. polynomials whose
coefficients are being solved for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence


def _size(entry) -> int:
    size = getattr(entry, "size", None)
    return size() if callable(size) else 0


@dataclass
class Elimination:
    rows: list[list[Any]]
    rhs: list[list[Any]]
    pivots: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def eliminate(
    matrix: Sequence[Sequence[Any]],
    rhs: Sequence[Sequence[Any]] | None = None,
    zero_rhs: Callable[[], Any] | None = None,
) -> Elimination:
    """Reduced row echelon form of ``matrix`` with the same operations applied to ``rhs``."""
    rows = [list(r) for r in matrix]
    ncols = len(rows[0]) if rows else 0
    rhs_rows = [list(r) for r in rhs] if rhs is not None else [[] for _ in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        candidates = [k for k in range(r, len(rows)) if rows[k][col]]
        if not candidates:
            continue
        best = min(candidates, key=lambda k: _size(rows[k][col]))
        rows[r], rows[best] = rows[best], rows[r]
        rhs_rows[r], rhs_rows[best] = rhs_rows[best], rhs_rows[r]
        piv = rows[r][col]
        inv = 1 / piv
        rows[r] = [e * inv if e else e for e in rows[r]]
        rhs_rows[r] = [e * inv for e in rhs_rows[r]]
        for k in range(len(rows)):
            if k == r:
                continue
            factor = rows[k][col]
            if not factor:
                continue
            rows[k] = [a - factor * b if b else a for a, b in zip(rows[k], rows[r])]
            rhs_rows[k] = [a - b * factor for a, b in zip(rhs_rows[k], rhs_rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return Elimination(rows, rhs_rows, pivots)


def rank(matrix: Sequence[Sequence[Any]]) -> int:
    if not matrix:
        return 0
    return eliminate(matrix).rank


@dataclass
class LinearSolution:
    values: list[list[Any]] | None
    rank: int
    residuals: list[list[Any]]
    free_columns: list[int]

    @property
    def unique(self) -> bool:
        return self.values is not None and not self.free_columns

    @property
    def consistent(self) -> bool:
        return all(not e for row in self.residuals for e in row)


def solve(matrix, rhs, zero) -> LinearSolution:
    """Solve ``matrix @ X = rhs`` column by column.

    ``rhs`` is a list of rows (one entry per right-hand side).  ``zero`` is
    the additive identity used for free variables.  ``residuals`` collects
    the right-hand sides of rows that reduced to zero on the left; the
    system is consistent iff they all vanish.
    """
    el = eliminate(matrix, rhs)
    ncols = len(matrix[0]) if matrix else 0
    nrhs = len(rhs[0]) if rhs else 0
    residuals = [el.rhs[k] for k in range(el.rank, len(el.rows))]
    free = [c for c in range(ncols) if c not in el.pivots]
    values = [[zero for _ in range(nrhs)] for _ in range(ncols)]
    for k, col in enumerate(el.pivots):
        values[col] = list(el.rhs[k])
    return LinearSolution(values, el.rank, residuals, free)


def nullspace(matrix, zero, one) -> list[list[Any]]:
    el = eliminate(matrix)
    ncols = len(matrix[0]) if matrix else 0
    free = [c for c in range(ncols) if c not in el.pivots]
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for k, col in enumerate(el.pivots):
            vec[col] = zero - el.rows[k][f]
        basis.append(vec)
    return basis
