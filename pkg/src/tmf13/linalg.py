"""Exact Gaussian elimination over Q.

The right-hand side may hold any objects that form a Q-vector space
(rationals, :class:`~tmf13.gradedmf.GradedMF`, :class:`~tmf13.series.QLaurent`);
the matrix itself is always rational.  Inconsistency is reported as a
certificate ``y`` with ``y^T A = 0`` and ``y^T b != 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .series import is_zero

__all__ = ["LinearSystem", "Solution", "solve_exact", "solve_many", "rank"]


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple
    rhs: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.matrix)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("matrix is not rectangular")
        if len(self.rhs) != len(rows):
            raise ValueError("right-hand side length does not match the number of rows")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "rhs", tuple(self.rhs))

    @property
    def shape(self):
        return len(self.matrix), (len(self.matrix[0]) if self.matrix else 0)


@dataclass
class Solution:
    consistent: bool
    particular: tuple | None = None
    nullspace: tuple = ()
    rank: int = 0
    pivots: tuple = ()
    # certificate of inconsistency: y with y^T A = 0 and y^T b = value != 0
    certificate: tuple | None = None
    witness_value: object = None
    witness_row: int | None = None
    free_columns: tuple = field(default=())

    @property
    def unique(self) -> bool:
        return self.consistent and not self.nullspace


def _eliminate(matrix, ncols):
    """Row-reduce ``matrix`` (list of lists of Fraction), tracking row operations.

    Returns (reduced rows, transform rows, pivot columns).  ``transform[i]`` is
    the combination of original rows that produced reduced row ``i``.
    """
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    transform = [[Fraction(int(i == j)) for j in range(nrows)] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        transform[r], transform[p] = transform[p], transform[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        transform[r] = [x * inv for x in transform[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                transform[i] = [x - f * y for x, y in zip(transform[i], transform[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, transform, pivots


def _combine(coeffs, values):
    acc = None
    for c, v in zip(coeffs, values):
        if c == 0:
            continue
        term = v * c
        acc = term if acc is None else acc + term
    return Fraction(0) if acc is None else acc


def solve_many(matrix, rhs_columns) -> list[Solution]:
    """Solve ``A x = b`` for several right-hand sides sharing one elimination."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    red, transform, pivots = _eliminate(rows, ncols)
    rank_ = len(pivots)
    free = tuple(c for c in range(ncols) if c not in pivots)
    nullspace = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        nullspace.append(tuple(v))
    out = []
    for b in rhs_columns:
        b = list(b)
        if len(b) != nrows:
            raise ValueError("right-hand side length does not match the number of rows")
        bad = None
        for i in range(rank_, nrows):
            val = _combine(transform[i], b)
            if not is_zero(val):
                bad = (i, val)
                break
        if bad is not None:
            i, val = bad
            cert = tuple(transform[i])
            last = max(j for j, y in enumerate(cert) if y != 0)
            out.append(Solution(False, rank=rank_, pivots=tuple(pivots), certificate=cert,
                                witness_value=val, witness_row=last, free_columns=free))
            continue
        x = [Fraction(0)] * ncols
        for i, pc in enumerate(pivots):
            x[pc] = _combine(transform[i], b)
        out.append(Solution(True, tuple(x), tuple(nullspace), rank_, tuple(pivots), free_columns=free))
    return out


def solve_exact(system: LinearSystem) -> Solution:
    """Exact solution with free parameters, or an inconsistency certificate."""
    ncols = system.shape[1]
    if not system.matrix:
        return Solution(True, (), (), 0, ())
    if ncols == 0:
        for i, b in enumerate(system.rhs):
            if not is_zero(b):
                cert = tuple(Fraction(int(j == i)) for j in range(len(system.rhs)))
                return Solution(False, certificate=cert, witness_value=b, witness_row=i)
        return Solution(True, (), (), 0, ())
    return solve_many(system.matrix, [system.rhs])[0]


def rank(matrix) -> int:
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return 0
    return len(_eliminate(rows, len(rows[0]))[2])
