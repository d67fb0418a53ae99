"""Exact Gaussian elimination over a FieldOps adapter.

Vectors are lists of raw field payloads; no floating point enters the
homological core.  Matrices are lists of rows.
"""

from __future__ import annotations


def row_reduce(rows, ops):
    """Reduced row echelon form in place on a copy; returns (rank, pivots, rref)."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0, [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if not ops.is_zero(mat[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = ops.inv(mat[r][c])
        mat[r] = [ops.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not ops.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return r, pivots, mat


def rank(rows, ops):
    return row_reduce(rows, ops)[0]


def kernel_basis(rows, ncols, ops):
    """Basis of the right kernel of the matrix, echelon-parametrized."""
    if ncols == 0:
        return []
    if not rows:
        basis = []
        for j in range(ncols):
            v = [ops.zero] * ncols
            v[j] = ops.one
            basis.append(v)
        return basis
    r, pivots, rref = row_reduce(rows, ops)
    pivot_set = set(pivots)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for j in free_cols:
        v = [ops.zero] * ncols
        v[j] = ops.one
        for i, pc in enumerate(pivots):
            v[pc] = ops.neg(rref[i][j])
        basis.append(v)
    return basis


class SpanTracker:
    """Incremental row space with membership tests, kept in echelon form."""

    __slots__ = ("ops", "ncols", "rows", "pivot_of_row")

    def __init__(self, ncols, ops):
        self.ops = ops
        self.ncols = ncols
        self.rows = []
        self.pivot_of_row = []

    @property
    def dim(self):
        return len(self.rows)

    def _reduce(self, vec):
        ops = self.ops
        vec = list(vec)
        for row, piv in zip(self.rows, self.pivot_of_row):
            if not ops.is_zero(vec[piv]):
                f = vec[piv]
                vec = [ops.sub(x, ops.mul(f, y)) for x, y in zip(vec, row)]
        return vec

    def contains(self, vec):
        red = self._reduce(vec)
        return all(self.ops.is_zero(x) for x in red)

    def add(self, vec):
        """Insert vec; returns True when it enlarged the span."""
        ops = self.ops
        red = self._reduce(vec)
        piv = next((j for j, x in enumerate(red) if not ops.is_zero(x)), None)
        if piv is None:
            return False
        inv = ops.inv(red[piv])
        red = [ops.mul(inv, x) for x in red]
        self.rows.append(red)
        self.pivot_of_row.append(piv)
        return True
