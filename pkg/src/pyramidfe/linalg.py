"""Exact dense and sparse linear algebra over the rationals.

Everything here is plain Gaussian elimination; pivots are chosen to keep
entry growth down but no approximation is ever made.  Matrices are
lists of lists of rationals, sparse rows are {column: value} dicts.
"""

from __future__ import annotations

from .rationals import Q, QZERO, as_q


def _bitsize(q) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def copy_matrix(rows):
    return [list(r) for r in rows]


def identity(n):
    return [[Q(1) if i == j else QZERO for j in range(n)] for i in range(n)]


def mat_vec(rows, vec):
    out = []
    for r in rows:
        s = QZERO
        for a, b in zip(r, vec):
            if a and b:
                s += a * b
        out.append(s)
    return out


def determinant(rows) -> Q:
    """Exact determinant by fraction elimination with small-entry pivoting."""
    n = len(rows)
    if n == 0:
        return Q(1)
    a = copy_matrix(rows)
    det = Q(1)
    for col in range(n):
        pivot_row = None
        best = None
        for r in range(col, n):
            v = a[r][col]
            if v:
                size = _bitsize(v)
                if best is None or size < best:
                    best = size
                    pivot_row = r
        if pivot_row is None:
            return QZERO
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = -det
        piv = a[col][col]
        det *= piv
        arow = a[col]
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f = f / piv
                row = a[r]
                for c in range(col, n):
                    if arow[c]:
                        row[c] -= f * arow[c]
    return det


def rank_dense(rows) -> int:
    a = copy_matrix(rows)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot_row = None
        best = None
        for r in range(rank, nrows):
            v = a[r][col]
            if v:
                size = _bitsize(v)
                if best is None or size < best:
                    best = size
                    pivot_row = r
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        piv = a[rank][col]
        arow = a[rank]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            if f:
                f = f / piv
                row = a[r]
                for c in range(col, ncols):
                    if arow[c]:
                        row[c] -= f * arow[c]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_sparse(rows) -> int:
    """Rank of sparse rows ({col: value} dicts), shortest-row pivoting."""
    work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        work.sort(key=len)
        pivot = work.pop(0)
        rank += 1
        col = min(pivot, key=lambda c: _bitsize(pivot[c]))
        pval = pivot[col]
        reduced = []
        for row in work:
            v = row.get(col)
            if v:
                f = v / pval
                for c, pv in pivot.items():
                    nv = row.get(c, QZERO) - f * pv
                    if nv:
                        row[c] = nv
                    elif c in row:
                        del row[c]
            if row:
                reduced.append(row)
        work = reduced
    return rank


def solve_dense(a_rows, rhs):
    """Unique solution of a square exact system (raises if singular)."""
    n = len(a_rows)
    a = [list(r) + [v] for r, v in zip(a_rows, rhs)]
    for col in range(n):
        pivot_row = None
        best = None
        for r in range(col, n):
            v = a[r][col]
            if v:
                size = _bitsize(v)
                if best is None or size < best:
                    best = size
                    pivot_row = r
        if pivot_row is None:
            raise ZeroDivisionError("singular system")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        piv = a[col][col]
        arow = a[col]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f:
                f = f / piv
                row = a[r]
                for c in range(col, n + 1):
                    if arow[c]:
                        row[c] -= f * arow[c]
    return [a[i][n] / a[i][i] for i in range(n)]


def solve_in_span(columns, target):
    """Coefficients expressing target in the span of the given sparse columns.

    columns: list of {index: value} dicts; target likewise.
    Returns a coefficient list, or None when target is outside the span.
    """
    ncols = len(columns)
    # Gather the active coordinate set.
    keys = set(target)
    for c in columns:
        keys.update(c)
    keys = sorted(keys)
    pos = {k: i for i, k in enumerate(keys)}
    nrows = len(keys)
    a = [[QZERO] * (ncols + 1) for _ in range(nrows)]
    for j, colv in enumerate(columns):
        for k, v in colv.items():
            a[pos[k]][j] = v
    for k, v in target.items():
        a[pos[k]][ncols] = v
    # elimination
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        best = None
        for r in range(rank, nrows):
            v = a[r][col]
            if v:
                size = _bitsize(v)
                if best is None or size < best:
                    best = size
                    pivot_row = r
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        piv = a[rank][col]
        arow = a[rank]
        for r in range(nrows):
            if r == rank:
                continue
            f = a[r][col]
            if f:
                f = f / piv
                row = a[r]
                for c in range(col, ncols + 1):
                    if arow[c]:
                        row[c] -= f * arow[c]
        pivots.append((rank, col))
        rank += 1
    # consistency: any nonzero rhs below the pivot rows means no solution
    for r in range(rank, nrows):
        if a[r][ncols]:
            return None
    coeffs = [QZERO] * ncols
    for r, col in pivots:
        coeffs[col] = a[r][ncols] / a[r][col]
    return coeffs


class BlockTriangularSolver:
    """Exact repeated solves of a block lower-triangular square system.

    blocks is a list of (start, end) index ranges covering 0..n in order;
    the matrix must vanish above the block diagonal (verified on build).
    """

    def __init__(self, rows, blocks):
        self.rows = rows
        self.blocks = blocks
        n = len(rows)
        if blocks and blocks[-1][1] != n:
            raise ValueError("blocks do not cover the matrix")
        for (s, e) in blocks:
            for r in range(s, e):
                for c in range(e, n):
                    if rows[r][c]:
                        raise ValueError(
                            "matrix is not block lower triangular at (%d,%d)" % (r, c)
                        )
        self._inverses = [
            invert_dense([row[s:e] for row in rows[s:e]]) for (s, e) in blocks
        ]

    def solve(self, rhs):
        n = len(self.rows)
        x = [QZERO] * n
        for (s, e), inv in zip(self.blocks, self._inverses):
            local = []
            for r in range(s, e):
                acc = rhs[r]
                row = self.rows[r]
                for c in range(s):
                    if row[c] and x[c]:
                        acc -= row[c] * x[c]
                local.append(acc)
            sol = mat_vec(inv, local)
            for i, v in enumerate(sol):
                x[s + i] = v
        return x

    def determinant(self) -> Q:
        det = Q(1)
        for (s, e) in self.blocks:
            det *= determinant([row[s:e] for row in self.rows[s:e]])
        return det


def invert_dense(rows):
    n = len(rows)
    a = [list(r) + list(irow) for r, irow in zip(rows, identity(n))]
    for col in range(n):
        pivot_row = None
        best = None
        for r in range(col, n):
            v = a[r][col]
            if v:
                size = _bitsize(v)
                if best is None or size < best:
                    best = size
                    pivot_row = r
        if pivot_row is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        piv = a[col][col]
        a[col] = [v / piv for v in a[col]]
        arow = a[col]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f:
                row = a[r]
                for c in range(col, 2 * n):
                    if arow[c]:
                        row[c] -= f * arow[c]
    return [row[n:] for row in a]
