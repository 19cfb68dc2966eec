"""Exact integer linear algebra over lattices.

Everything here runs on plain Python integers, so intermediates of the
normal-form reductions never overflow.  Matrices are sequences of rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotUnimodular

Matrix = Sequence[Sequence[int]]


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _column_echelon(m: Matrix) -> tuple[list[list[int]], list[list[int]], list[tuple[int, int]]]:
    """Reduce m by unimodular column operations.

    Returns (h, u, pivots) with h = m . u, u unimodular, and pivots the
    list of (row, col) positions of the echelon pivots.  Columns of h with
    index >= len(pivots) are zero, so the matching columns of u span
    ker(m) over the integers.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [list(r) for r in m]
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]
    pivots: list[tuple[int, int]] = []
    p = 0
    for r in range(rows):
        if p == cols:
            break
        for j in range(p + 1, cols):
            a, b = h[r][p], h[r][j]
            if b == 0:
                continue
            g, x, y = _exgcd(a, b)
            ca, cb = a // g, b // g
            for mat in (h, u):
                for i in range(len(mat)):
                    vp, vj = mat[i][p], mat[i][j]
                    mat[i][p] = x * vp + y * vj
                    mat[i][j] = -cb * vp + ca * vj
        if h[r][p] != 0:
            if h[r][p] < 0:
                for mat in (h, u):
                    for i in range(len(mat)):
                        mat[i][p] = -mat[i][p]
            pivots.append((r, p))
            p += 1
    return h, u, pivots


def _row_hermite(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Canonical row Hermite normal form of the lattice spanned by rows.

    Pivots are positive, entries below a pivot are zero, entries above a
    pivot are reduced into [0, pivot).  Zero rows are dropped.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        for i in range(r + 1, len(mat)):
            if mat[i][c] == 0:
                continue
            a, b = mat[r][c], mat[i][c]
            g, x, y = _exgcd(a, b)
            ca, cb = a // g, b // g
            mat[r], mat[i] = (
                [x * vr + y * vi for vr, vi in zip(mat[r], mat[i])],
                [-cb * vr + ca * vi for vr, vi in zip(mat[r], mat[i])],
            )
        if mat[r][c] == 0:
            continue
        if mat[r][c] < 0:
            mat[r] = [-v for v in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [vi - q * vr for vi, vr in zip(mat[i], mat[r])]
        r += 1
    return [tuple(row) for row in mat[:r]]


def kernel_basis(m: Matrix) -> list[tuple[int, ...]]:
    """Z-basis of the integer kernel of m, canonical for a fixed input.

    The basis comes out of a column echelon reduction and is then brought
    to row Hermite normal form, so callers always see the same charge
    vectors for the same ray matrix.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return []
    _, u, pivots = _column_echelon(m)
    rank = len(pivots)
    raw = [tuple(u[i][j] for i in range(cols)) for j in range(rank, cols)]
    return _row_hermite(raw)


def matvec(m: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def det(m: Matrix) -> int:
    """Determinant by fraction-free expansion (matrices here are tiny)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det(minor)
    return total


def inverse_unimodular(m: Matrix) -> list[list[int]]:
    """Exact inverse of a square integer matrix with determinant +-1."""
    n = len(m)
    if abs(det(m)) != 1:
        raise NotUnimodular(f"determinant is {det(m)}, expected +-1")
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vc for vi, vc in zip(aug[i], aug[c])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    assert all(v.denominator == 1 for row in out for v in row)
    return [[int(v) for v in row] for row in out]


def unimodular_change(basis_vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """GL(n, Z) matrix sending the given Z-basis to the standard basis.

    Raises NotUnimodular when the vectors do not form a lattice basis.
    """
    n = len(basis_vectors)
    if any(len(v) != n for v in basis_vectors):
        raise NotUnimodular("need n vectors of length n")
    cols = [[basis_vectors[j][i] for j in range(n)] for i in range(n)]
    return inverse_unimodular(cols)


def solve_in_lattice(m: Matrix, target: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution x of m . x = target, or None when none exists.

    Deterministic: the solution is read off the canonical column echelon
    form with all free coordinates set to zero.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if len(target) != rows:
        raise ValueError("target length does not match row count")
    h, u, pivots = _column_echelon(m)
    y = [0] * cols
    pivot_of_row = {r: c for r, c in pivots}
    for r in range(rows):
        acc = sum(h[r][j] * y[j] for j in range(cols))
        c = pivot_of_row.get(r)
        if c is None:
            if acc != target[r]:
                return None
            continue
        rem = target[r] - acc
        if rem % h[r][c] != 0:
            return None
        y[c] = rem // h[r][c]
    return matvec(u, y)
