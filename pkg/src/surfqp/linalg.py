"""Exact linear algebra over the rationals on sparse rows (dict column -> Fraction)."""

from __future__ import annotations

from fractions import Fraction


def _sub_scaled(row: dict, other: dict, s) -> None:
    for k, v in other.items():
        nv = row.get(k, 0) - s * v
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)


def rref(rows) -> dict[int, dict]:
    """Reduced row echelon form as ``{pivot column: normalized row}``."""
    pivots: dict[int, dict] = {}
    for r in rows:
        row = {k: Fraction(v) for k, v in (r.items() if isinstance(r, dict) else enumerate(r)) if v}
        for col in sorted(set(row) & set(pivots)):
            if col in row:
                _sub_scaled(row, pivots[col], row[col])
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for other in pivots.values():
            if p in other:
                _sub_scaled(other, row, other[p])
        pivots[p] = row
    return pivots


def rank(rows) -> int:
    return len(rref(rows))


def nullspace(rows, ncols: int) -> list[dict]:
    """Basis of {x : row . x = 0 for every row}, as sparse vectors."""
    piv = rref(rows)
    out = []
    for free in range(ncols):
        if free in piv:
            continue
        v = {free: Fraction(1)}
        for p, row in piv.items():
            if free in row:
                v[p] = -row[free]
        out.append(v)
    return out


def left_inverse_rows(rows, n: int) -> list[dict] | None:
    """For an invertible n x n matrix M given by rows, the rows of M^-1.

    ``result[k]`` expresses the k-th unit vector as a combination of the rows
    of M.  Returns None when M is singular.
    """
    aug = []
    for i, r in enumerate(rows):
        row = {k: Fraction(v) for k, v in r.items() if v}
        row[n + i] = Fraction(1)
        aug.append(row)
    piv = rref(aug)
    out: list[dict] = []
    for k in range(n):
        row = piv.get(k)
        if row is None or any(c < n and c != k for c in row):
            return None
        out.append({c - n: v for c, v in row.items() if c >= n})
    return out


def bareiss_det(matrix) -> int | Fraction:
    """Determinant by fraction-free elimination (exact for integer input)."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else Fraction(num) / prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
