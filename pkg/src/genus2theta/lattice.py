"""Exact integer linear algebra on small matrices (Python ints, no overflow)."""

from __future__ import annotations

import itertools
from math import gcd

Matrix = list[list[int]]


def _to_rows(A) -> Matrix:
    return [[int(x) for x in row] for row in A]


def hermite_rows(A) -> Matrix:
    """Row-style Hermite normal form with the zero rows dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).  Two
    integer matrices span the same row lattice iff their forms are equal.
    """
    rows = [r[:] for r in _to_rows(A)]
    if not rows:
        return []
    n_cols = len(rows[0])
    pivot_row = 0
    for col in range(n_cols):
        # Euclid on the column below pivot_row
        while True:
            nz = [i for i in range(pivot_row, len(rows)) if rows[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(rows[i][col]))
            rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
            done = True
            for i in range(pivot_row + 1, len(rows)):
                q = rows[i][col] // rows[pivot_row][col]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
                if rows[i][col] != 0:
                    done = False
            if done:
                break
        if pivot_row < len(rows) and rows[pivot_row][col] != 0:
            if rows[pivot_row][col] < 0:
                rows[pivot_row] = [-a for a in rows[pivot_row]]
            p = rows[pivot_row][col]
            for i in range(pivot_row):
                q = rows[i][col] // p
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
            pivot_row += 1
            if pivot_row == len(rows):
                break
    return [r for r in rows if any(r)]


def rank(A) -> int:
    return len(hermite_rows(A))


def integer_kernel(A, n_cols: int | None = None) -> Matrix:
    """Rows spanning {x in Z^n : A x = 0}; the result is automatically saturated.

    ``n_cols`` fixes n when ``A`` has no rows (the kernel is then all of Z^n).
    """
    A = _to_rows(A)
    n = len(A[0]) if A else (n_cols or 0)
    if not A:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    # Column operations on A tracked in U (n x n); A U = [H | 0].
    cols = [[A[i][j] for i in range(len(A))] for j in range(n)]
    U = [[int(i == j) for i in range(n)] for j in range(n)]  # U[j] is column j
    pivot = 0
    for row in range(len(A)):
        while True:
            nz = [j for j in range(pivot, n) if cols[j][row] != 0]
            if not nz:
                break
            best = min(nz, key=lambda j: abs(cols[j][row]))
            cols[pivot], cols[best] = cols[best], cols[pivot]
            U[pivot], U[best] = U[best], U[pivot]
            done = True
            for j in range(pivot + 1, n):
                q = cols[j][row] // cols[pivot][row]
                if q:
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[pivot])]
                    U[j] = [a - q * b for a, b in zip(U[j], U[pivot])]
                if cols[j][row] != 0:
                    done = False
            if done:
                break
        if pivot < n and cols[pivot][row] != 0:
            pivot += 1
    return hermite_rows(U[pivot:])


def saturation(A) -> Matrix:
    """Basis (in Hermite form) of (Q-span of the rows) intersected with Z^n."""
    A = _to_rows(A)
    if not A:
        return []
    return hermite_rows(integer_kernel(integer_kernel(A), n_cols=len(A[0])))


def determinantal_divisors(A) -> list[int]:
    """d_k = gcd of the k x k minors, k = 1 .. rank."""
    A = _to_rows(A)
    m, n = len(A), len(A[0]) if A else 0
    out = []
    for k in range(1, min(m, n) + 1):
        d = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                d = gcd(d, _det([[A[i][j] for j in cols] for i in rows]))
        if d == 0:
            break
        out.append(d)
    return out


def elementary_divisors(A) -> list[int]:
    """Nonzero diagonal of the Smith normal form."""
    dets = determinantal_divisors(A)
    return [dets[0]] + [dets[i] // dets[i - 1] for i in range(1, len(dets))] if dets else []


def is_saturated(A) -> bool:
    return all(d == 1 for d in elementary_divisors(A))


def _det(M: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    M = [r[:] for r in M]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


def det(M) -> int:
    return _det(_to_rows(M))
