"""Small exact linear algebra: ranks over Q and polynomial determinants."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .groebner import divide_exact
from .poly import Polynomial


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix given by rows (Gaussian elimination)."""
    m = [list(map(Fraction, r)) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                f *= inv
                row = m[i]
                for j in range(c, ncols):
                    if pr[j]:
                        row[j] -= f * pr[j]
        r += 1
        if r == len(m):
            break
    return r


def coefficient_rows(polys: Sequence[Polynomial]) -> List[List[Fraction]]:
    """Coefficient vectors of ``polys`` over the union of their monomials."""
    monos = sorted({e for p in polys for e in p.terms})
    return [[p.terms.get(e, Fraction(0)) for e in monos] for p in polys]


def poly_rank(polys: Sequence[Polynomial]) -> int:
    return rank(coefficient_rows(polys))


def det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    M = [list(row) for row in matrix]
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    nv = M[0][0].nvars
    sign = 1
    prev = Polynomial.one(nv)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(nv)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = divide_exact(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    out = M[n - 1][n - 1]
    return -out if sign < 0 else out
