"""Exact linear algebra over the integers and rationals.

Everything here works with Python ints and :class:`fractions.Fraction`;
no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Number = int | Fraction
Matrix = list[list[Number]]


def _integer_rows(matrix: Sequence[Sequence[Number]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank is unchanged)."""
    out = []
    for row in matrix:
        if all(type(x) is int for x in row):
            out.append(list(row))
            continue
        dens = [x.denominator for x in row if isinstance(x, Fraction)]
        scale = lcm(*dens) if dens else 1
        out.append([int(x * scale) for x in row])
    return out


def bareiss_rank(matrix: Sequence[Sequence[Number]]) -> int:
    """Rank by fraction-free Gaussian elimination (Bareiss)."""
    m = [row for row in _integer_rows(matrix)]
    nrows = len(m)
    if nrows == 0:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        prow = m[rank]
        for r in range(rank + 1, nrows):
            row = m[r]
            a = row[col]
            # every entry is a minor of the input, so the division is exact
            for c in range(col + 1, ncols):
                row[c] = (p * row[c] - a * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rref(matrix: Sequence[Sequence[Number]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def nullspace(matrix: Sequence[Sequence[Number]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    red, pivots = rref(aug)
    if len(pivots) != n or (pivots and pivots[-1] == n):
        raise ValueError("system is singular")
    return [red[i][n] for i in range(n)]


def matmul(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def charpoly(matrix: Sequence[Sequence[Number]]) -> list[Fraction]:
    """Characteristic polynomial det(tI - M), coefficients from t^n down to t^0.

    Uses the Faddeev-LeVerrier recursion, which is exact over Q.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = matmul(a, m)
        m = [[am[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    return coeffs


def poly_divide_root(coeffs: list[Fraction], root: Fraction) -> tuple[list[Fraction], Fraction]:
    """Synthetic division by (t - root); returns quotient and remainder."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + out[-1] * root)
    return out[:-1], out[-1]


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small = [d for d in range(1, int(k**0.5) + 1) if k % d == 0]
    return sorted(set(small + [k // d for d in small]))


def rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Distinct rational roots of a polynomial (highest degree first)."""
    dens = [c.denominator for c in coeffs]
    scale = lcm(*dens) if dens else 1
    ints = [int(c * scale) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    roots: list[Fraction] = []
    while ints and ints[-1] == 0:
        ints.pop()
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) <= 1:
        return roots
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    for p in _divisors(ints[-1]):
        for q in _divisors(ints[0]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                val = 0
                for c in ints:
                    val = val * cand + c
                if val == 0:
                    roots.append(cand)
    return sorted(roots)
