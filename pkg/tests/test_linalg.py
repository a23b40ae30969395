from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lieposet.linalg import (
    bareiss_rank,
    charpoly,
    matmul,
    nullspace,
    poly_divide_root,
    rational_roots,
    rref,
    solve,
)

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)
    )


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_matches_sympy(m):
    assert bareiss_rank(m) == sympy.Matrix(m).rank()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_with_fractions(m):
    scaled = [[Fraction(v, 3) for v in row] for row in m]
    assert bareiss_rank(scaled) == bareiss_rank(m)


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_nullspace_is_kernel(m):
    cols = len(m[0])
    basis = nullspace(m, cols)
    assert len(basis) == cols - bareiss_rank(m)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_pivots(m):
    red, pivots = rref(m)
    assert len(pivots) == sympy.Matrix(m).rank()
    for r, c in enumerate(pivots):
        assert red[r][c] == 1


@given(square())
@settings(max_examples=100, deadline=None)
def test_charpoly_matches_sympy(m):
    lam = sympy.Symbol("lam")
    expected = sympy.Poly(sympy.Matrix(m).charpoly(lam).as_expr(), lam).all_coeffs()
    assert charpoly(m) == [Fraction(int(c)) for c in expected]


@given(square())
@settings(max_examples=80, deadline=None)
def test_solve_roundtrip(m):
    if bareiss_rank(m) < len(m):
        return
    rhs = list(range(1, len(m) + 1))
    x = solve(m, rhs)
    assert [sum(a * b for a, b in zip(row, x)) for row in m] == rhs


def test_solve_singular():
    import pytest

    with pytest.raises(ValueError):
        solve([[1, 2], [2, 4]], [1, 1])


def test_rational_roots_and_division():
    # (x - 1/2)(x + 3)(x^2 + 1)
    coeffs = [Fraction(c) for c in (1, Fraction(5, 2), Fraction(-1, 2), Fraction(5, 2), Fraction(-3, 2))]
    assert sorted(rational_roots(coeffs)) == [Fraction(-3), Fraction(1, 2)]
    q, rem = poly_divide_root(coeffs, Fraction(-3))
    assert rem == 0 and len(q) == 4


def test_matmul_identity():
    a = [[1, 2], [3, 4]]
    assert matmul(a, [[1, 0], [0, 1]]) == a
