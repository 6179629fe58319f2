from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from leibder.linalg import (Matrix, SparseEchelon, commutator, format_scalar, in_span,
                            kernel_basis, mat_mul, parse_scalar, rank, rref)


def M(rows):
    return Matrix(rows)


# -- scalars ---------------------------------------------------------------

@pytest.mark.parametrize("text, value", [
    ("3", Fraction(3)), ("-3/6", Fraction(-1, 2)), ("−2/4", Fraction(-1, 2)), ("0", Fraction(0)),
    ("10/5", Fraction(2)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "a", "1/2/3", "1.5"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_format_scalar():
    assert format_scalar(Fraction(6, -4)) == "-3/2"
    assert format_scalar(Fraction(4, 2)) == "2"
    assert parse_scalar(format_scalar(Fraction(-7, 9))) == Fraction(-7, 9)


def test_scalar_canonical_arithmetic():
    a, b = Fraction(1, 6), Fraction(3, 10)
    s = a + b
    assert (s.numerator, s.denominator) == (7, 15)
    assert s.denominator > 0


# -- rref / kernel ---------------------------------------------------------

def test_rref_identity():
    R, r, piv = rref(Matrix.identity(2))
    assert R == Matrix.identity(2) and r == 2 and piv == [0, 1]


def test_rref_dependent_rows():
    R, r, piv = rref(M([[1, 2], [2, 4]]))
    assert R == M([[1, 2], [0, 0]]) and r == 1 and piv == [0]


def test_rref_zero():
    R, r, piv = rref(Matrix.zeros(3, 3))
    assert R == Matrix.zeros(3, 3) and r == 0 and piv == []


def test_rref_fractions():
    R, r, piv = rref(M([[Fraction(1, 2), 1, 0], [1, 0, 3]]))
    assert R == M([[1, 0, 3], [0, 1, Fraction(-3, 2)]])
    assert piv == [0, 1]


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(2)) == []
    assert kernel_basis(M([[1, 2], [2, 4]])) == [(Fraction(-2), Fraction(1))]
    ker = kernel_basis(Matrix.zeros(1, 3))
    assert len(ker) == 3
    assert rank(Matrix(ker)) == 3


def test_in_span_examples():
    assert in_span([(1, 0)], (2, 0))
    assert not in_span([(1, 0)], (0, 1))
    assert in_span([], (0, 0))
    assert not in_span([], (0, 1))


def test_mat_mul_units():
    assert mat_mul(Matrix.unit(2, 1, 2), Matrix.unit(2, 2, 1)) == Matrix.unit(2, 1, 1)


def test_commutator_examples():
    A = M([[1, 2], [3, Fraction(1, 2)]])
    assert commutator(A, A).is_zero()
    assert commutator(Matrix.identity(2), A).is_zero()


def test_shape_errors():
    with pytest.raises(ValueError):
        mat_mul(Matrix.zeros(2, 3), Matrix.zeros(2, 3))
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])
    with pytest.raises(IndexError):
        Matrix.unit(2, 3, 1)


# -- properties ------------------------------------------------------------

def _det(rows):
    # Leibniz permutation formula: independent of any elimination
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Fraction(-1 if inv % 2 else 1)
        for r, c in enumerate(perm):
            term *= rows[r][c]
            if not term:
                break
        total += term
    return total


def minor_rank(m):
    rows = m.tolist()
    for k in range(min(m.rows, m.cols), 0, -1):
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                if _det([[rows[r][c] for c in cs] for r in rs]):
                    return k
    return 0


def matrices(max_rows=6, max_cols=6, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                           min_size=r, max_size=r).map(lambda g: Matrix(g, c))))


def test_minor_oracle_sanity():
    assert minor_rank(M([[1, 2], [2, 4]])) == 1
    assert minor_rank(Matrix.identity(3)) == 3
    assert minor_rank(Matrix.zeros(2, 2)) == 0


@settings(max_examples=200, deadline=None)
@given(matrices(4, 4))
def test_rank_matches_minor_oracle(m):
    assert rank(m) == minor_rank(m)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_nullity_and_annihilation(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    if ker:
        assert rank(Matrix(ker, m.cols)) == len(ker)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    R, r, piv = rref(m)
    assert rref(R) == (R, r, piv)
    assert piv == sorted(set(piv))


@settings(max_examples=150, deadline=None)
@given(matrices(8, 6, -5, 5))
def test_sparse_echelon_matches_bareiss(m):
    ech = SparseEchelon(m.cols)
    for r in range(m.rows):
        ech.add({c: int(x) for c, x in enumerate(m.row(r)) if x})
    R, r, piv = rref(m)
    assert ech.rank == r
    assert sorted(ech.reduced()) == piv
    assert ech.kernel() == kernel_basis(m)


@settings(max_examples=100, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_in_span_definition(a, b):
    basis = [a.row(i) for i in range(a.rows)]
    for r in range(b.rows):
        v = b.row(r)
        if len(v) != a.cols:
            return
        expected = rank(Matrix(basis + [v], a.cols)) == rank(a)
        assert in_span(basis, v) == expected


@settings(max_examples=50, deadline=None)
@given(matrices(3, 3))
def test_commutator_self_zero(m):
    if m.rows == m.cols:
        assert commutator(m, m).is_zero()
