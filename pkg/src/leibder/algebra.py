"""Finite-dimensional algebras given by structure constants.

An :class:`Algebra` of dimension ``n`` stores the nonzero structure constants
``c[(i, j)][k]`` with ``[e_i, e_j] = sum_k c_ij^k e_k``.  Basis indices are
1-based (``e_1 .. e_n``); products that are not listed are zero.  Elements
are plain tuples of ``n`` Fractions.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple

import numpy as np

from . import _kernels
from .linalg import Matrix, rref


class Algebra:
    """Immutable structure-constant algebra."""

    __slots__ = ("n", "_table")

    def __init__(self, n, products=None):
        if n < 0:
            raise ValueError("dimension must be non-negative")
        table = {}
        for (i, j), out in (products or {}).items():
            _check_index(i, n)
            _check_index(j, n)
            terms = {}
            for k, v in out.items():
                _check_index(k, n)
                v = Fraction(v)
                if v:
                    terms[k] = v
            if terms:
                table[(i, j)] = dict(sorted(terms.items()))
        self.n = n
        self._table = dict(sorted(table.items()))

    def product(self, i, j):
        """``{k: c_ij^k}`` for the nonzero coefficients of [e_i, e_j]."""
        return dict(self._table.get((i, j), {}))

    def coeff(self, i, j, k):
        return self._table.get((i, j), {}).get(k, Fraction(0))

    def products(self):
        """Sorted ``((i, j), {k: c})`` pairs for every nonzero product."""
        return [(ij, dict(out)) for ij, out in self._table.items()]

    def nnz(self):
        return sum(len(out) for out in self._table.values())

    def basis(self, i):
        return basis_vector(self.n, i)

    def is_antisymmetric(self):
        keys = set(self._table) | {(j, i) for i, j in self._table}
        for i, j in keys:
            a, b = self._table.get((i, j), {}), self._table.get((j, i), {})
            for k in set(a) | set(b):
                if a.get(k, 0) != -b.get(k, 0):
                    return False
        return True

    def integer_tensor(self):
        """Dense 0-based integer tensor proportional to the structure
        constants, with the scale factor used.

        Derivations and the Leibniz identity are invariant under rescaling
        all structure constants, so the integer form is enough for both.
        Returns ``(None, scale)`` when entries are too large for int64
        kernels.
        """
        scale = 1
        for out in self._table.values():
            for v in out.values():
                scale = lcm(scale, v.denominator)
        ints = {(i, j, k): int(v * scale)
                for (i, j), out in self._table.items() for k, v in out.items()}
        biggest = max((abs(v) for v in ints.values()), default=0)
        if not _kernels.int64_safe(biggest, self.n, 2):
            return None, scale
        c = np.zeros((self.n, self.n, self.n), dtype=np.int64)
        for (i, j, k), v in ints.items():
            c[i - 1, j - 1, k - 1] = v
        return c, scale

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.n == other.n and self._table == other._table

    def __hash__(self):
        return hash((self.n, tuple((ij, tuple(out.items()))
                                   for ij, out in self._table.items())))

    def __repr__(self):
        return f"Algebra(n={self.n}, products={self.nnz()})"


def _check_index(i, n):
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= n:
        raise IndexError(f"basis index {i!r} outside 1..{n}")


def basis_vector(n, i):
    _check_index(i, n)
    return tuple(Fraction(int(k == i)) for k in range(1, n + 1))


def zero_vector(n):
    return (Fraction(0),) * n


def _check_len(A, x):
    if len(x) != A.n:
        raise ValueError(f"element has length {len(x)}, algebra dimension is {A.n}")


def bracket(A, x, y):
    """Bilinear extension of the structure constants to elements."""
    _check_len(A, x)
    _check_len(A, y)
    out = [Fraction(0)] * A.n
    for (i, j), terms in A._table.items():
        a = x[i - 1]
        if not a:
            continue
        b = y[j - 1]
        if not b:
            continue
        ab = a * b
        for k, v in terms.items():
            out[k - 1] += ab * v
    return tuple(out)


def _basis_bracket(A, i, j):
    out = [Fraction(0)] * A.n
    for k, v in A._table.get((i, j), {}).items():
        out[k - 1] = v
    return tuple(out)


def leibniz_defect(A, i, j, k):
    """``[e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]``."""
    ei = A.basis(i)
    ej = A.basis(j)
    ek = A.basis(k)
    lhs = bracket(A, ei, _basis_bracket(A, j, k))
    r1 = bracket(A, _basis_bracket(A, i, j), ek)
    r2 = bracket(A, _basis_bracket(A, i, k), ej)
    return tuple(a - b + c for a, b, c in zip(lhs, r1, r2))


class LeibnizWitness(NamedTuple):
    i: int
    j: int
    k: int
    defect: tuple


def _first_failure_exact(A):
    n = A.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                d = leibniz_defect(A, i, j, k)
                if any(d):
                    return i, j, k
    return None


def check_leibniz(A):
    """None when the Leibniz identity holds on every basis triple, else the
    lexicographically first failing triple with its defect."""
    c, _ = A.integer_tensor()
    if c is None:
        hit = _first_failure_exact(A)
    else:
        hit = _kernels.first_leibniz_failure(c)
        if hit is not None:
            hit = tuple(x + 1 for x in hit)
    if hit is None:
        return None
    return LeibnizWitness(*hit, leibniz_defect(A, *hit))


def is_leibniz(A):
    return check_leibniz(A) is None


def is_lie(A):
    """Antisymmetric and Leibniz (together these give the Jacobi identity)."""
    return A.is_antisymmetric() and is_leibniz(A)


@dataclass(frozen=True)
class Subspace:
    """Subspace of the coordinate space, held by its canonical RREF basis."""

    ambient: int
    basis: tuple

    @classmethod
    def span(cls, ambient, vectors):
        vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        if not vectors:
            return cls(ambient, ())
        r, k, _ = rref(Matrix(vectors, ambient))
        return cls(ambient, tuple(r.row(i) for i in range(k)))

    @classmethod
    def whole(cls, ambient):
        return cls.span(ambient, [basis_vector(ambient, i) for i in range(1, ambient + 1)])

    @property
    def dim(self):
        return len(self.basis)


def product_space(A, S, T):
    """[S, T], spanned by brackets of the two canonical bases."""
    return Subspace.span(A.n, [bracket(A, s, t) for s in S.basis for t in T.basis])


def lower_central_series(A):
    """``[L^1, L^2, ...]`` ending at the zero subspace or the first repeat."""
    L = Subspace.whole(A.n)
    series = [L]
    cur = L
    while cur.dim > 0:
        nxt = product_space(A, cur, L)
        series.append(nxt)
        if nxt.dim == cur.dim:
            break
        cur = nxt
    return series


def series_dims(A):
    return [s.dim for s in lower_central_series(A)]


def is_nilpotent(A):
    return lower_central_series(A)[-1].dim == 0


def is_filiform(A):
    n = A.n
    dims = series_dims(A)
    if dims[-1] != 0:
        return False
    # dims[i - 1] is dim L^i; past the end the series is zero
    for i in range(2, n + 1):
        d = dims[i - 1] if i - 1 < len(dims) else 0
        if d != n - i:
            return False
    return True


def gradation_dims(A):
    """Dimensions of the quotients L^i / L^(i+1) of a nilpotent algebra."""
    dims = series_dims(A)
    if dims[-1] != 0:
        raise ValueError("gradation_dims needs a nilpotent algebra")
    return [a - b for a, b in zip(dims, dims[1:])]
