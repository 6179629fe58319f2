"""Derivation algebras by exact linear algebra.

A linear map ``d`` is stored as an ``n x n`` :class:`~leibder.linalg.Matrix`
``D`` whose column ``l`` holds the coordinates of ``d(e_l)``; entry
``D[k-1, l-1]`` is the coefficient of ``e_k`` in ``d(e_l)``.

The unknowns of the derivation system are the entries of ``D`` flattened
column by column: unknown ``(l-1)*n + (k-1)`` (0-based) is the ``(k, l)``
entry.  The equation for a basis triple ``(i, j, k)`` is the ``e_k``
component of ``d([e_i,e_j]) - [d(e_i),e_j] - [e_i,d(e_j)]``; rows are
ordered lexicographically in ``(i, j, k)``.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .linalg import Matrix, SparseEchelon


@dataclass(frozen=True)
class DerivationBasis:
    n: int
    matrices: tuple

    @property
    def dimension(self):
        return len(self.matrices)

    def vectors(self):
        return [flatten(D) for D in self.matrices]


def flatten(D):
    """Column-major flattening, matching the unknown ordering."""
    n = D.rows
    return tuple(D[k, l] for l in range(n) for k in range(n))


def unflatten(v, n):
    return Matrix([[v[l * n + k] for l in range(n)] for k in range(n)], n)


def _sparse_rows_exact(A):
    """Constraint rows as ``{column: Fraction}`` dicts, straight from the
    structure constants (no scaling, no kernels)."""
    n = A.n
    table = {ij: out for ij, out in A.products()}
    # right[j] lists (m, k, c) with c = c_mj^k; left[i] lists (m, k, c) with c_im^k
    right = {j: [] for j in range(1, n + 1)}
    left = {i: [] for i in range(1, n + 1)}
    for (a, b), out in table.items():
        for k, v in out.items():
            right[b].append((a, k, v))
            left[a].append((b, k, v))
    rows = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            prod = table.get((i, j), {})
            for k in range(1, n + 1):
                row = {}
                for m, v in prod.items():
                    col = (m - 1) * n + (k - 1)
                    row[col] = row.get(col, 0) + v
                for m, kk, v in right[j]:
                    if kk == k:
                        col = (i - 1) * n + (m - 1)
                        row[col] = row.get(col, 0) - v
                for m, kk, v in left[i]:
                    if kk == k:
                        col = (j - 1) * n + (m - 1)
                        row[col] = row.get(col, 0) - v
                rows.append({c: v for c, v in row.items() if v})
    return rows


def derivation_constraint_matrix(A):
    """The ``n^3 x n^2`` exact constraint matrix (kernel = derivations)."""
    n = A.n
    grid = []
    for row in _sparse_rows_exact(A):
        dense = [0] * (n * n)
        for c, v in row.items():
            dense[c] = v
        grid.append(dense)
    return Matrix(grid, n * n)


def _integer_system(A):
    """Integer constraint matrix via the kernels, or None if too large."""
    c, _ = A.integer_tensor()
    if c is None or not _kernels.int64_safe(int(np.abs(c).max(initial=0)), A.n, 1):
        return None
    return _kernels.constraint_matrix(c)


def _integer_rows_exact(A):
    """Integer-scaled sparse rows without the kernels (overflow fallback)."""
    _, scale = A.integer_tensor()
    return [{c: int(v * scale) for c, v in row.items()}
            for row in _sparse_rows_exact(A)]


def _echelon(A, dense=None):
    ech = SparseEchelon(A.n * A.n)
    if dense is None:
        dense = _integer_system(A)
    if dense is None:
        rows = _integer_rows_exact(A)
    else:
        rows = _dense_to_sparse(dense)
    for row in rows:
        if row:
            ech.add(row)
            if ech.full():
                break
    return ech


def _dense_to_sparse(dense):
    nz_rows, nz_cols = np.nonzero(dense)
    vals = dense[nz_rows, nz_cols]
    rows = []
    bounds = np.searchsorted(nz_rows, np.arange(dense.shape[0] + 1))
    for r in range(dense.shape[0]):
        lo, hi = bounds[r], bounds[r + 1]
        if lo == hi:
            continue
        rows.append(dict(zip(nz_cols[lo:hi].tolist(), vals[lo:hi].tolist())))
    return rows


def der_dim(A):
    """dim Der(A), computed from the rank alone."""
    n2 = A.n * A.n
    if n2 == 0:
        return 0
    dense = _integer_system(A)
    # a full rank mod p certifies full rank over Q
    if dense is not None and _kernels.rank_mod_p(dense) == n2:
        return 0
    return n2 - _echelon(A, dense).rank


def der_basis(A):
    """Basis of Der(A): kernel vectors of the constraint system, reshaped."""
    n = A.n
    mats = tuple(unflatten(v, n) for v in _echelon(A).kernel())
    return DerivationBasis(n, mats)


def is_derivation(A, D):
    """True iff ``D`` satisfies the derivation identity on all basis pairs."""
    n = A.n
    if D.shape != (n, n):
        raise ValueError(f"matrix shape {D.shape} does not match algebra dimension {n}")
    v = flatten(D)
    for row in _sparse_rows_exact(A):
        if sum((x * v[c] for c, x in row.items()), Fraction(0)):
            return False
    return True


def right_mul(A, z):
    """Matrix of ``x -> [x, z]``; a derivation whenever A is Leibniz."""
    n = A.n
    if len(z) != n:
        raise ValueError("element length does not match algebra dimension")
    cols = []
    for l in range(1, n + 1):
        col = [Fraction(0)] * n
        for j, zj in enumerate(z, start=1):
            if zj:
                for k, v in A.product(l, j).items():
                    col[k - 1] += zj * v
        cols.append(col)
    return Matrix([[cols[l][k] for l in range(n)] for k in range(n)], n)


def ngf1_analytic_der_basis(n):
    """Closed-form basis v_1, ..., v_(n+1) of Der(NGF_1(n)).

    v_1 = E_11 + sum_{i>=2} (i-1) E_ii;  v_k = E_k1 + sum_{i=k..n} E_{i,i-k+2}
    for 2 <= k <= n-1;  v_n = E_n1;  v_(n+1) = E_n2.
    """
    if n < 3:
        raise ValueError("NGF_1 needs n >= 3")

    def build(entries):
        grid = [[0] * n for _ in range(n)]
        for (r, c), v in entries.items():
            grid[r - 1][c - 1] += v
        return Matrix(grid, n)

    out = [build({(1, 1): 1, **{(i, i): i - 1 for i in range(2, n + 1)}})]
    for k in range(2, n):
        entries = {(k, 1): 1}
        for i in range(k, n + 1):
            entries[(i, i - k + 2)] = entries.get((i, i - k + 2), 0) + 1
        out.append(build(entries))
    out.append(build({(n, 1): 1}))
    out.append(build({(n, 2): 1}))
    return out
