"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.  Matrices are small immutable
row-major grids of scalars.  Two elimination engines live here:

* :func:`rref` -- dense Bareiss (fraction-free) forward elimination over an
  integer copy of the matrix, followed by rational back-substitution.
* :class:`SparseEchelon` -- incremental fraction-free elimination on sparse
  integer rows, used for the tall ``n^3 x n^2`` derivation systems.

Matrix rows and columns are 0-based, except for :meth:`Matrix.unit`, which
follows the usual ``E_ij`` matrix-unit notation and is 1-based.
"""
from fractions import Fraction
from math import gcd, lcm

Scalar = Fraction

__all__ = [
    "Scalar",
    "Matrix",
    "SparseEchelon",
    "parse_scalar",
    "format_scalar",
    "rref",
    "rank",
    "kernel_basis",
    "in_span",
    "mat_mul",
    "commutator",
]


def parse_scalar(text):
    """Parse ``"p/q"`` or ``"p"`` (optional leading ``-`` or U+2212)."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string, got {text!r}")
    s = text.strip().replace("−", "-")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed scalar {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_scalar(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries, cols=None):
        grid = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(grid)
        self.cols = cols
        self._entries = grid

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def unit(cls, n, i, j):
        """The n x n matrix unit E_ij (1-based indices)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"E_{i},{j} out of range for n={n}")
        return cls([[int(r == i - 1 and c == j - 1) for c in range(n)]
                    for r in range(n)], n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, rc):
        r, c = rc
        return self._entries[r][c]

    def row(self, r):
        return self._entries[r]

    def tolist(self):
        return [list(row) for row in self._entries]

    def column(self, c):
        return tuple(row[c] for row in self._entries)

    def transpose(self):
        return Matrix(zip(*self._entries), self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def is_zero(self):
        return all(x == 0 for row in self._entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, self._entries))

    def __add__(self, other):
        _same_shape(self, other)
        return Matrix([[a + b for a, b in zip(r, s)]
                       for r, s in zip(self._entries, other._entries)], self.cols)

    def __sub__(self, other):
        _same_shape(self, other)
        return Matrix([[a - b for a, b in zip(r, s)]
                       for r, s in zip(self._entries, other._entries)], self.cols)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self._entries], self.cols)

    def scale(self, k):
        k = Fraction(k)
        return Matrix([[k * a for a in r] for r in self._entries], self.cols)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def apply(self, v):
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match matrix columns")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0))
                     for row in self._entries)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]"
                         for r in self._entries)
        return f"Matrix([{body}])"


def _same_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def mat_mul(a, b):
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    bt = list(zip(*(b.row(r) for r in range(b.rows)))) if b.rows else [()] * b.cols
    return Matrix([[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt]
                   for row in (a.row(r) for r in range(a.rows))], b.cols)


def commutator(a, b):
    """A*B - B*A."""
    return mat_mul(a, b) - mat_mul(b, a)


def _integer_rows(m):
    """Scale each row by the lcm of its denominators (row space unchanged)."""
    out = []
    for r in range(m.rows):
        row = m.row(r)
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def _bareiss_echelon(a, ncols):
    """In-place fraction-free row echelon form; returns pivot columns."""
    nrows = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                # Sylvester's identity makes this division exact
                row[j] = (piv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rref(m):
    """Reduced row echelon form.

    Returns ``(R, rank, pivot_cols)`` with ``R`` the same shape as ``m`` and
    ``pivot_cols`` 0-based and strictly increasing.
    """
    a = _integer_rows(m)
    pivots = _bareiss_echelon(a, m.cols)
    rows = [[Fraction(x) for x in a[r]] for r in range(len(pivots))]
    # back-substitution, bottom pivot first
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for above in range(r):
            f = rows[above][c]
            if f:
                rows[above] = [x - f * y for x, y in zip(rows[above], rows[r])]
    zero = [Fraction(0)] * m.cols
    rows.extend(list(zero) for _ in range(m.rows - len(pivots)))
    return Matrix(rows, m.cols), len(pivots), pivots


def rank(m):
    return len(_bareiss_echelon(_integer_rows(m), m.cols))


def _kernel_from_rref(rows, pivots, ncols):
    """Kernel vectors of a reduced system given as ``{pivot_col: row}``.

    One vector per free column, in increasing free-column order: the free
    variable is 1, other free variables 0, pivot variables solved.
    """
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc in pivots:
            x = rows[pc].get(f) if isinstance(rows[pc], dict) else rows[pc][f]
            if x:
                v[pc] = -x
        basis.append(tuple(v))
    return basis


def kernel_basis(m):
    """Basis of ``{v : m v = 0}``, ordered by free-column index."""
    r, k, pivots = rref(m)
    rows = {pc: r.row(i) for i, pc in enumerate(pivots)}
    return _kernel_from_rref(rows, pivots, m.cols)


def in_span(basis, v):
    """True iff ``v`` lies in the span of the vectors in ``basis``."""
    v = tuple(Fraction(x) for x in v)
    if not basis:
        return all(x == 0 for x in v)
    for b in basis:
        if len(b) != len(v):
            raise ValueError("vectors of different lengths")
    m = Matrix(list(basis), len(v))
    return rank(m) == rank(Matrix(list(basis) + [v], len(v)))


class SparseEchelon:
    """Incremental fraction-free echelon form of sparse integer rows.

    Rows are ``{column: int}`` dicts.  Each stored pivot row is primitive
    (content 1) with a positive leading coefficient.  :meth:`add` reduces an
    incoming row against the stored pivots and keeps it if anything
    survives.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def full(self):
        return len(self.pivots) == self.ncols

    def add(self, row):
        """Insert one row; returns True iff it raised the rank."""
        row = {c: v for c, v in row.items() if v}
        pivots = self.pivots
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if row[lead] < 0:
                    g = -g
                pivots[lead] = {c: v // g for c, v in row.items()}
                return True
            a = row[lead]
            p = prow[lead]
            g = gcd(a, p)
            fa, fp = p // g, a // g
            new = {c: v * fa for c, v in row.items()}
            for c, v in prow.items():
                x = new.get(c, 0) - fp * v
                if x:
                    new[c] = x
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {c: v // g for c, v in new.items()}
            row = new
        return False

    def reduced(self):
        """Rational RREF rows as ``{pivot_col: {col: Fraction}}``."""
        done = {}
        for pc in sorted(self.pivots, reverse=True):
            src = self.pivots[pc]
            lead = src[pc]
            row = {c: Fraction(v, lead) for c, v in src.items()}
            # clear later pivot columns using already-reduced rows
            for c in sorted(k for k in src if k != pc and k in done):
                f = row.get(c)
                if not f:
                    continue
                for cc, vv in done[c].items():
                    x = row.get(cc, 0) - f * vv
                    if x:
                        row[cc] = x
                    else:
                        row.pop(cc, None)
            done[pc] = row
        return done

    def kernel(self):
        rows = self.reduced()
        return _kernel_from_rref(rows, sorted(rows), self.ncols)
