"""Integer kernels for the hot loops.

Every kernel exists twice: a numba ``@njit`` loop version and a vectorised
pure-numpy version.  The numba path is used when numba imports and the
environment variable ``LEIBDER_NO_NUMBA`` is unset (or ``0``); set it to ``1``
to force the numpy path.  Both paths take and return ``int64`` arrays and
must agree exactly; callers are responsible for keeping inputs inside the
int64-safe range (see :func:`int64_safe`).

Tensors are dense ``(n, n, n)`` arrays with ``c[i, j, k]`` the coefficient of
``e_k`` in ``[e_i, e_j]`` (0-based here).
"""
import os

import numpy as np

#: prime modulus for :func:`rank_mod_p`; products of residues fit in int64
PRIME = 2147483647

_FLAG = os.environ.get("LEIBDER_NO_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def backend():
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if HAVE_NUMBA else "numpy"


def int64_safe(max_abs, n, degree):
    """True when sums of ``3 * n`` products of ``degree`` entries bounded by
    ``max_abs`` stay below 2**62."""
    return 3 * max(n, 1) * max_abs ** degree < 2 ** 62


# ---------------------------------------------------------------------------
# numpy implementations


def _constraint_matrix_np(c):
    n = c.shape[0]
    eye = np.eye(n, dtype=np.int64)
    # unknown index (l, p) -> l * n + p holds d_p^l (column-major in D)
    # row (i, j, k):  sum_m c_ij^m d_k^m - sum_m d_m^i c_mj^k - sum_m d_m^j c_im^k
    t1 = np.einsum("ijl,kp->ijklp", c, eye)
    t2 = np.einsum("li,pjk->ijklp", eye, c)
    t3 = np.einsum("lj,ipk->ijklp", eye, c)
    return (t1 - t2 - t3).reshape(n ** 3, n ** 2)


def _leibniz_defects_np(c):
    # defect[i, j, k] = [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]
    left = np.einsum("jkm,imt->ijkt", c, c)
    mid = np.einsum("ijm,mkt->ijkt", c, c)
    right = np.einsum("ikm,mjt->ijkt", c, c)
    return left - mid + right


def _first_leibniz_failure_np(c):
    d = _leibniz_defects_np(c)
    bad = np.argwhere(np.any(d != 0, axis=3))
    if len(bad) == 0:
        return np.array([-1, -1, -1], dtype=np.int64)
    return bad[0].astype(np.int64)


def _rank_mod_p_np(a, p):
    a = np.mod(a, p).astype(np.int64)
    rows, cols = a.shape
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, col].copy()
        hit = np.nonzero(below)[0]
        if len(hit):
            idx = r + 1 + hit
            a[idx] = (a[idx] - (below[hit, None] * a[r][None, :]) % p) % p
        r += 1
    return r


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def _constraint_matrix_nb(c):
        n = c.shape[0]
        out = np.zeros((n ** 3, n ** 2), dtype=np.int64)
        row = 0
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for m in range(n):
                        v = c[i, j, m]
                        if v != 0:
                            out[row, m * n + k] += v
                        v = c[m, j, k]
                        if v != 0:
                            out[row, i * n + m] -= v
                        v = c[i, m, k]
                        if v != 0:
                            out[row, j * n + m] -= v
                    row += 1
        return out

    @njit(cache=True)
    def _first_leibniz_failure_nb(c):
        n = c.shape[0]
        res = np.full(3, -1, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for t in range(n):
                        s = 0
                        for m in range(n):
                            s += c[j, k, m] * c[i, m, t]
                            s -= c[i, j, m] * c[m, k, t]
                            s += c[i, k, m] * c[m, j, t]
                        if s != 0:
                            res[0] = i
                            res[1] = j
                            res[2] = k
                            return res
        return res

    @njit(cache=True)
    def _rank_mod_p_nb(a0, p):
        rows, cols = a0.shape
        a = np.empty((rows, cols), dtype=np.int64)
        for i in range(rows):
            for j in range(cols):
                v = a0[i, j] % p
                a[i, j] = v + p if v < 0 else v
        r = 0
        for col in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            # modular inverse by exponentiation
            inv = 1
            base = a[r, col]
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for j in range(col, cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, rows):
                f = a[i, col]
                if f != 0:
                    for j in range(col, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r


# ---------------------------------------------------------------------------
# dispatch


def constraint_matrix(c):
    """Dense int64 derivation constraint matrix of an integer tensor."""
    c = np.ascontiguousarray(c, dtype=np.int64)
    if HAVE_NUMBA:
        return _constraint_matrix_nb(c)
    return _constraint_matrix_np(c)


def first_leibniz_failure(c):
    """0-based ``(i, j, k)`` of the first triple breaking the Leibniz
    identity in lexicographic order, or ``None``."""
    c = np.ascontiguousarray(c, dtype=np.int64)
    if HAVE_NUMBA:
        res = _first_leibniz_failure_nb(c)
    else:
        res = _first_leibniz_failure_np(c)
    if res[0] < 0:
        return None
    return tuple(int(x) for x in res)


def rank_mod_p(a, p=PRIME):
    """Rank of an integer matrix over GF(p).

    This never exceeds the rank over the rationals, so it is a certified
    lower bound.
    """
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    if HAVE_NUMBA:
        return int(_rank_mod_p_nb(a, p))
    return int(_rank_mod_p_np(a, p))
