"""Linear algebra over GF(p) and over the subfield F of a field tower.

Prime-field routines work on int64 numpy arrays reduced mod p and delegate
row reduction to the kernel backend.  Subfield routines ("fm_*") operate on
matrices whose entries are field codes lying in F, using a FieldTower for
the scalar arithmetic; they back the canonical-basis Gram matrices and
operator matrices, which live over F rather than over the prime field.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import DivisionByZero

# ---------------------------------------------------------------------------
# prime field GF(p)


def rref(mat, p):
    """Canonical reduced row echelon form; returns (rows, pivot columns)."""
    mat = np.asarray(mat, dtype=np.int64)
    if mat.size == 0:
        cols = mat.shape[1] if mat.ndim == 2 else 0
        return np.zeros((0, cols), dtype=np.int64), np.zeros(0, dtype=np.int64)
    return _kernels.rref(mat, p)


def rank(mat, p):
    return len(rref(mat, p)[1])


def nullspace(mat, p):
    """Rows form a basis of {v : mat @ v == 0 (mod p)}, in rref form."""
    mat = np.asarray(mat, dtype=np.int64) % p
    m, n = mat.shape
    red, pivots = rref(mat, p)
    pivot_set = set(int(c) for c in pivots)
    free = [c for c in range(n) if c not in pivot_set]
    if not free:
        return np.zeros((0, n), dtype=np.int64)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[idx, fc] = 1
        for r, pc in enumerate(pivots):
            basis[idx, pc] = (-int(red[r, fc])) % p
    return rref(basis, p)[0]


def left_nullspace(mat, p):
    """Rows v with v @ mat == 0 (mod p)."""
    return nullspace(np.asarray(mat, dtype=np.int64).T, p)


def inv_matrix(mat, p):
    """Inverse of a square matrix over GF(p); raises if singular."""
    mat = np.asarray(mat, dtype=np.int64) % p
    n = mat.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    aug = np.concatenate([mat, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots = rref(aug, p)
    if len(pivots) < n or int(pivots[n - 1]) >= n:
        raise DivisionByZero("matrix is singular over GF(p)")
    return red[:, n:]


def in_row_space(red, pivots, v, p):
    """Membership of v in the row space given by an rref basis."""
    v = np.asarray(v, dtype=np.int64) % p
    if len(red) == 0:
        return not v.any()
    coeffs = v[np.asarray(pivots, dtype=np.int64)]
    return not ((coeffs @ red - v) % p).any()


def coords_in_row_space(red, pivots, v, p):
    """Coordinates of v in the rref basis rows; v must lie in the space."""
    v = np.asarray(v, dtype=np.int64) % p
    coeffs = v[np.asarray(pivots, dtype=np.int64)] if len(red) else np.zeros(0, dtype=np.int64)
    if ((coeffs @ red - v) % p).any() if len(red) else v.any():
        raise ValueError("vector not in the row space")
    return coeffs


def intersect_row_spaces(a, b, p):
    """rref basis of the intersection of two row spaces."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if len(a) == 0 or len(b) == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else b.shape[1]), dtype=np.int64)
    stacked = np.concatenate([a, b], axis=0)
    combos = left_nullspace(stacked, p)
    if len(combos) == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    vectors = (combos[:, : len(a)] @ a) % p
    return rref(vectors, p)[0]


def sum_row_spaces(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if len(a) == 0:
        return rref(b, p)[0] if len(b) else b
    if len(b) == 0:
        return rref(a, p)[0]
    return rref(np.concatenate([a, b], axis=0), p)[0]


# ---------------------------------------------------------------------------
# matrices over the subfield F of a tower (entries are field codes in F)


def fm_mul(tw, a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    prods = tw.vmul(a[:, :, None], b[None, :, :])
    return tw.vsum(prods, axis=1)


def fm_eye(tw, k):
    m = np.zeros((k, k), dtype=np.int64)
    np.fill_diagonal(m, 1)
    return m


def fm_rref(tw, mat):
    """Gauss-Jordan over F; returns (rows, pivots) with zero rows dropped."""
    a = np.array(mat, dtype=np.int64)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        k = r + hits[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = tw.vscale(tw.inv(int(a[r, c])), a[r])
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        for i in other:
            a[i] = tw.vsub(a[i], tw.vscale(int(a[i, c]), a[r]))
        pivots.append(c)
        r += 1
    return a[:r], np.array(pivots, dtype=np.int64)


def fm_rank(tw, mat):
    return len(fm_rref(tw, mat)[1])


def fm_inv(tw, mat):
    mat = np.asarray(mat, dtype=np.int64)
    n = mat.shape[0]
    aug = np.concatenate([mat, fm_eye(tw, n)], axis=1)
    red, pivots = fm_rref(tw, aug)
    if len(pivots) < n or int(pivots[n - 1]) >= n:
        raise DivisionByZero("matrix is singular over F")
    return red[:, n:]


def fm_nullspace(tw, mat):
    """Rows v (over F) with mat @ v == 0."""
    mat = np.asarray(mat, dtype=np.int64)
    m, n = mat.shape
    red, pivots = fm_rref(tw, mat)
    pivot_set = set(int(c) for c in pivots)
    free = [c for c in range(n) if c not in pivot_set]
    if not free:
        return np.zeros((0, n), dtype=np.int64)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[idx, fc] = 1
        for r, pc in enumerate(pivots):
            basis[idx, pc] = tw.neg(int(red[r, fc]))
    return basis
