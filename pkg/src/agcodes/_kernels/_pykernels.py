"""Numpy implementations of the hot kernels.

Matrices are int64 arrays with entries already reduced mod p.  These are
the reference semantics; the compiled backend must match them exactly.
"""

from __future__ import annotations

import numpy as np


def _inverse_table(p):
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def rref(mat, p):
    """Reduced row echelon form over GF(p).

    Returns (R, pivots): R has zero rows dropped, pivot entries are 1 and
    pivot columns are cleared above and below.  R is the canonical form of
    the row space, so two row spaces are equal iff their rrefs are equal.
    """
    a = (np.array(mat, dtype=np.int64) % p).reshape(len(mat), -1).copy()
    rows, cols = a.shape
    inv = _inverse_table(p)
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
        a[r] = (a[r] * inv[a[r, c]]) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], np.array(pivots, dtype=np.int64)


def min_block_weight(rows, p, block, chunk=8192):
    """Minimum block weight over the nonzero GF(p)-span of `rows`.

    Each codeword is split into consecutive blocks of length `block`; its
    weight is the number of blocks containing a nonzero entry.  Enumerates
    all p**len(rows) combinations, so callers must cap the size first.
    """
    rows = np.asarray(rows, dtype=np.int64) % p
    r, length = rows.shape
    if length % block != 0:
        raise ValueError("row length is not a multiple of the block size")
    if r == 0:
        raise ValueError("empty basis has no nonzero codewords")
    nblocks = length // block
    total = p**r
    powers = p ** np.arange(r, dtype=np.int64)
    best = nblocks + 1
    for start in range(1, total, chunk):
        stop = min(start + chunk, total)
        ts = np.arange(start, stop, dtype=np.int64)
        coeffs = (ts[:, None] // powers[None, :]) % p
        words = (coeffs @ rows) % p
        blocks = words.reshape(len(ts), nblocks, block)
        wt = (blocks != 0).any(axis=2).sum(axis=1)
        m = int(wt.min())
        if m < best:
            best = m
            if best == 1:
                break
    return best


def scan_idempotents(table, support, pool, exp, log, digits, powp, p, chunk=4096):
    """Scan for idempotents of the group algebra.

    Candidates assign coefficient codes from `pool` to the group positions
    in `support` (zero elsewhere); all len(pool)**len(support) assignments
    are tried in odometer order (support[0] the most significant digit,
    pool order as given).  Field multiplication uses exp/log tables,
    addition is digitwise mod p via the `digits`/`powp` tables.

    Returns an (k, n) int64 array of the coefficient vectors e with
    e * e == e, in scan order.
    """
    table = np.asarray(table, dtype=np.int64)
    support = np.asarray(support, dtype=np.int64)
    pool = np.asarray(pool, dtype=np.int64)
    exp = np.asarray(exp, dtype=np.int64)
    log = np.asarray(log, dtype=np.int64)
    digits = np.asarray(digits, dtype=np.int64)
    powp = np.asarray(powp, dtype=np.int64)
    n = table.shape[0]
    s = len(support)
    npool = len(pool)
    qm1 = len(exp)
    d = digits.shape[1]
    total = npool**s
    targets = table[np.ix_(support, support)]
    found = []
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        ts = np.arange(start, stop, dtype=np.int64)
        sel = np.zeros((len(ts), s), dtype=np.int64)
        rem = ts.copy()
        for i in range(s - 1, -1, -1):
            sel[:, i] = rem % npool
            rem //= npool
        cand = pool[sel]
        acc = np.zeros((len(ts), n, d), dtype=np.int64)
        for i in range(s):
            ai = cand[:, i]
            for j in range(s):
                bj = cand[:, j]
                prod = np.zeros(len(ts), dtype=np.int64)
                nz = (ai != 0) & (bj != 0)
                if nz.any():
                    prod[nz] = exp[(log[ai[nz]] + log[bj[nz]]) % qm1]
                acc[:, targets[i, j], :] += digits[prod]
        sq = (acc % p) @ powp
        full = np.zeros((len(ts), n), dtype=np.int64)
        full[:, support] = cand
        hits = np.nonzero((sq == full).all(axis=1))[0]
        for h in hits:
            found.append(full[h])
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(found, dtype=np.int64)
