# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

Semantics must match _pykernels exactly (same outputs, same ordering);
the parity test suite enforces this on randomized inputs.
"""

import numpy as np


def rref(mat, long p):
    a = (np.array(mat, dtype=np.int64) % p).reshape(len(mat), -1).copy()
    cdef long[:, ::1] A = a
    cdef long rows = A.shape[0]
    cdef long cols = A.shape[1]
    inv_np = np.zeros(p, dtype=np.int64)
    cdef long[::1] inv = inv_np
    cdef long x
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    pivots = []
    cdef long r = 0, c, k, i, j, piv, factor, scale
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                x = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = x
        scale = inv[A[r, c]]
        if scale != 1:
            for j in range(cols):
                A[r, j] = (A[r, j] * scale) % p
        for i in range(rows):
            if i != r and A[i, c] != 0:
                # add (p - factor) * row to keep operands non-negative for C %
                factor = p - A[i, c]
                for j in range(cols):
                    A[i, j] = (A[i, j] + factor * A[r, j]) % p
        pivots.append(c)
        r += 1
    return a[:r], np.array(pivots, dtype=np.int64)


def min_block_weight(rows_in, long p, long block):
    rows_arr = np.ascontiguousarray(np.asarray(rows_in, dtype=np.int64) % p)
    cdef const long[:, ::1] rows = rows_arr
    cdef long r = rows.shape[0]
    cdef long length = rows.shape[1]
    if length % block != 0:
        raise ValueError("row length is not a multiple of the block size")
    if r == 0:
        raise ValueError("empty basis has no nonzero codewords")
    cdef long nblocks = length // block
    word_np = np.zeros(length, dtype=np.int64)
    counter_np = np.zeros(r, dtype=np.int64)
    cdef long[::1] word = word_np
    cdef long[::1] counter = counter_np
    cdef long best = nblocks + 1
    cdef unsigned long long total = 1
    cdef long i, j, b, wt
    cdef bint nonzero
    for i in range(r):
        total *= <unsigned long long> p
    cdef unsigned long long t
    for t in range(1, total):
        i = 0
        while counter[i] == p - 1:
            counter[i] = 0
            # stepping a digit from p-1 to 0 changes the word by +row (mod p)
            for j in range(length):
                word[j] = (word[j] + rows[i, j]) % p
            i += 1
        counter[i] += 1
        for j in range(length):
            word[j] = (word[j] + rows[i, j]) % p
        wt = 0
        for b in range(nblocks):
            nonzero = False
            for j in range(b * block, (b + 1) * block):
                if word[j] != 0:
                    nonzero = True
                    break
            if nonzero:
                wt += 1
        if wt < best:
            best = wt
            if best == 1:
                break
    return best


def scan_idempotents(table, support, pool, exp, log, digits, powp, long p):
    table_arr = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
    support_arr = np.ascontiguousarray(np.asarray(support, dtype=np.int64))
    pool_arr = np.ascontiguousarray(np.asarray(pool, dtype=np.int64))
    exp_arr = np.ascontiguousarray(np.asarray(exp, dtype=np.int64))
    log_arr = np.ascontiguousarray(np.asarray(log, dtype=np.int64))
    digits_arr = np.ascontiguousarray(np.asarray(digits, dtype=np.int64))
    powp_arr = np.ascontiguousarray(np.asarray(powp, dtype=np.int64))
    cdef const long[:, ::1] T = table_arr
    cdef const long[::1] sup = support_arr
    cdef const long[::1] pl = pool_arr
    cdef const long[::1] ex = exp_arr
    cdef const long[::1] lg = log_arr
    cdef const long[:, ::1] dig = digits_arr
    cdef const long[::1] pw = powp_arr
    cdef long n = T.shape[0]
    cdef long s = sup.shape[0]
    cdef long npool = pl.shape[0]
    cdef long qm1 = ex.shape[0]
    cdef long d = dig.shape[1]
    cdef unsigned long long total = 1
    cdef long i, j, k, tt, ai, bj, la, prod, code
    for i in range(s):
        total *= <unsigned long long> npool
    targets_np = np.zeros((max(s, 1), max(s, 1)), dtype=np.int64)
    cdef long[:, ::1] targets = targets_np
    for i in range(s):
        for j in range(s):
            targets[i, j] = T[sup[i], sup[j]]
    counter_np = np.zeros(max(s, 1), dtype=np.int64)
    full_np = np.zeros(n, dtype=np.int64)
    acc_np = np.zeros((n, max(d, 1)), dtype=np.int64)
    cdef long[::1] counter = counter_np
    cdef long[::1] full = full_np
    cdef long[:, ::1] acc = acc_np
    found = []
    cdef unsigned long long t
    cdef bint hit
    for t in range(total):
        if t > 0:
            # odometer with support[0] the most significant digit
            i = s - 1
            while counter[i] == npool - 1:
                counter[i] = 0
                i -= 1
            counter[i] += 1
        for i in range(s):
            full[sup[i]] = pl[counter[i]]
        for j in range(n):
            for tt in range(d):
                acc[j, tt] = 0
        for i in range(s):
            ai = full[sup[i]]
            if ai == 0:
                continue
            la = lg[ai]
            for j in range(s):
                bj = full[sup[j]]
                if bj == 0:
                    continue
                prod = ex[(la + lg[bj]) % qm1]
                k = targets[i, j]
                for tt in range(d):
                    acc[k, tt] += dig[prod, tt]
        hit = True
        for j in range(n):
            code = 0
            for tt in range(d):
                code += (acc[j, tt] % p) * pw[tt]
            if code != full[j]:
                hit = False
                break
        if hit:
            found.append(full_np.copy())
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(found, dtype=np.int64)
