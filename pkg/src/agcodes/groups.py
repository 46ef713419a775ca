"""Finite groups as explicit multiplication tables.

A Group stores an n x n index table with table[i, j] the index of
g_i * g_j.  The table order fixes the ordering G = {g_0, ..., g_{n-1}}
used for the identification of K^n with the group algebra, so it must be
stable across runs; all constructors here are deterministic.

Construction validates the axioms exhaustively (n <= 64 keeps this cheap):
Latin square rows/columns, a two-sided identity, two-sided inverses, and
associativity over all triples.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .errors import ParseError, TooLarge

MAX_ORDER = 64


class Group:
    """Immutable finite group given by its multiplication table."""

    def __init__(self, table, labels=None, name="group"):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ParseError("multiplication table must be square")
        n = table.shape[0]
        if n < 1:
            raise ParseError("group must be nonempty")
        if n > MAX_ORDER:
            raise TooLarge(f"group order {n} exceeds the cap of {MAX_ORDER}")
        if table.min() < 0 or table.max() >= n:
            raise ParseError("table entries must be element indices")
        self.n = n
        self.table = table
        self.name = name
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
        if len(self.labels) != n:
            raise ParseError("need one label per element")
        self._validate()
        self.table.setflags(write=False)

    def _validate(self):
        t = self.table
        n = self.n
        ident = np.arange(n)
        for i in range(n):
            if sorted(t[i]) != list(ident) or sorted(t[:, i]) != list(ident):
                raise ParseError("table is not a Latin square")
        # associativity: t[t[i,j],k] == t[i,t[j,k]] for all triples
        lhs = t[t.reshape(-1), :].reshape(n, n, n)
        rhs = t[:, t.reshape(-1)].reshape(n, n, n)
        if not np.array_equal(lhs, rhs):
            raise ParseError("table is not associative")
        e_candidates = [i for i in range(n) if (t[i] == ident).all() and (t[:, i] == ident).all()]
        if len(e_candidates) != 1:
            raise ParseError("table has no two-sided identity")
        self.identity = e_candidates[0]
        inverse = np.zeros(n, dtype=np.int64)
        for i in range(n):
            js = np.nonzero(t[i] == self.identity)[0]
            if len(js) != 1 or t[js[0], i] != self.identity:
                raise ParseError("element without a two-sided inverse")
            inverse[i] = js[0]
        inverse.setflags(write=False)
        self.inverse = inverse

    def mul(self, i, j):
        return int(self.table[i, j])

    def inv(self, i):
        return int(self.inverse[i])

    def power(self, i, k):
        if k < 0:
            return self.power(self.inv(i), -k)
        acc = self.identity
        for _ in range(k):
            acc = int(self.table[acc, i])
        return acc

    @property
    def is_abelian(self):
        return np.array_equal(self.table, self.table.T)

    def __len__(self):
        return self.n

    def same_group(self, other):
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __repr__(self):
        return f"Group({self.name}, order={self.n})"


def trivial():
    return cyclic(1)


def cyclic(k):
    if k < 1:
        raise ParseError("cyclic group order must be >= 1")
    if k > MAX_ORDER:
        raise TooLarge(f"order {k} exceeds the cap of {MAX_ORDER}")
    idx = np.arange(k)
    table = (idx[:, None] + idx[None, :]) % k
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, k)]
    return Group(table, labels, name=f"cyclic:{k}")


def dihedral(k):
    """Dihedral group of order 2k: elements s^f r^i with s r s = r^-1."""
    if k < 1:
        raise ParseError("dihedral parameter must be >= 1")
    if 2 * k > MAX_ORDER:
        raise TooLarge(f"order {2 * k} exceeds the cap of {MAX_ORDER}")
    n = 2 * k

    def idx(f, i):
        return f * k + i % k

    table = np.zeros((n, n), dtype=np.int64)
    for f1 in range(2):
        for i1 in range(k):
            for f2 in range(2):
                for i2 in range(k):
                    i = (-i1 if f2 else i1) + i2
                    table[idx(f1, i1), idx(f2, i2)] = idx(f1 ^ f2, i)
    labels = []
    for f in range(2):
        for i in range(k):
            rot = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
            if f == 0:
                labels.append(rot or "1")
            else:
                labels.append("s" + ("*" + rot if rot else ""))
    return Group(table, labels, name=f"dihedral:{k}")


def symmetric(k):
    """Symmetric group on k letters, elements in lexicographic tuple order."""
    if k < 1:
        raise ParseError("symmetric parameter must be >= 1")
    import math

    if math.factorial(k) > MAX_ORDER:
        raise TooLarge(f"order {math.factorial(k)} exceeds the cap of {MAX_ORDER}")
    perms = list(permutations(range(k)))
    index = {perm: i for i, perm in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, s in enumerate(perms):
        for j, t in enumerate(perms):
            comp = tuple(s[t[x]] for x in range(k))  # apply t first, then s
            table[i, j] = index[comp]
    labels = ["".join(str(x) for x in perm) for perm in perms]
    return Group(table, labels, name=f"symmetric:{k}")


def direct_product(a, b):
    na, nb = a.n, b.n
    if na * nb > MAX_ORDER:
        raise TooLarge(f"order {na * nb} exceeds the cap of {MAX_ORDER}")
    # index of (x, y) is x * nb + y
    table = np.zeros((na * nb, na * nb), dtype=np.int64)
    for x1 in range(na):
        for y1 in range(nb):
            row = x1 * nb + y1
            table[row] = (a.table[x1][:, None] * nb + b.table[y1][None, :]).reshape(-1)
    labels = [f"({la},{lb})" for la in a.labels for lb in b.labels]
    return Group(table, labels, name=f"product:{a.name}x{b.name}")


def from_table_file(path):
    """Load a whitespace-separated n x n table of 0-based indices."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([int(tok) for tok in line.split()])
    if not rows:
        raise ParseError(f"no table data in {path}")
    return Group(np.array(rows, dtype=np.int64), name=f"table:{path}")


def is_isomorphic(a, b):
    """Brute-force isomorphism search; only for orders <= 8."""
    if a.n != b.n:
        return False
    if a.n > 8:
        raise TooLarge("brute-force isomorphism search is capped at order 8")
    n = a.n
    for perm in permutations(range(n)):
        if perm[a.identity] != b.identity:
            continue
        ok = True
        for i in range(n):
            for j in range(n):
                if perm[a.table[i, j]] != b.table[perm[i], perm[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def parse_group_spec(text):
    """Parse 'cyclic:<k>', 'dihedral:<k>', 'symmetric:<k>', 'trivial',
    'product:<spec>x<spec>', or 'table:<path>'."""
    text = text.strip()
    if text == "trivial":
        return trivial()
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind in ("cyclic", "dihedral", "symmetric"):
        try:
            k = int(rest)
        except ValueError as exc:
            raise ParseError(f"bad group spec: {text!r}") from exc
        return {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}[kind](k)
    if kind == "product":
        parts = rest.split("x")
        if len(parts) < 2:
            raise ParseError(f"product spec needs at least two factors: {text!r}")
        groups = [parse_group_spec(part) for part in parts]
        out = groups[0]
        for g in groups[1:]:
            out = direct_product(out, g)
        return out
    if kind == "table":
        return from_table_file(rest)
    raise ParseError(f"unknown group spec: {text!r}")
