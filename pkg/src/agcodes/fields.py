"""Exact arithmetic in the tower F = GF(q) inside K = GF(q^m).

Elements of K are integer codes: the code of sum(c_i * alpha^i) is
sum(c_i * p^i), where alpha is the residue class of x modulo the defining
polynomial and p is the characteristic.  For |K| <= 2^16 exp/log and
digit tables are precomputed and all bulk operations are table lookups;
larger fields (up to the 2^24 cap) fall back to schoolbook polynomial
arithmetic.

The default modulus is the Conway polynomial, computed on demand, so the
representation of K is canonical across runs.  A user-supplied modulus is
accepted after an irreducibility check by trial division.
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import (
    ConsistencyError,
    DivisionByZero,
    LengthMismatch,
    OddDegree,
    ParseError,
    ReducibleModulus,
    TooLarge,
)

MAX_FIELD_SIZE = 2**24
TABLE_LIMIT = 2**16


# ---------------------------------------------------------------------------
# integer and polynomial helpers (polynomials: tuples over GF(p), constant first)


def factorize(n):
    """Prime factorization by trial division; fine for n < 2^50 at desk scale."""
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def prime_power(q):
    """Split q = p^a with p prime; ParseError if q is not a prime power."""
    if q < 2:
        raise ParseError(f"field order must be at least 2, got {q}")
    factors = factorize(q)
    if len(factors) != 1:
        raise ParseError(f"{q} is not a prime power")
    ((p, a),) = factors.items()
    return p, a


def _pol_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pol_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pol_trim(out)


def _pol_mod(a, mod, p):
    """Remainder of a modulo the monic polynomial mod."""
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _pol_trim(a[:dm])


def _pol_mulmod(a, b, mod, p):
    return _pol_mod(_pol_mul(a, b, p), mod, p)


def _pol_addc(a, c, p):
    c %= p
    if not a:
        return (c,) if c else ()
    out = list(a)
    out[0] = (out[0] + c) % p
    return _pol_trim(out)


def _pol_powmod(a, e, mod, p):
    result = (1,)
    base = _pol_mod(a, mod, p)
    while e:
        if e & 1:
            result = _pol_mulmod(result, base, mod, p)
        base = _pol_mulmod(base, base, mod, p)
        e >>= 1
    return result


def is_irreducible(poly, p):
    """Trial division of a monic polynomial by all monics of degree <= deg/2."""
    poly = tuple(c % p for c in poly)
    deg = len(poly) - 1
    if deg < 1 or poly[-1] != 1:
        return False
    if deg == 1:
        return True
    if poly[0] == 0:
        return False
    for k in range(1, deg // 2 + 1):
        for idx in range(p**k):
            divisor = []
            t = idx
            for _ in range(k):
                divisor.append(t % p)
                t //= p
            divisor.append(1)
            if not _pol_mod(poly, tuple(divisor), p):
                return False
    return True


def _is_primitive(poly, p):
    """Is x a generator of the multiplicative group of GF(p)[x]/(poly)?

    Assumes poly is monic irreducible with nonzero constant term.
    """
    deg = len(poly) - 1
    order = p**deg - 1
    if order == 1:
        return True
    if _pol_powmod((0, 1), order, poly, p) != (1,):
        return False
    for r in factorize(order):
        if _pol_powmod((0, 1), order // r, poly, p) == (1,):
            return False
    return True


@lru_cache(maxsize=None)
def conway_polynomial(p, n):
    """Conway polynomial of degree n over GF(p), constant term first.

    The lexicographically least monic primitive polynomial, under the word
    order w_i = (-1)^(n-i) a_i read from a_{n-1} down to a_0, whose root
    powers down compatibly to the Conway polynomials of all proper
    subfields.
    """
    if p**n > MAX_FIELD_SIZE:
        raise TooLarge(f"no Conway polynomial support beyond 2^24 (got {p}^{n})")
    divisor_conditions = []
    for dd in range(1, n):
        if n % dd == 0:
            sub = conway_polynomial(p, dd)
            divisor_conditions.append((sub, (p**n - 1) // (p**dd - 1)))

    def words():
        total = p**n
        for idx in range(total):
            w = []
            t = idx
            for _ in range(n):
                w.append(t % p)
                t //= p
            yield tuple(reversed(w))  # w_{n-1} first: lexicographic order

    for w in words():
        coeffs = [0] * (n + 1)
        coeffs[n] = 1
        for i in range(n):
            sign = -1 if (n - i) % 2 else 1
            coeffs[i] = (sign * w[n - 1 - i]) % p
        f = tuple(coeffs)
        if f[0] == 0:
            continue
        if not is_irreducible(f, p):
            continue
        if not _is_primitive(f, p):
            continue
        ok = True
        for sub, t in divisor_conditions:
            y = _pol_powmod((0, 1), t, f, p)
            acc = ()
            for c in reversed(sub):
                acc = _pol_mulmod(acc, y, f, p)
                acc = _pol_addc(acc, c, p)
            if acc:
                ok = False
                break
        if ok:
            return f
    raise ConsistencyError(f"no Conway polynomial found for p={p}, n={n}")  # pragma: no cover


# ---------------------------------------------------------------------------


class FieldTower:
    """The pair F = GF(q) inside K = GF(q^m), with its canonical structure.

    Immutable after construction; every operation is a pure function of the
    arguments, so instances are safe to share across threads.
    """

    def __init__(self, q, m, modulus=None):
        p, a = prime_power(q)
        if m < 1:
            raise ParseError("extension degree m must be >= 1")
        self.q = q
        self.m = m
        self.p = p
        self.a = a
        self.degree = a * m
        self.order = p**self.degree
        if self.order > MAX_FIELD_SIZE:
            raise TooLarge(f"|K| = {p}^{self.degree} exceeds the 2^24 cap")

        if modulus is None:
            modulus = conway_polynomial(p, self.degree)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != self.degree + 1 or modulus[-1] != 1:
            raise ParseError(
                f"modulus must be monic of degree {self.degree} (constant term first)"
            )
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
        self.modulus = modulus

        self._powp = p ** np.arange(self.degree, dtype=np.int64)
        self._build_tables()
        self._build_subfield()
        self._build_basis_maps()

    # -- construction helpers ------------------------------------------------

    def _mul_schoolbook(self, x, y):
        c = _pol_mulmod(self._int_to_pol(x), self._int_to_pol(y), self.modulus, self.p)
        return self._pol_to_int(c)

    def _int_to_pol(self, x):
        out = []
        while x:
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def _pol_to_int(self, c):
        x = 0
        for coef in reversed(c):
            x = x * self.p + coef
        return x

    def _build_tables(self):
        p, d, Q = self.p, self.degree, self.order
        self.has_tables = Q <= TABLE_LIMIT
        if not self.has_tables:
            self._exp = self._log = None
            self._digits_table = None
            self._frobq = self._trace_table = self._conj_table = self._inf_table = None
            self.generator = self._find_generator_schoolbook()
            return
        codes = np.arange(Q, dtype=np.int64)
        self._digits_table = (codes[:, None] // self._powp[None, :]) % p

        gen = self._find_generator_schoolbook()
        self.generator = gen
        exp = np.zeros(max(Q - 1, 1), dtype=np.int64)
        log = np.full(Q, -1, dtype=np.int64)
        e = 1
        for k in range(max(Q - 1, 1)):
            exp[k] = e
            log[e] = k
            e = self._mul_schoolbook(e, gen)
        if Q > 2 and (e != 1 or (log[1:] < 0).any()):
            raise ConsistencyError("generator search produced a non-primitive element")
        self._exp = exp
        self._log = log

        qm1 = max(Q - 1, 1)
        frobq = np.zeros(Q, dtype=np.int64)
        nz = codes[1:]
        frobq[nz] = exp[(log[nz] * self.q) % qm1]
        self._frobq = frobq

        trace = codes.copy()
        acc = codes.copy()
        for _ in range(self.m - 1):
            acc = frobq[acc]
            trace = self._vadd_raw(trace, acc)
        self._trace_table = trace

        if self.m % 2 == 0:
            conj = np.zeros(Q, dtype=np.int64)
            shift = self.q ** (self.m // 2)
            conj[nz] = exp[(log[nz] * shift) % qm1]
            self._conj_table = conj
        else:
            self._conj_table = None

        self._inf_table = frobq == codes

    def _find_generator_schoolbook(self):
        Q = self.order
        if Q == 2:
            return 1
        order = Q - 1
        primes = list(factorize(order))

        def is_gen(c):
            pol = self._int_to_pol(c)
            if _pol_powmod(pol, order, self.modulus, self.p) != (1,):
                return False
            return all(
                _pol_powmod(pol, order // r, self.modulus, self.p) != (1,) for r in primes
            )

        # Conway moduli are primitive, so x itself (code p) is the generator;
        # otherwise scan upward.
        if self.degree > 1 and is_gen(self.p):
            return self.p
        for c in range(1, Q):
            if is_gen(c):
                return c
        raise ConsistencyError("no multiplicative generator found")  # pragma: no cover

    def _build_subfield(self):
        Q, q = self.order, self.q
        if q == 2:
            members = [0, 1]
            self.f_generator = 1
        else:
            t = (Q - 1) // (q - 1)
            g = self.pow(self.generator, t)
            self.f_generator = g
            members = [0]
            acc = 1
            for _ in range(q - 1):
                members.append(acc)
                acc = self.mul(acc, g)
        if len(set(members)) != q or any(not self.in_f(x) for x in members):
            raise ConsistencyError("fixed field of Frobenius has the wrong size")
        self.f_elements = np.array(sorted(members), dtype=np.int64)
        self.gamma_powers = [self.pow(self.f_generator, k) for k in range(self.a)]

    def _build_basis_maps(self):
        p, d, m, a = self.p, self.degree, self.m, self.a
        # alpha is the class of x; for d == 1 it is the root of the linear modulus.
        self.alpha = p if d > 1 else (-self.modulus[0]) % p
        self.f_basis = [self.pow(self.alpha, i) for i in range(m)]
        rows = np.zeros((d, d), dtype=np.int64)
        for i in range(m):
            for k in range(a):
                code = self.mul(self.gamma_powers[k], self.f_basis[i])
                rows[i * a + k] = self.digits(code)
        self._fb_mat = rows
        self._fb_inv = linalg.inv_matrix(rows, p)
        traces = [self.trace(b) for b in self.f_basis]
        if all(t == 0 for t in traces):
            raise ConsistencyError("trace map is not surjective on the chosen basis")

    # -- scalar arithmetic on codes -------------------------------------------

    def add(self, x, y):
        if self.p == 2:
            return x ^ y
        out = 0
        mult = 1
        p = self.p
        while x or y:
            out += ((x + y) % p) * mult
            x //= p
            y //= p
            mult *= p
        return out

    def neg(self, x):
        if self.p == 2:
            return x
        out = 0
        mult = 1
        p = self.p
        while x:
            out += ((p - x % p) % p) * mult
            x //= p
            mult *= p
        return out

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if x == 0 or y == 0:
            return 0
        if self.has_tables:
            qm1 = max(self.order - 1, 1)
            return int(self._exp[(self._log[x] + self._log[y]) % qm1])
        return self._mul_schoolbook(x, y)

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        if self.has_tables:
            qm1 = max(self.order - 1, 1)
            return int(self._exp[(-self._log[x]) % qm1])
        return self.pow(x, self.order - 2)

    def pow(self, x, e):
        if e < 0:
            return self.pow(self.inv(x), -e)
        if x == 0:
            return 0 if e else 1
        if self.has_tables:
            qm1 = max(self.order - 1, 1)
            return int(self._exp[(self._log[x] * e) % qm1])
        return self._pol_to_int(
            _pol_powmod(self._int_to_pol(x), e, self.modulus, self.p)
        )

    def frob(self, x):
        """Frobenius x -> x^q relative to F."""
        if self.has_tables:
            return int(self._frobq[x])
        return self.pow(x, self.q)

    def abs_trace(self, x):
        """Absolute trace from K down to GF(p); returns an int below p."""
        out = 0
        acc = x
        for _ in range(self.degree):
            out = self.add(out, acc)
            acc = self.pow(acc, self.p)
        if out >= self.p:
            raise ConsistencyError("absolute trace landed outside GF(p)")
        return out

    def trace(self, x):
        """Relative trace from K down to F: x + x^q + ... + x^(q^(m-1))."""
        if self.has_tables:
            out = int(self._trace_table[x])
        else:
            out = 0
            acc = x
            for _ in range(self.m):
                out = self.add(out, acc)
                acc = self.frob(acc)
        if not self.in_f(out):
            raise ConsistencyError("trace landed outside F")
        return out

    def conj(self, x):
        """The order-2 involution x -> x^(q^(m/2)); requires m even."""
        if self.m % 2:
            raise OddDegree(f"conjugation needs even m, got m={self.m}")
        if self.has_tables:
            return int(self._conj_table[x])
        return self.pow(x, self.q ** (self.m // 2))

    def in_f(self, x):
        if self.has_tables:
            return bool(self._inf_table[x])
        return self.frob(x) == x

    # -- vectorized arithmetic on int64 code arrays ---------------------------

    def _vadd_raw(self, x, y):
        if self.p == 2:
            return np.bitwise_xor(x, y)
        dx = (x[..., None] // self._powp) % self.p
        dy = (y[..., None] // self._powp) % self.p
        return ((dx + dy) % self.p) @ self._powp

    def vadd(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return self._vadd_raw(x, y)

    def vneg(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.p == 2:
            return x.copy()
        dx = (x[..., None] // self._powp) % self.p
        return ((self.p - dx) % self.p) @ self._powp

    def vsub(self, x, y):
        return self.vadd(x, self.vneg(y))

    def vmul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.has_tables:
            x, y = np.broadcast_arrays(x, y)
            out = np.zeros(x.shape, dtype=np.int64)
            nz = (x != 0) & (y != 0)
            if nz.any():
                qm1 = max(self.order - 1, 1)
                out[nz] = self._exp[(self._log[x[nz]] + self._log[y[nz]]) % qm1]
            return out
        fn = np.frompyfunc(self.mul, 2, 1)
        return fn(x, y).astype(np.int64)

    def vscale(self, c, x):
        return self.vmul(np.int64(c), x)

    def vsum(self, x, axis):
        x = np.asarray(x, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(x, axis=axis)
        dx = (x[..., None] // self._powp) % self.p
        return (dx.sum(axis=axis) % self.p) @ self._powp

    def vtrace(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.has_tables:
            return self._trace_table[x]
        fn = np.frompyfunc(self.trace, 1, 1)
        return fn(x).astype(np.int64)

    def vconj(self, x):
        if self.m % 2:
            raise OddDegree(f"conjugation needs even m, got m={self.m}")
        x = np.asarray(x, dtype=np.int64)
        if self.has_tables:
            return self._conj_table[x]
        fn = np.frompyfunc(self.conj, 1, 1)
        return fn(x).astype(np.int64)

    def vin_f(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.has_tables:
            return self._inf_table[x]
        fn = np.frompyfunc(self.in_f, 1, 1)
        return fn(x).astype(bool)

    # -- digit (prime field) coordinates --------------------------------------

    def digits(self, x):
        """Coefficient vector over GF(p) in the modulus basis, length = degree."""
        if self.has_tables:
            return self._digits_table[x].copy()
        return (np.int64(x) // self._powp) % self.p

    def vdigits(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.has_tables:
            return self._digits_table[x]
        return (x[..., None] // self._powp) % self.p

    def undigits(self, dv):
        return int(np.asarray(dv, dtype=np.int64) @ self._powp)

    def vundigits(self, dv):
        return np.asarray(dv, dtype=np.int64) @ self._powp

    # -- coordinates of K over F in the basis {1, alpha, ..., alpha^(m-1)} ----

    def k_to_fcoords(self, x):
        """F-coordinates (length m, codes in F) of x in the alpha-power basis."""
        u = (self.digits(x) @ self._fb_inv) % self.p
        out = np.zeros(self.m, dtype=np.int64)
        for i in range(self.m):
            c = 0
            for k in range(self.a):
                c = self.add(c, self.mul(int(u[i * self.a + k]), self.gamma_powers[k]))
            out[i] = c
        return out

    def f_to_pcoords(self, y):
        """GF(p)-coordinates of an element of F in the gamma-power basis."""
        u = (self.digits(y) @ self._fb_inv) % self.p
        if u[self.a :].any():
            raise ConsistencyError("value is not in the subfield F")
        return u[: self.a]

    def fcoords_to_k(self, u):
        if len(u) != self.m:
            raise LengthMismatch(f"expected {self.m} F-coordinates, got {len(u)}")
        out = 0
        for i, c in enumerate(u):
            out = self.add(out, self.mul(int(c), self.f_basis[i]))
        return out

    # -- element objects and formatting ---------------------------------------

    def element(self, code):
        return FieldElement(self, int(code) % self.order)

    def embed(self, c):
        """Embed a prime field scalar."""
        return FieldElement(self, int(c) % self.p)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        """The canonical generator alpha (root of the modulus)."""
        return FieldElement(self, self.alpha)

    def elements(self):
        for c in range(self.order):
            yield FieldElement(self, c)

    def format_code(self, x):
        """Polynomial expression in the generator symbol 'a'."""
        if x == 0:
            return "0"
        terms = []
        dv = self.digits(x)
        for i in range(self.degree - 1, -1, -1):
            c = int(dv[i])
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                pow_s = "a" if i == 1 else f"a^{i}"
                terms.append(pow_s if c == 1 else f"{c}*{pow_s}")
        return " + ".join(terms)

    def spec_string(self):
        mod = ",".join(str(c) for c in self.modulus)
        return f"q={self.q} m={self.m} modulus={mod}"

    def same_tower(self, other):
        return (
            self.q == other.q and self.m == other.m and self.modulus == other.modulus
        )

    def __repr__(self):
        return f"FieldTower(q={self.q}, m={self.m})"


class FieldElement:
    """An element of K, stored as an integer code over a fixed tower."""

    __slots__ = ("tower", "code")

    def __init__(self, tower, code):
        self.tower = tower
        self.code = int(code)
        if not 0 <= self.code < tower.order:
            raise LengthMismatch(f"code {code} out of range for |K|={tower.order}")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if not self.tower.same_tower(other.tower):
                raise LengthMismatch("elements live in different towers")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.tower.p
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower.sub(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower.sub(c, self.code))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower.mul(self.code, self.tower.inv(c)))

    def __pow__(self, e):
        return FieldElement(self.tower, self.tower.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv(self.code))

    def trace(self):
        return FieldElement(self.tower, self.tower.trace(self.code))

    def conjugate(self):
        return FieldElement(self.tower, self.tower.conj(self.code))

    def frobenius(self):
        return FieldElement(self.tower, self.tower.frob(self.code))

    @property
    def is_in_f(self):
        return self.tower.in_f(self.code)

    @property
    def coords(self):
        return tuple(int(c) for c in self.tower.digits(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.tower.same_tower(other.tower) and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.tower.p
        return NotImplemented

    def __hash__(self):
        return hash((self.tower.q, self.tower.m, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return self.tower.format_code(self.code)


def trace(x):
    """Relative trace of x from K to F; the result lies in F."""
    return x.trace()


def conjugate(x):
    """The involution x -> x^(q^(m/2)) of K; requires even extension degree."""
    return x.conjugate()


def embed(tower, c):
    return tower.embed(c)


_FIELD_TOKEN = re.compile(r"[,\s]+(?=[A-Za-z_]+=)")


def parse_field_spec(text):
    """Parse 'q=<int> m=<int> [modulus=c0,c1,...]' (comma or space separated)."""
    parts = [t for t in _FIELD_TOKEN.split(text.strip()) if t]
    kv = {}
    for part in parts:
        if "=" not in part:
            raise ParseError(f"bad field spec token: {part!r}")
        key, _, value = part.partition("=")
        kv[key.strip()] = value.strip()
    unknown = set(kv) - {"q", "m", "modulus"}
    if unknown:
        raise ParseError(f"unknown field spec keys: {sorted(unknown)}")
    try:
        q = int(kv["q"])
        m = int(kv["m"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"field spec needs integer q= and m=: {text!r}") from exc
    modulus = None
    if "modulus" in kv:
        try:
            modulus = tuple(int(c) for c in kv["modulus"].split(","))
        except ValueError as exc:
            raise ParseError(f"bad modulus in field spec: {kv['modulus']!r}") from exc
    return FieldTower(q, m, modulus)
