"""The group algebra KG: elements, arithmetic, and coordinate systems.

Two coordinate systems are used throughout:

* canonical coordinates: length m*n vectors over F in the basis
  {alpha^i g_j}, ordered j-major then i.  Gram matrices and operator
  matrices live here.
* digit coordinates: length d*n vectors over GF(p) (d = [K : GF(p)]),
  the concatenated digit vectors of the n coefficients in table order.
  All subspace computations (echelon bases, null spaces) live here,
  which gives a single canonical form independent of how F acts.

Both maps are exact bijections and round-trip by construction.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import LengthMismatch, MixedAmbient, ParseError, TooLargeToEnumerate
from .fields import FieldElement, FieldTower
from .groups import Group


class Ambient:
    """A fixed pair (FieldTower, Group); the home of all KG computations.

    Immutable; caches derived matrices (translations, Gram matrices).
    """

    def __init__(self, tower: FieldTower, group: Group):
        self.tower = tower
        self.group = group
        self.n = group.n
        self.m = tower.m
        self.d = tower.degree
        self.p = tower.p
        self.mn = tower.m * group.n
        self.nd = tower.degree * group.n
        self.size = tower.order**group.n  # |KG| as a plain int
        self._cache = {}

    def same_ambient(self, other):
        return self.tower.same_tower(other.tower) and self.group.same_group(other.group)

    def __repr__(self):
        return f"Ambient(q={self.tower.q}, m={self.m}, {self.group.name})"

    # -- element constructors --------------------------------------------------

    def element(self, coeffs):
        codes = np.zeros(self.n, dtype=np.int64)
        for j, c in enumerate(coeffs):
            if isinstance(c, FieldElement):
                codes[j] = c.code
            else:
                codes[j] = int(c) % self.tower.order
        return AlgebraElement(self, codes)

    def zero(self):
        return AlgebraElement(self, np.zeros(self.n, dtype=np.int64))

    def one(self):
        codes = np.zeros(self.n, dtype=np.int64)
        codes[self.group.identity] = 1
        return AlgebraElement(self, codes)

    def group_element(self, j):
        codes = np.zeros(self.n, dtype=np.int64)
        codes[j] = 1
        return AlgebraElement(self, codes)

    def scaled_group_element(self, code, j):
        codes = np.zeros(self.n, dtype=np.int64)
        codes[j] = code
        return AlgebraElement(self, codes)

    def basis_element(self, i, j):
        """The canonical basis element alpha^i g_j (0 <= i < m)."""
        return self.scaled_group_element(self.tower.f_basis[i], j)

    def random_element(self, rng):
        return AlgebraElement(self, rng.integers(0, self.tower.order, self.n, dtype=np.int64))

    def random_fg_element(self, rng):
        picks = rng.integers(0, len(self.tower.f_elements), self.n)
        return AlgebraElement(self, self.tower.f_elements[picks])

    def iter_elements(self, cap=2**16):
        """All of KG in odometer order over coefficient codes."""
        if self.size > cap:
            raise TooLargeToEnumerate(self.size, cap)
        Q = self.tower.order
        codes = np.zeros(self.n, dtype=np.int64)
        for t in range(self.size):
            rem = t
            for j in range(self.n):
                codes[j] = rem % Q
                rem //= Q
            yield AlgebraElement(self, codes.copy())

    # -- coordinate maps --------------------------------------------------------

    def to_canonical(self, x):
        vec = np.zeros(self.mn, dtype=np.int64)
        for j in range(self.n):
            vec[j * self.m : (j + 1) * self.m] = self.tower.k_to_fcoords(int(x.coeffs[j]))
        return vec

    def from_canonical(self, vec):
        vec = np.asarray(vec, dtype=np.int64)
        if vec.shape != (self.mn,):
            raise LengthMismatch(f"expected {self.mn} canonical coordinates")
        codes = np.zeros(self.n, dtype=np.int64)
        for j in range(self.n):
            codes[j] = self.tower.fcoords_to_k(vec[j * self.m : (j + 1) * self.m])
        return AlgebraElement(self, codes)

    def to_digits(self, x):
        return self.tower.vdigits(x.coeffs).reshape(-1).astype(np.int64)

    def from_digits(self, row):
        row = np.asarray(row, dtype=np.int64) % self.p
        if row.shape != (self.nd,):
            raise LengthMismatch(f"expected {self.nd} digit coordinates")
        codes = self.tower.vundigits(row.reshape(self.n, self.d))
        return AlgebraElement(self, codes)

    def canonical_to_digits(self, vec):
        return self.to_digits(self.from_canonical(vec))

    def digits_to_canonical(self, row):
        return self.to_canonical(self.from_digits(row))

    # -- cached structure matrices ----------------------------------------------

    def left_translation_fmatrix(self, g):
        """Canonical-basis matrix of x -> g x (row convention)."""
        key = ("lgf", g)
        if key not in self._cache:
            mat = np.zeros((self.mn, self.mn), dtype=np.int64)
            for j in range(self.n):
                tj = self.group.mul(g, j)
                for i in range(self.m):
                    mat[j * self.m + i, tj * self.m + i] = 1
            mat.setflags(write=False)
            self._cache[key] = mat
        return self._cache[key]

    def left_translation_digits(self, g):
        key = ("lgd", g)
        if key not in self._cache:
            mat = np.zeros((self.nd, self.nd), dtype=np.int64)
            for j in range(self.n):
                tj = self.group.mul(g, j)
                for t in range(self.d):
                    mat[j * self.d + t, tj * self.d + t] = 1
            mat.setflags(write=False)
            self._cache[key] = mat
        return self._cache[key]

    def scalar_multiplication_digits(self, code):
        """Digit-level matrix of coefficientwise scaling by a field code."""
        key = ("scal", int(code))
        if key not in self._cache:
            tw = self.tower
            block = np.zeros((self.d, self.d), dtype=np.int64)
            for t in range(self.d):
                block[t] = tw.digits(tw.mul(int(code), tw.pow(tw.alpha, t)))
            mat = np.kron(np.eye(self.n, dtype=np.int64), block)
            mat.setflags(write=False)
            self._cache[key] = mat
        return self._cache[key]


def ambient(tower, group):
    return Ambient(tower, group)


class AlgebraElement:
    """An element of KG as a dense coefficient vector of field codes."""

    __slots__ = ("ambient", "coeffs")

    def __init__(self, amb, coeffs):
        self.ambient = amb
        coeffs = np.asarray(coeffs, dtype=np.int64).copy()
        if coeffs.shape != (amb.n,):
            raise LengthMismatch(f"need {amb.n} coefficients, got {coeffs.shape}")
        coeffs.setflags(write=False)
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise MixedAmbient(f"cannot combine AlgebraElement with {type(other).__name__}")
        if not self.ambient.same_ambient(other.ambient):
            raise MixedAmbient("elements live in different group algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.ambient, self.ambient.tower.vadd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.ambient, self.ambient.tower.vsub(self.coeffs, other.coeffs))

    def __neg__(self):
        return AlgebraElement(self.ambient, self.ambient.tower.vneg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        # scalars commute with everything in the coefficient field
        return self.scaled(other)

    def scaled(self, scalar):
        if isinstance(scalar, FieldElement):
            code = scalar.code
        else:
            code = int(scalar) % self.ambient.tower.p
        return AlgebraElement(self.ambient, self.ambient.tower.vscale(code, self.coeffs))

    def __pow__(self, e):
        if e < 0:
            raise ParseError("negative powers of algebra elements are not supported")
        out = self.ambient.one()
        for _ in range(e):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.ambient.same_ambient(other.ambient) and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __hash__(self):
        return hash((self.ambient.tower.q, self.ambient.m, self.ambient.n, self.coeffs.tobytes()))

    def __bool__(self):
        return bool(self.coeffs.any())

    def star(self):
        """Involution: the coefficient of g moves to g^-1."""
        out = np.zeros_like(self.coeffs)
        out[self.ambient.group.inverse] = self.coeffs
        return AlgebraElement(self.ambient, out)

    def conj(self):
        """Coefficientwise conjugation; requires even extension degree."""
        return AlgebraElement(self.ambient, self.ambient.tower.vconj(self.coeffs))

    def coef_identity(self):
        """The coefficient of the group identity, as a field element."""
        return self.ambient.tower.element(int(self.coeffs[self.ambient.group.identity]))

    def coefficient(self, j):
        return self.ambient.tower.element(int(self.coeffs[j]))

    def left_translate(self, g):
        """g * self for a group element index g."""
        out = np.zeros_like(self.coeffs)
        out[self.ambient.group.table[g]] = self.coeffs
        return AlgebraElement(self.ambient, out)

    @property
    def weight(self):
        """Hamming weight: number of nonzero K-coefficients."""
        return int((self.coeffs != 0).sum())

    def support(self):
        return [int(j) for j in np.nonzero(self.coeffs)[0]]

    @property
    def is_idempotent(self):
        return multiply(self, self) == self

    @property
    def in_fg(self):
        return bool(self.ambient.tower.vin_f(self.coeffs).all())

    def __repr__(self):
        return format_element(self)


# -- arithmetic entry points (same operations as the element methods) ----------


def multiply(x, y):
    """Convolution product per the group table."""
    x._check(y)
    amb = x.ambient
    tw = amb.tower
    table = amb.group.table
    out = np.zeros(amb.n, dtype=np.int64)
    for i in np.nonzero(x.coeffs)[0]:
        row = table[i]
        # row is a permutation, so the scatter below has no collisions
        out[row] = tw.vadd(out[row], tw.vscale(int(x.coeffs[i]), y.coeffs))
    return AlgebraElement(amb, out)


def star(x):
    return x.star()


def conj(x):
    return x.conj()


def coef_identity(x):
    return x.coef_identity()


def to_coords(x):
    """Canonical coordinates: mn scalars of F, basis alpha^i g_j, j-major."""
    return x.ambient.to_canonical(x)


def from_coords(amb, vec):
    return amb.from_canonical(vec)


# -- element literals -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|a|g\d*|[-+*^()])")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"bad element literal near {text[pos:pos + 12]!r}")
        out.append(match.group(1))
        pos = match.end()
    out.append("$")
    return out


class _Parser:
    """Recursive descent for `c0*g0 + c1*g1 + ...` style literals.

    Coefficients are polynomial expressions in `a`, the canonical generator
    of K; `g` is the second table element, `g<idx>` picks an element by
    index, and `g^k` is a power of `g`.  Everything is evaluated inside KG,
    so mixed products like `a*g*g` are fine.
    """

    def __init__(self, amb, tokens):
        self.amb = amb
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() != "$":
            raise ParseError(f"unexpected token {self.peek()!r} in element literal")
        return value

    def expr(self):
        negate = False
        if self.peek() in "+-":
            negate = self.take() == "-"
        value = self.term()
        if negate:
            value = -value
        while self.peek() in "+-":
            op = self.take()
            rhs = self.term()
            value = value - rhs if op == "-" else value + rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() == "*":
            self.take()
            value = multiply(value, self.factor())
        return value

    def factor(self):
        value = self.primary()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer, got {tok!r}")
            value = value ** int(tok)
        return value

    def primary(self):
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ParseError("unbalanced parentheses in element literal")
            return value
        if tok.isdigit():
            return self.amb.one().scaled(int(tok))
        if tok == "a":
            return self.amb.scaled_group_element(
                self.amb.tower.alpha, self.amb.group.identity
            )
        if tok.startswith("g"):
            if tok == "g":
                idx = 1 if self.amb.n > 1 else self.amb.group.identity
            else:
                idx = int(tok[1:])
            if not 0 <= idx < self.amb.n:
                raise ParseError(f"group element index {idx} out of range")
            return self.amb.group_element(idx)
        raise ParseError(f"unexpected token {tok!r} in element literal")


def parse_element(amb, text):
    if not text.strip():
        raise ParseError("empty element literal")
    return _Parser(amb, _tokenize(text)).parse()


def format_element(x):
    """Round-trippable literal, e.g. `(a + 1)*g2 + a*g4`."""
    amb = x.ambient
    tw = amb.tower
    terms = []
    for j in range(amb.n):
        c = int(x.coeffs[j])
        if c == 0:
            continue
        cs = tw.format_code(c)
        if j == amb.group.identity:
            terms.append(cs)
        elif c == 1:
            terms.append(f"g{j}")
        else:
            if " + " in cs:
                cs = f"({cs})"
            terms.append(f"{cs}*g{j}")
    return " + ".join(terms) if terms else "0"
