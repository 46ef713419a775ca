"""F-linear endomorphisms of KG and the projector calculus.

Operators are mn x mn matrices over F acting on canonical coordinates in
the row-vector convention [T(x)] = [x] M.  Composition (S after T) is
therefore M_T M_S, and the adjoint with respect to a trace form with Gram
matrix G is M* = G M^T G^{-1}.

A parallel digit-level matrix (nd x nd over GF(p)) is derived on demand for
subspace work: images, kernels, and projector construction run over the
prime field where echelon forms are canonical.
"""

from __future__ import annotations

import json

import numpy as np

from . import codes as codes_mod
from . import forms, linalg
from .algebra import Ambient
from .errors import (
    AgcError,
    ConsistencyError,
    LengthMismatch,
    MixedAmbient,
    NotComplementary,
    NotSubmodule,
    ParseError,
)
from .fields import FieldTower
from .groups import Group


class FLinearOperator:
    """An F-linear endomorphism of KG in the canonical basis."""

    __slots__ = ("ambient", "fmatrix", "_digit", "_fg")

    def __init__(self, amb: Ambient, fmatrix):
        self.ambient = amb
        fmatrix = np.asarray(fmatrix, dtype=np.int64).copy()
        if fmatrix.shape != (amb.mn, amb.mn):
            raise LengthMismatch(f"operator matrix must be {amb.mn} x {amb.mn}")
        if not amb.tower.vin_f(fmatrix).all():
            raise AgcError("operator matrix entries must lie in the subfield F")
        fmatrix.setflags(write=False)
        self.fmatrix = fmatrix
        self._digit = None
        self._fg = None

    def _check(self, other):
        if not isinstance(other, FLinearOperator):
            raise MixedAmbient(f"cannot combine operator with {type(other).__name__}")
        if not self.ambient.same_ambient(other.ambient):
            raise MixedAmbient("operators act on different group algebras")

    def apply(self, x):
        vec = self.ambient.to_canonical(x)
        out = linalg.fm_mul(self.ambient.tower, vec[None, :], self.fmatrix)[0]
        return self.ambient.from_canonical(out)

    def __call__(self, x):
        return self.apply(x)

    def digit_matrix(self):
        """The same map as an nd x nd matrix over GF(p) in digit coordinates."""
        if self._digit is None:
            amb = self.ambient
            rows = np.zeros((amb.nd, amb.nd), dtype=np.int64)
            eye = np.eye(amb.nd, dtype=np.int64)
            for u in range(amb.nd):
                rows[u] = amb.to_digits(self.apply(amb.from_digits(eye[u])))
            rows.setflags(write=False)
            self._digit = rows
        return self._digit

    def compose(self, other):
        """self after other: x -> self(other(x))."""
        self._check(other)
        return FLinearOperator(
            self.ambient, linalg.fm_mul(self.ambient.tower, other.fmatrix, self.fmatrix)
        )

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        self._check(other)
        return FLinearOperator(self.ambient, self.ambient.tower.vadd(self.fmatrix, other.fmatrix))

    def __sub__(self, other):
        self._check(other)
        return FLinearOperator(self.ambient, self.ambient.tower.vsub(self.fmatrix, other.fmatrix))

    def __neg__(self):
        return FLinearOperator(self.ambient, self.ambient.tower.vneg(self.fmatrix))

    def __eq__(self, other):
        if not isinstance(other, FLinearOperator):
            return NotImplemented
        return self.ambient.same_ambient(other.ambient) and np.array_equal(
            self.fmatrix, other.fmatrix
        )

    def __hash__(self):
        return hash((self.ambient.mn, self.fmatrix.tobytes()))

    def is_projector(self):
        m = self.fmatrix
        return np.array_equal(linalg.fm_mul(self.ambient.tower, m, m), m)

    def is_fg_linear(self):
        """Exhaustive commutation test with every left translation."""
        if self._fg is None:
            amb = self.ambient
            tw = amb.tower
            ok = True
            for g in range(amb.n):
                lg = amb.left_translation_fmatrix(g)
                if not np.array_equal(
                    linalg.fm_mul(tw, lg, self.fmatrix),
                    linalg.fm_mul(tw, self.fmatrix, lg),
                ):
                    ok = False
                    break
            self._fg = ok
        return self._fg

    def rank(self):
        return linalg.rank(self.digit_matrix(), self.ambient.p) // self.ambient.tower.a

    def __repr__(self):
        return f"FLinearOperator(mn={self.ambient.mn}, {self.ambient!r})"


# -- constructors -------------------------------------------------------------------


def identity_operator(amb):
    return FLinearOperator(amb, linalg.fm_eye(amb.tower, amb.mn))


def zero_operator(amb):
    return FLinearOperator(amb, np.zeros((amb.mn, amb.mn), dtype=np.int64))


def rho(e):
    """Right multiplication by e; an FG-linear projector iff e is idempotent."""
    amb = e.ambient
    tw = amb.tower
    mat = np.zeros((amb.mn, amb.mn), dtype=np.int64)
    for j in range(amb.n):
        gje = e.left_translate(j)
        for i in range(amb.m):
            scaled = gje.scaled(tw.element(tw.f_basis[i]))
            mat[j * amb.m + i] = amb.to_canonical(scaled)
    return FLinearOperator(amb, mat)


def left_translation(amb, g):
    return FLinearOperator(amb, amb.left_translation_fmatrix(g))


def from_digit_matrix(amb, digit, check_f_linear=True):
    """Lift an nd x nd prime-field matrix to an operator; it must commute
    with scalar multiplication by F to be F-linear."""
    digit = np.asarray(digit, dtype=np.int64) % amb.p
    if digit.shape != (amb.nd, amb.nd):
        raise LengthMismatch(f"digit matrix must be {amb.nd} x {amb.nd}")
    if check_f_linear and amb.tower.a > 1:
        gamma = amb.scalar_multiplication_digits(amb.tower.f_generator)
        if not np.array_equal((gamma @ digit) % amb.p, (digit @ gamma) % amb.p):
            raise AgcError("digit matrix is not F-linear")
    mat = np.zeros((amb.mn, amb.mn), dtype=np.int64)
    eye = np.eye(amb.mn, dtype=np.int64)
    for r in range(amb.mn):
        row = amb.canonical_to_digits(eye[r])
        mat[r] = amb.digits_to_canonical((row @ digit) % amb.p)
    return FLinearOperator(amb, mat)


# -- predicates, adjoints, images ---------------------------------------------------


def is_projector(op):
    return op.is_projector()


def is_fg_linear(op):
    return op.is_fg_linear()


def adjoint(form, op):
    """Adjoint with respect to a trace form: M* = G M^T G^{-1}."""
    amb = op.ambient
    gram = forms.trace_gram(form, amb)
    ginv = forms.gram_inverse(form, amb)
    tw = amb.tower
    mat = linalg.fm_mul(tw, linalg.fm_mul(tw, gram, op.fmatrix.T), ginv)
    return FLinearOperator(amb, mat)


def is_self_adjoint(form, op):
    return adjoint(form, op) == op


def image(op):
    """Row space of the operator as an additive code; flagged as a
    submodule when the operator is FG-linear."""
    return codes_mod.AdditiveCode(
        op.ambient, op.digit_matrix().copy(),
        is_submodule=op.is_fg_linear(), check_f_stable=False,
    )


def kernel(op):
    rows = linalg.left_nullspace(op.digit_matrix(), op.ambient.p)
    return codes_mod.AdditiveCode(
        op.ambient, rows, is_submodule=op.is_fg_linear(), check_f_stable=False
    )


class SubfieldSubspace:
    """An F-subspace of K, given by an F-independent list of field codes."""

    def __init__(self, tower: FieldTower, basis):
        self.tower = tower
        codes = []
        for b in basis:
            codes.append(b.code if hasattr(b, "code") else int(b))
        self.basis = codes
        coords = np.array([tower.k_to_fcoords(c) for c in codes], dtype=np.int64)
        if len(codes) and linalg.fm_rank(tower, coords) != len(codes):
            raise AgcError("subspace basis is not F-independent")
        self.fcoords = coords.reshape(len(codes), tower.m)

    @property
    def dim_f(self):
        return len(self.basis)


def coefficientwise_projector(amb, subspace, form):
    """The operator applying the projection of K onto U along its
    orthogonal complement to every coefficient.

    Requires K = U + U_perp as a direct sum under the rank-one trace form
    on K; raises NotComplementary otherwise.  The result is FG-linear, a
    projector, and self-adjoint for the chosen form.
    """
    tw = amb.tower
    if subspace.tower is not tw and not subspace.tower.same_tower(tw):
        raise MixedAmbient("subspace lives in a different tower")
    if form not in (forms.TE, forms.TH):
        raise ParseError("coefficientwise projectors are built for trace forms")
    if form.is_hermitian and amb.m % 2:
        raise AgcError(f"TH needs even extension degree, got m={amb.m}")
    m = amb.m
    block = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            rhs = tw.conj(tw.f_basis[j]) if form.is_hermitian else tw.f_basis[j]
            block[i, j] = tw.trace(tw.mul(tw.f_basis[i], rhs))
    ub = subspace.fcoords
    conditions = linalg.fm_mul(tw, ub, block) if len(ub) else np.zeros((0, m), dtype=np.int64)
    perp = linalg.fm_nullspace(tw, conditions) if len(ub) else linalg.fm_eye(tw, m)
    stacked = np.concatenate([ub, perp], axis=0) if len(ub) else perp
    if stacked.shape[0] != m or linalg.fm_rank(tw, stacked) != m:
        raise NotComplementary("K is not the direct sum of U and its orthogonal complement")
    selector = np.zeros((m, m), dtype=np.int64)
    for i in range(len(ub)):
        selector[i, i] = 1
    sinv = linalg.fm_inv(tw, stacked)
    pi = linalg.fm_mul(tw, linalg.fm_mul(tw, sinv, selector), stacked)
    full = np.kron(np.eye(amb.n, dtype=np.int64), pi)
    return FLinearOperator(amb, full)


def projector_from_summand(code, complement):
    """The unique projector with the given image and kernel.

    Both arguments must be submodules decomposing KG as a direct sum; the
    result is then FG-linear with image `code` and kernel `complement`.
    """
    if not code.is_submodule or not complement.is_submodule:
        raise NotSubmodule("projector_from_summand needs submodule arguments")
    amb = code.ambient
    if not code.ambient.same_ambient(complement.ambient):
        raise MixedAmbient("summands live in different group algebras")
    if code.dim_p + complement.dim_p != amb.nd:
        raise NotComplementary("dimensions do not add up to dim KG")
    stacked = np.concatenate([code.rows, complement.rows], axis=0)
    if linalg.rank(stacked, amb.p) != amb.nd:
        raise NotComplementary("summands intersect nontrivially")
    sinv = linalg.inv_matrix(stacked, amb.p)
    selector = np.zeros((amb.nd, amb.nd), dtype=np.int64)
    for i in range(code.dim_p):
        selector[i, i] = 1
    digit = (sinv @ selector @ stacked) % amb.p
    return from_digit_matrix(amb, digit, check_f_linear=False)


def as_right_multiplication(op):
    """The unique possible a with op = rho_a is op(1); return a when that
    holds and None otherwise."""
    a = op.apply(op.ambient.one())
    return a if rho(a) == op else None


# -- serialization -------------------------------------------------------------------

_JSON_FORMAT = "agcodes.operator/v1"


def to_json(op):
    amb = op.ambient
    payload = {
        "format": _JSON_FORMAT,
        "field": amb.tower.spec_string(),
        "group": amb.group.name,
        "group_table": amb.group.table.tolist(),
        "matrix": op.digit_matrix().tolist(),
    }
    return json.dumps(payload, indent=1)


def from_json(text):
    from .fields import parse_field_spec

    payload = json.loads(text)
    if payload.get("format") != _JSON_FORMAT:
        raise ParseError(f"not an operator payload (format={payload.get('format')!r})")
    tower = parse_field_spec(payload["field"])
    group = Group(np.array(payload["group_table"], dtype=np.int64),
                  name=payload.get("group", "group"))
    amb = Ambient(tower, group)
    digit = np.array(payload["matrix"], dtype=np.int64)
    return from_digit_matrix(amb, digit, check_f_linear=True)
