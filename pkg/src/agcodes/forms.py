"""The Euclidean, trace-Euclidean, Hermitian and trace-Hermitian forms on KG.

For x = sum(a_g g) and y = sum(b_g g):

    <x, y>_E  = sum a_g b_g                 (K-valued)
    <x, y>_TE = Tr_{K/F}(sum a_g b_g)       (F-valued)
    <x, y>_H  = sum a_g conj(b_g)           (K-valued, m even)
    <x, y>_TH = Tr_{K/F}(sum a_g conj(b_g)) (F-valued, m even)

The trace forms are non-degenerate symmetric F-bilinear forms, so they have
invertible Gram matrices over F in the canonical basis; orthogonal
complements, adjoints and duality all run through them.  The K-valued forms
are exposed for pairing values and for the left-ideal dual coincidence.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import MixedAmbient, NotKLinear, OddDegree, ParseError


class Form:
    """One of the four form kinds; use the module singletons E, TE, H, TH."""

    __slots__ = ("tag",)

    def __init__(self, tag):
        self.tag = tag

    @property
    def is_trace(self):
        return self.tag in ("TE", "TH")

    @property
    def is_hermitian(self):
        return self.tag in ("H", "TH")

    def trace_version(self):
        return TH if self.is_hermitian else TE

    def __repr__(self):
        return self.tag

    def __eq__(self, other):
        return isinstance(other, Form) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)


E = Form("E")
TE = Form("TE")
H = Form("H")
TH = Form("TH")

TRACE_FORMS = (TE, TH)
ALL_FORMS = (E, TE, H, TH)


def parse_form(text):
    table = {"E": E, "TE": TE, "H": H, "TH": TH}
    try:
        return table[text.strip().upper()]
    except KeyError:
        raise ParseError(f"unknown form {text!r}; expected E, TE, H or TH") from None


def _require(form, amb):
    if form.is_hermitian and amb.m % 2:
        raise OddDegree(f"{form.tag} needs even extension degree, got m={amb.m}")


def trace_forms_for(amb):
    """The trace forms available in this ambient (TH only when m is even)."""
    return (TE, TH) if amb.m % 2 == 0 else (TE,)


def pair(form, x, y):
    """The form value <x, y>; K-valued for E/H, F-valued for TE/TH."""
    if not x.ambient.same_ambient(y.ambient):
        raise MixedAmbient("pairing needs both elements in the same group algebra")
    amb = x.ambient
    _require(form, amb)
    tw = amb.tower
    rhs = tw.vconj(y.coeffs) if form.is_hermitian else y.coeffs
    total = int(tw.vsum(tw.vmul(x.coeffs, rhs), axis=0))
    if form.is_trace:
        total = tw.trace(total)
    return tw.element(total)


def trace_gram(form, amb):
    """Gram matrix over F of a trace form in the canonical basis (mn x mn).

    The canonical basis pairs as <alpha^i g_j, alpha^i' g_j'> =
    delta_{jj'} * Tr(alpha^i sigma(alpha^i')), so the matrix is a block
    identity pattern; it is symmetric and invertible.
    """
    if not form.is_trace:
        raise ParseError("trace_gram is defined for the trace forms only")
    _require(form, amb)
    key = ("gram", form.tag)
    if key not in amb._cache:
        tw = amb.tower
        m = amb.m
        block = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                rhs = tw.conj(tw.f_basis[j]) if form.is_hermitian else tw.f_basis[j]
                block[i, j] = tw.trace(tw.mul(tw.f_basis[i], rhs))
        gram = np.kron(np.eye(amb.n, dtype=np.int64), block)
        if linalg.fm_rank(tw, gram) != amb.mn:
            raise ParseError("trace form is degenerate; tower construction is broken")
        gram.setflags(write=False)
        amb._cache[key] = gram
    return amb._cache[key]


def gram_inverse(form, amb):
    key = ("graminv", form.tag)
    if key not in amb._cache:
        inv = linalg.fm_inv(amb.tower, trace_gram(form, amb))
        inv.setflags(write=False)
        amb._cache[key] = inv
    return amb._cache[key]


def prime_gram(form, amb):
    """Gram matrix over GF(p) of the absolute-trace refinement, in digit
    coordinates (nd x nd).

    For an F-stable subspace the orthogonal complement with respect to the
    trace form equals the one computed from this prime-field form: if
    Tr_{F/GF(p)}(lambda * <x,c>) vanishes for every lambda in F then
    <x,c> = 0, because the trace pairing on F is non-degenerate.  This keeps
    all null space computations over the prime field.
    """
    if not form.is_trace:
        raise ParseError("prime_gram is defined for the trace forms only")
    _require(form, amb)
    key = ("pgram", form.tag)
    if key not in amb._cache:
        tw = amb.tower
        d = amb.d
        block = np.zeros((d, d), dtype=np.int64)
        alpha_pow = [tw.pow(tw.alpha, t) for t in range(d)]
        for s in range(d):
            for t in range(d):
                rhs = tw.conj(alpha_pow[t]) if form.is_hermitian else alpha_pow[t]
                block[s, t] = tw.abs_trace(tw.mul(alpha_pow[s], rhs))
        gram = np.kron(np.eye(amb.n, dtype=np.int64), block)
        if linalg.rank(gram, amb.p) != amb.nd:
            raise ParseError("prime trace form is degenerate; tower construction is broken")
        gram.setflags(write=False)
        amb._cache[key] = gram
    return amb._cache[key]


def orthogonal(form, code):
    """Full orthogonal complement of an additive code in KG (trace forms)."""
    from . import codes as codes_mod

    if not form.is_trace:
        raise ParseError("orthogonal complements are computed for trace forms; "
                         "use euclidean_orthogonal_of_ideal for E/H on left ideals")
    amb = code.ambient
    _require(form, amb)
    gram = prime_gram(form, amb)
    if code.dim_p == 0:
        return codes_mod.full_code(amb)
    conditions = (code.rows @ gram) % amb.p
    rows = linalg.nullspace(conditions, amb.p)
    return codes_mod.AdditiveCode(
        amb, rows, is_submodule=code.is_submodule, check_f_stable=False
    )


def euclidean_orthogonal_of_ideal(form, code):
    """E (resp. H) dual of a K-linear code via the trace-form coincidence.

    For a left ideal, the Euclidean and trace-Euclidean duals agree (scaling
    by lambda inside the ideal turns a nonzero K-valued pairing into one
    with nonzero trace), so the dual is computed against TE (resp. TH).
    """
    if form.is_trace:
        raise ParseError("euclidean_orthogonal_of_ideal expects E or H")
    if not code.is_k_linear():
        raise NotKLinear("code is not closed under K-scaling")
    return orthogonal(form.trace_version(), code)
