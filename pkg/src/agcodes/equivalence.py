"""Murray-von Neumann equivalence of idempotents and projectors.

Two idempotents e, f of a ring are equivalent when e = ba and f = ab for
some ring elements a, b; for FG-linear projectors this happens exactly when
their images are isomorphic as left FG-modules.  The isomorphism search is
the one nonconstructive step: the space of equivariant maps is solved
exactly as a linear system, then an invertible element of it is found by
exhaustive scan (small spaces) or seeded random combinations.  A failed
randomized search returns INDETERMINATE, which is a first-class result and
deliberately refuses to be treated as a boolean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import codes as codes_mod
from . import linalg, operators
from .algebra import AlgebraElement
from .errors import (
    ConsistencyError,
    MixedAmbient,
    NotIdempotent,
    NotProjector,
    NotSubmodule,
)


class _Indeterminate:
    """Search exhausted without a witness and without a proof of absence."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INDETERMINATE"

    def __bool__(self):
        raise TypeError("INDETERMINATE is neither equivalent nor inequivalent; "
                        "compare with `is INDETERMINATE`")


INDETERMINATE = _Indeterminate()


@dataclass(frozen=True)
class HomSpace:
    """A GF(p)-basis of the equivariant F-linear maps between two submodules.

    Matrices map coordinates in the source echelon basis to coordinates in
    the target echelon basis (row convention).
    """

    source: "codes_mod.AdditiveCode"
    target: "codes_mod.AdditiveCode"
    basis: tuple
    k_linear: bool

    @property
    def dim_p(self):
        return len(self.basis)

    @property
    def dim_f(self):
        return self.dim_p // self.source.ambient.tower.a


def _restrict(action, code):
    """Matrix of a digit-level operator on a stable subspace, in the
    subspace's echelon basis."""
    amb = code.ambient
    moved = (code.rows @ action) % amb.p
    out = np.zeros((code.dim_p, code.dim_p), dtype=np.int64)
    for i, row in enumerate(moved):
        out[i] = linalg.coords_in_row_space(code.rows, code.pivots, row, amb.p)
    return out


def _constraint_actions(amb, k_linear):
    actions = [amb.left_translation_digits(g) for g in range(amb.n)]
    if amb.tower.a > 1:
        actions.append(amb.scalar_multiplication_digits(amb.tower.f_generator))
    if k_linear:
        actions.append(amb.scalar_multiplication_digits(amb.tower.alpha))
    return actions


def hom_space(source, target, k_linear=False):
    """Solve the commuting-map system phi(A x) = A phi(x) for all group
    translations A (plus scalar actions: F always, K when k_linear)."""
    if not source.is_submodule or not target.is_submodule:
        raise NotSubmodule("hom spaces are computed between submodules")
    if not source.ambient.same_ambient(target.ambient):
        raise MixedAmbient("modules live in different group algebras")
    amb = source.ambient
    rm, rn = source.dim_p, target.dim_p
    if rm == 0 or rn == 0:
        return HomSpace(source, target, (), k_linear)
    blocks = []
    eye_m = np.eye(rm, dtype=np.int64)
    eye_n = np.eye(rn, dtype=np.int64)
    for action in _constraint_actions(amb, k_linear):
        am = _restrict(action, source)
        an = _restrict(action, target)
        blocks.append((np.kron(am, eye_n) - np.kron(eye_m, an.T)) % amb.p)
    system = np.concatenate(blocks, axis=0)
    sols = linalg.nullspace(system, amb.p)
    basis = tuple(sol.reshape(rm, rn).copy() for sol in sols)
    return HomSpace(source, target, basis, k_linear)


class ModuleHom:
    """An equivariant map between two submodules, as a coordinate matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = np.asarray(matrix, dtype=np.int64)

    def apply(self, x: AlgebraElement):
        amb = self.source.ambient
        row = amb.to_digits(x)
        coords = linalg.coords_in_row_space(
            self.source.rows, self.source.pivots, row, amb.p
        )
        out = (coords @ self.matrix @ self.target.rows) % amb.p
        return amb.from_digits(out)

    def is_invertible(self):
        r = self.source.dim_p
        return self.target.dim_p == r and linalg.rank(self.matrix, self.source.ambient.p) == r

    def inverse(self):
        inv = linalg.inv_matrix(self.matrix, self.source.ambient.p)
        return ModuleHom(self.target, self.source, inv)


def modules_isomorphic(source, target, k_linear=False, seed=0,
                       exhaustive_cap=2**16, random_trials=1024):
    """Search for an invertible equivariant map.

    Returns a ModuleHom witness, None when no isomorphism exists (always
    definitive: unequal dimensions, an empty hom space, or an exhausted
    exhaustive scan), or INDETERMINATE when the randomized regime gives up.
    """
    if not source.ambient.same_ambient(target.ambient):
        raise MixedAmbient("modules live in different group algebras")
    if source.dim_p != target.dim_p:
        return None
    if source == target:
        return ModuleHom(source, target, np.eye(source.dim_p, dtype=np.int64))
    space = hom_space(source, target, k_linear=k_linear)
    t = space.dim_p
    if t == 0:
        return None
    p = source.ambient.p
    r = source.dim_p
    stack = np.stack(space.basis)
    if p**t <= exhaustive_cap:
        for c in range(1, p**t):
            coeffs = np.zeros(t, dtype=np.int64)
            rem = c
            for i in range(t):
                coeffs[i] = rem % p
                rem //= p
            mat = np.tensordot(coeffs, stack, axes=1) % p
            if linalg.rank(mat, p) == r:
                return ModuleHom(source, target, mat)
        return None
    rng = np.random.default_rng(seed)
    for _ in range(random_trials):
        coeffs = rng.integers(0, p, t, dtype=np.int64)
        if not coeffs.any():
            continue
        mat = np.tensordot(coeffs, stack, axes=1) % p
        if linalg.rank(mat, p) == r:
            return ModuleHom(source, target, mat)
    return INDETERMINATE


@dataclass(frozen=True)
class MvnWitness:
    """Elements (a, b) of the relevant ring with source = b a, target = a b."""

    a: object
    b: object
    source: object
    target: object

    def verify(self):
        if isinstance(self.a, AlgebraElement):
            return (self.b * self.a == self.source) and (self.a * self.b == self.target)
        return (
            self.b.compose(self.a) == self.source
            and self.a.compose(self.b) == self.target
        )


def mvn_idempotents(e, f, seed=0):
    """Witness for the equivalence of two idempotents of KG.

    Decides whether the left ideals they generate are isomorphic as left
    KG-modules, then builds u = phi(e), v = phi^{-1}(f) and verifies
    u v = e, v u = f exactly.  Returns the witness, None, or INDETERMINATE.
    """
    if not e.is_idempotent:
        raise NotIdempotent("first argument is not idempotent")
    if not f.is_idempotent:
        raise NotIdempotent("second argument is not idempotent")
    if not e.ambient.same_ambient(f.ambient):
        raise MixedAmbient("idempotents live in different group algebras")
    me = codes_mod.ideal_code(e)
    mf = codes_mod.ideal_code(f)
    if me.dim_p != mf.dim_p:
        return None
    iso = modules_isomorphic(me, mf, k_linear=True, seed=seed)
    if iso is None or iso is INDETERMINATE:
        return iso
    u = iso.apply(e)
    v = iso.inverse().apply(f)
    witness = MvnWitness(a=v, b=u, source=e, target=f)
    if not witness.verify():
        raise ConsistencyError("module isomorphism did not produce a valid witness pair")
    return witness


def mvn_projectors(proj_p, proj_q, k_linear=False, seed=0):
    """Witness for the equivalence of two FG-linear projectors.

    Builds A = phi o P and B = phi^{-1} o Q from an isomorphism of the
    images and verifies B A = P, A B = Q exactly.  With k_linear=True the
    isomorphism (and hence the witness pair) is K-linear, placing the
    equivalence in the endomorphism ring of KG as a KG-module.
    """
    for op in (proj_p, proj_q):
        if not op.is_projector():
            raise NotProjector("arguments must be projectors")
        if not op.is_fg_linear():
            raise NotProjector("arguments must be FG-linear")
    if not proj_p.ambient.same_ambient(proj_q.ambient):
        raise MixedAmbient("projectors act on different group algebras")
    amb = proj_p.ambient
    im_p = operators.image(proj_p)
    im_q = operators.image(proj_q)
    if im_p.dim_p != im_q.dim_p:
        return None
    iso = modules_isomorphic(im_p, im_q, k_linear=k_linear, seed=seed)
    if iso is None or iso is INDETERMINATE:
        return iso
    dp = proj_p.digit_matrix()
    dq = proj_q.digit_matrix()
    da = (dp[:, im_p.pivots] @ iso.matrix @ im_q.rows) % amb.p
    db = (dq[:, im_q.pivots] @ iso.inverse().matrix @ im_p.rows) % amb.p
    op_a = operators.from_digit_matrix(amb, da)
    op_b = operators.from_digit_matrix(amb, db)
    witness = MvnWitness(a=op_a, b=op_b, source=proj_p, target=proj_q)
    if not witness.verify():
        raise ConsistencyError("image isomorphism did not produce a valid witness pair")
    if not (op_a.is_fg_linear() and op_b.is_fg_linear()):
        raise ConsistencyError("witness operators fell outside the endomorphism ring")
    return witness
