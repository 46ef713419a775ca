"""Additive left group codes: F-subspaces of KG in canonical echelon form.

A code is stored as the reduced row echelon basis (over the prime field, in
digit coordinates) of its underlying GF(p)-space; since rref is canonical,
code equality is matrix equality.  Every AdditiveCode is closed under
scaling by F; submodule status (closure under the left G-action) is carried
as a flag set by the constructors that guarantee it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, forms, linalg
from .algebra import AlgebraElement, Ambient
from .errors import (
    AgcError,
    ConsistencyError,
    MixedAmbient,
    NotIdempotent,
    NotKLinear,
    NotProjector,
    NotSubmodule,
    TooLarge,
    TooLargeToEnumerate,
)

DEFAULT_DISTANCE_CAP = 2**20
DEFAULT_SCAN_CAP = 2**16


class AdditiveCode:
    """An F-subspace of KG with a canonical prime-field echelon basis."""

    def __init__(self, amb: Ambient, rows, is_submodule=False, check_f_stable=True):
        self.ambient = amb
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, amb.nd) % amb.p
        red, pivots = linalg.rref(rows, amb.p)
        red.setflags(write=False)
        self.rows = red
        self.pivots = pivots
        self.is_submodule = is_submodule
        self._k_linear = None
        if check_f_stable and amb.tower.a > 1 and not self._f_stable():
            raise AgcError("rows do not span an F-stable subspace of KG")
        if self.dim_p % amb.tower.a:
            raise ConsistencyError("F-stable space has GF(p)-dimension divisible by [F:GF(p)]")

    def _f_stable(self):
        gamma = self.ambient.scalar_multiplication_digits(self.ambient.tower.f_generator)
        moved = (self.rows @ gamma) % self.ambient.p
        return all(self.contains_row(r) for r in moved)

    @property
    def dim_p(self):
        return len(self.rows)

    @property
    def dim_f(self):
        return self.dim_p // self.ambient.tower.a

    @property
    def size(self):
        return self.ambient.p**self.dim_p

    def is_zero(self):
        return self.dim_p == 0

    def is_full(self):
        return self.dim_p == self.ambient.nd

    def contains_row(self, row):
        return linalg.in_row_space(self.rows, self.pivots, row, self.ambient.p)

    def contains(self, x: AlgebraElement):
        return self.contains_row(self.ambient.to_digits(x))

    def basis_elements(self):
        return [self.ambient.from_digits(r) for r in self.rows]

    def codewords(self, cap=DEFAULT_DISTANCE_CAP):
        """All codewords as elements, in odometer order over the basis."""
        if self.size > cap:
            raise TooLargeToEnumerate(self.size, cap)
        p = self.ambient.p
        r = self.dim_p
        for t in range(self.size):
            coeffs = np.zeros(r, dtype=np.int64)
            rem = t
            for i in range(r):
                coeffs[i] = rem % p
                rem //= p
            yield self.ambient.from_digits((coeffs @ self.rows) % p if r else np.zeros(self.ambient.nd, dtype=np.int64))

    def random_element(self, rng):
        if self.dim_p == 0:
            return self.ambient.zero()
        coeffs = rng.integers(0, self.ambient.p, self.dim_p, dtype=np.int64)
        return self.ambient.from_digits((coeffs @ self.rows) % self.ambient.p)

    def verify_submodule(self):
        """Exhaustive closure check under every left translation."""
        for g in range(self.ambient.n):
            lg = self.ambient.left_translation_digits(g)
            moved = (self.rows @ lg) % self.ambient.p
            if not all(self.contains_row(r) for r in moved):
                return False
        return True

    def is_k_linear(self):
        """Closure under scaling by the whole of K."""
        if self._k_linear is None:
            alpha = self.ambient.scalar_multiplication_digits(self.ambient.tower.alpha)
            moved = (self.rows @ alpha) % self.ambient.p
            self._k_linear = all(self.contains_row(r) for r in moved)
        return self._k_linear

    def __eq__(self, other):
        if not isinstance(other, AdditiveCode):
            return NotImplemented
        return self.ambient.same_ambient(other.ambient) and np.array_equal(
            self.rows, other.rows
        )

    def __hash__(self):
        return hash((self.ambient.nd, self.rows.tobytes()))

    def __repr__(self):
        tag = "submodule" if self.is_submodule else "subspace"
        return f"AdditiveCode(dim_F={self.dim_f}, {tag} of KG, n={self.ambient.n})"


# -- constructors ----------------------------------------------------------------


def zero_code(amb):
    return AdditiveCode(amb, np.zeros((0, amb.nd), dtype=np.int64), is_submodule=True,
                        check_f_stable=False)


def full_code(amb):
    return AdditiveCode(amb, np.eye(amb.nd, dtype=np.int64), is_submodule=True,
                        check_f_stable=False)


def _f_closure_rows(amb, elems):
    tw = amb.tower
    rows = []
    for x in elems:
        for gamma in tw.gamma_powers:
            rows.append(amb.to_digits(x.scaled(tw.element(gamma))))
    return rows


def from_elements(amb, elems, is_submodule=False):
    """F-span of the given elements (closed under F-scaling by construction)."""
    elems = list(elems)
    if not elems:
        return zero_code(amb)
    rows = _f_closure_rows(amb, elems)
    return AdditiveCode(amb, np.array(rows), is_submodule=is_submodule,
                        check_f_stable=False)


def span_fg(amb, generators):
    """Smallest left FG-submodule containing the generators.

    The F-span of all left translates is already closed under the G-action,
    so a single closure pass reaches the fixed point.
    """
    generators = list(generators)
    if not generators:
        return zero_code(amb)
    translates = [x.left_translate(g) for x in generators for g in range(amb.n)]
    rows = _f_closure_rows(amb, translates)
    return AdditiveCode(amb, np.array(rows), is_submodule=True, check_f_stable=False)


def span_ideal(amb, generators):
    """Smallest left ideal of KG containing the generators (K-linear span
    of all left translates)."""
    generators = list(generators)
    if not generators:
        return zero_code(amb)
    tw = amb.tower
    rows = []
    for x in generators:
        for g in range(amb.n):
            moved = x.left_translate(g)
            for t in range(amb.d):
                scaled = AlgebraElement(amb, tw.vscale(tw.pow(tw.alpha, t), moved.coeffs))
                rows.append(amb.to_digits(scaled))
    return AdditiveCode(amb, np.array(rows), is_submodule=True, check_f_stable=False)


def fg_code(amb):
    """FG inside KG: the F-span of the group elements."""
    return span_fg(amb, [amb.one()])


def restricted_code(e):
    """FGe, the restricted code of an element e (equals span_fg([e]))."""
    return span_fg(e.ambient, [e])


def ideal_code(e):
    """KGe, the left ideal generated by e."""
    return span_ideal(e.ambient, [e])


# -- basic lattice operations ------------------------------------------------------


def intersection(c1, c2):
    if not c1.ambient.same_ambient(c2.ambient):
        raise MixedAmbient("codes live in different group algebras")
    rows = linalg.intersect_row_spaces(c1.rows, c2.rows, c1.ambient.p)
    return AdditiveCode(c1.ambient, rows,
                        is_submodule=c1.is_submodule and c2.is_submodule,
                        check_f_stable=False)


def sum_codes(c1, c2):
    if not c1.ambient.same_ambient(c2.ambient):
        raise MixedAmbient("codes live in different group algebras")
    rows = linalg.sum_row_spaces(c1.rows, c2.rows, c1.ambient.p)
    return AdditiveCode(c1.ambient, rows,
                        is_submodule=c1.is_submodule and c2.is_submodule,
                        check_f_stable=False)


# -- parameters ---------------------------------------------------------------------


@dataclass(frozen=True)
class CodeParameters:
    """(n, q^r, d): length, size as a power of q, minimum distance."""

    n: int
    q: int
    r: int
    d: int | None

    @property
    def size(self):
        return self.q**self.r

    def __str__(self):
        d = "-" if self.d is None else self.d
        return f"({self.n}, {self.q}^{self.r}, {d})"


def min_distance(code, cap=DEFAULT_DISTANCE_CAP):
    """Exact minimum Hamming weight by full enumeration (weight counts
    nonzero K-coefficients per group element)."""
    if code.dim_p == 0:
        return None
    if code.size > cap:
        raise TooLargeToEnumerate(code.size, cap)
    return int(_kernels.min_block_weight(code.rows, code.ambient.p, code.ambient.d))


def parameters(code, cap=DEFAULT_DISTANCE_CAP):
    return CodeParameters(
        n=code.ambient.n, q=code.ambient.tower.q, r=code.dim_f,
        d=min_distance(code, cap),
    )


# -- duality ------------------------------------------------------------------------


def is_lcd(form, code):
    """C is LCD when C meets its dual trivially; cross-checked against the
    equivalent direct-sum decomposition of KG."""
    dual = forms.orthogonal(form, code)
    trivial = intersection(code, dual).dim_p == 0
    spans = sum_codes(code, dual).dim_p == code.ambient.nd
    if trivial != spans:
        raise ConsistencyError("LCD checks disagree between intersection and sum")
    return trivial


def is_self_dual(form, code):
    if 2 * code.dim_p != code.ambient.nd:
        return False
    return code == forms.orthogonal(form, code)


def gram_on_fg(form, e):
    """The n x n matrix over F with entries <g_i e, g_j e> for the group
    element basis of FG, in table order."""
    amb = e.ambient
    images = [amb.group_element(i) * e for i in range(amb.n)]
    mat = np.zeros((amb.n, amb.n), dtype=np.int64)
    for i in range(amb.n):
        for j in range(amb.n):
            mat[i, j] = forms.pair(form, images[i], images[j]).code
    return mat


def lcd_criterion_rhoe(form, e):
    """Gram-rank test: FGe is LCD iff rank(M_e) over F equals dim_F(FGe).

    Always cross-checked against the direct dual computation.
    """
    if not e.is_idempotent:
        raise NotIdempotent("the Gram-rank criterion needs an idempotent")
    mat = gram_on_fg(form, e)
    rk = linalg.fm_rank(e.ambient.tower, mat)
    restricted = restricted_code(e)
    crit = rk == restricted.dim_f
    direct = is_lcd(form, restricted)
    if crit != direct:
        raise ConsistencyError("Gram-rank LCD criterion disagrees with the dual computation")
    return crit


def selfdual_criterion_rhoe(form, e):
    """Zero-Gram test: FGe is self-dual iff M_e = 0 and dim_F(FGe) = mn/2.

    Always cross-checked against the direct dual computation.
    """
    if not e.is_idempotent:
        raise NotIdempotent("the zero-Gram criterion needs an idempotent")
    mat = gram_on_fg(form, e)
    restricted = restricted_code(e)
    crit = (not mat.any()) and 2 * restricted.dim_f == e.ambient.mn
    direct = is_self_dual(form, restricted)
    if crit != direct:
        raise ConsistencyError("zero-Gram self-dual criterion disagrees with the dual computation")
    return crit


def ideal_selfdual_idempotent(form, e):
    """Self-duality test for the ideal KGe: star(e) = 1 - e (trace-Euclidean)
    or star(conj(e)) = 1 - e (trace-Hermitian).

    Cross-checked against the direct self-duality of KGe.
    """
    if not e.is_idempotent:
        raise NotIdempotent("the star-complement test needs an idempotent")
    amb = e.ambient
    theta = e.conj().star() if form.is_hermitian else e.star()
    crit = theta == amb.one() - e
    direct = is_self_dual(form.trace_version(), ideal_code(e))
    if crit != direct:
        raise ConsistencyError("star-complement test disagrees with the dual computation")
    return crit


def lcd_ideal_idempotent(form, code):
    """For an LCD left ideal, produce the self-adjoint idempotent generator.

    Returns None when the code is not LCD.  The generator is P(1) for the
    projection P onto the code along its dual; all claimed identities are
    re-verified before returning.
    """
    from . import operators

    if form.is_trace:
        raise AgcError("lcd_ideal_idempotent expects the K-valued forms E or H")
    if not code.is_submodule or not code.verify_submodule():
        raise NotSubmodule("code is not a left submodule")
    if not code.is_k_linear():
        raise NotKLinear("code is not a left ideal (not K-stable)")
    tform = form.trace_version()
    if not is_lcd(tform, code):
        return None
    dual = forms.orthogonal(tform, code)
    proj = operators.projector_from_summand(code, dual)
    e = proj.apply(code.ambient.one())
    theta = e.conj().star() if form.is_hermitian else e.star()
    if not e.is_idempotent or theta != e or ideal_code(e) != code:
        raise ConsistencyError("projector onto an LCD ideal did not yield a self-adjoint generator")
    return e


# -- module duals ---------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleDualReport:
    dimension_ok: bool
    kernel_ok: bool
    equivariance_ok: bool
    dim_code: int
    dim_dual: int

    @property
    def ok(self):
        return self.dimension_ok and self.kernel_ok and self.equivariance_ok


def module_dual_check(form, code, samples=20, seed=0):
    """Check the natural isomorphism between KG modulo the dual and the
    space of F-linear functionals on the code.

    Three assertions: the dimension count, the kernel of x -> <x, .> equals
    the dual (the kernel is recomputed from the raw pairing, independently
    of the Gram-based dual), and G-equivariance of the pairing on sampled
    triples.
    """
    if not code.is_submodule:
        raise NotSubmodule("module dual checks need a left submodule")
    amb = code.ambient
    tw = amb.tower
    dual = forms.orthogonal(form, code)
    dimension_ok = amb.mn - dual.dim_f == code.dim_f

    # radical of the pairing KG x C, from direct pair evaluations
    basis_elems = [amb.from_digits(r) for r in code.rows]
    delta = [amb.from_digits(row) for row in np.eye(amb.nd, dtype=np.int64)]
    conditions = np.zeros((code.dim_p * tw.a, amb.nd), dtype=np.int64)
    for k, c in enumerate(basis_elems):
        for u, du in enumerate(delta):
            value = forms.pair(form, du, c).code
            pcoords = tw.f_to_pcoords(value)
            for t in range(tw.a):
                conditions[k * tw.a + t, u] = pcoords[t]
    radical_rows = linalg.nullspace(conditions, amb.p)
    kernel_ok = np.array_equal(radical_rows, dual.rows)

    rng = np.random.default_rng(seed)
    equivariance_ok = True
    for _ in range(samples):
        g = int(rng.integers(amb.n))
        x = amb.random_element(rng)
        c = code.random_element(rng)
        lhs = forms.pair(form, x.left_translate(g), c)
        rhs = forms.pair(form, x, c.left_translate(amb.group.inv(g)))
        if lhs != rhs:
            equivariance_ok = False
            break
    return ModuleDualReport(dimension_ok, kernel_ok, equivariance_ok,
                            code.dim_f, dual.dim_f)


# -- projector images -------------------------------------------------------------------


def restricted_projector_code(proj, code):
    """The image P(N) of a submodule N under an FG-linear projector P."""
    if not proj.is_projector():
        raise NotProjector("operator is not idempotent")
    if not proj.is_fg_linear():
        raise NotProjector("operator does not commute with the G-action")
    if not code.is_submodule:
        raise NotSubmodule("restricted projector codes need a submodule argument")
    amb = code.ambient
    rows = (code.rows @ proj.digit_matrix()) % amb.p
    return AdditiveCode(amb, rows, is_submodule=True, check_f_stable=False)


def fg_complement(code, rng=None, max_random_attempts=200):
    """A submodule complement of `code` in KG, by greedy orbit extension.

    Guaranteed to exist in the semisimple regime (char(F) does not divide
    |G|); raises AgcError when the greedy search cannot complete.
    """
    if not code.is_submodule:
        raise NotSubmodule("complements are built for submodules")
    amb = code.ambient
    comp = zero_code(amb)
    if rng is None:
        rng = np.random.default_rng(0)

    def candidates():
        for row in np.eye(amb.nd, dtype=np.int64):
            yield amb.from_digits(row)
        for _ in range(max_random_attempts):
            yield amb.random_element(rng)

    while code.dim_p + comp.dim_p < amb.nd:
        reach = sum_codes(code, comp)
        for v in candidates():
            if reach.contains(v):
                continue
            extended = sum_codes(comp, span_fg(amb, [v]))
            if intersection(code, extended).dim_p == 0:
                comp = extended
                break
        else:
            raise AgcError("no FG-complement found; the module may not be a direct summand")
    return comp


# -- idempotent enumeration ----------------------------------------------------------


def enumerate_idempotents(amb, support=None, pool="K", cap=DEFAULT_SCAN_CAP):
    """All idempotents with coefficients from `pool` on the given support.

    pool is "K" (default), "F", or an explicit array of field codes.  The
    scan order is deterministic: odometer over the support positions with
    ascending coefficient codes.
    """
    tw = amb.tower
    if support is None:
        support = list(range(amb.n))
    support = [int(s) for s in support]
    if isinstance(pool, str):
        if pool.upper() == "K":
            pool_arr = np.arange(tw.order, dtype=np.int64)
        elif pool.upper() == "F":
            pool_arr = np.asarray(tw.f_elements, dtype=np.int64)
        else:
            raise AgcError(f"unknown coefficient pool {pool!r}")
    else:
        pool_arr = np.asarray(pool, dtype=np.int64)
    count = len(pool_arr) ** len(support)
    if count > cap:
        raise TooLargeToEnumerate(count, cap)
    if not tw.has_tables:
        raise TooLarge("idempotent scans need a table-backed field (|K| <= 2^16)")
    rows = _kernels.scan_idempotents(
        amb.group.table, np.asarray(support, dtype=np.int64), pool_arr,
        tw._exp, tw._log, tw._digits_table, tw._powp, tw.p,
    )
    return [AlgebraElement(amb, row) for row in rows]
