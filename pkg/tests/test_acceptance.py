"""Acceptance suite: one test per criterion, exact arithmetic throughout.

Each test prints a PASS line with its measured runtime; run with
`pytest tests/test_acceptance.py -v -s` to see them.  All tolerances are
exact equality (finite field arithmetic); runtime limits are asserted
against the wall clock.
"""

import itertools
import time

import numpy as np
import pytest

from agcodes import cli, codes, forms, linalg, operators
from agcodes.algebra import AlgebraElement, multiply, parse_element
from agcodes.equivalence import (
    INDETERMINATE,
    modules_isomorphic,
    mvn_idempotents,
    mvn_projectors,
)

from conftest import (
    PROPERTY_AMBIENTS,
    make_ambient,
    random_coefficientwise_operator,
    random_ideal,
    random_submodule,
)


class Timer:
    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.monotonic() - self.start


def report(num, label, timer, limit):
    print(f"PASS criterion {num}: {label} ({timer.elapsed:.2f}s < {limit}s)")
    assert timer.elapsed < limit


def test_criterion_01_f8_c3_example():
    with Timer() as t:
        amb = make_ambient(2, 3, "cyclic:3")
        e = parse_element(amb, "1 + g + g^2")
        restricted = codes.restricted_code(e)
        assert sorted(map(str, restricted.codewords())) == sorted(["0", str(e)])
        assert str(codes.parameters(restricted)) == "(3, 2^1, 3)"
        assert forms.pair(forms.TE, e, e) == amb.tower.one
        assert codes.is_lcd(forms.TE, restricted)
        dual = forms.orthogonal(forms.TE, restricted)
        assert str(codes.parameters(dual)) == "(3, 2^8, 1)"
        # any restricted idempotent code has F-dimension at most dim_F(FG) = n
        assert dual.dim_f == 8 and dual.dim_f > amb.n
    report(1, "F_8/C_3 worked example", t, 1.0)


def test_criterion_02_f9_c2_example():
    with Timer() as t:
        amb = make_ambient(3, 2, "cyclic:2")
        e = parse_element(amb, "2*(1+g)")
        assert e.is_idempotent
        restricted = codes.restricted_code(e)
        assert restricted == codes.from_elements(amb, [parse_element(amb, "1+g")])
        ones = np.ones((2, 2), dtype=np.int64)
        for form in (forms.TE, forms.TH):
            gram = codes.gram_on_fg(form, e)
            assert np.array_equal(gram, ones)
            assert linalg.fm_rank(amb.tower, gram) == 1 == restricted.dim_f
            assert codes.lcd_criterion_rhoe(form, e)
            assert codes.is_lcd(form, restricted)
    report(2, "F_9/C_2 Gram-rank example", t, 1.0)


def test_criterion_03_f4_c6_example():
    with Timer() as t:
        amb = make_ambient(2, 2, "cyclic:6")
        e = parse_element(amb, "(a^2)*g2 + a*g4")
        assert e.is_idempotent
        restricted = codes.restricted_code(e)
        assert restricted.dim_f == 6 and restricted.size == 64
        params = codes.parameters(restricted)
        assert (params.n, params.r, params.d) == (6, 6, 2)
        assert str(params) == "(6, 2^6, 2)"
        assert not codes.gram_on_fg(forms.TE, e).any()
        assert codes.selfdual_criterion_rhoe(forms.TE, e)
        assert codes.is_self_dual(forms.TE, restricted)
        assert not codes.is_lcd(forms.TE, restricted)
    report(3, "F_4/C_6 self-dual example", t, 1.0)


def test_criterion_04_f9_klein_example():
    with Timer() as t:
        amb = make_ambient(3, 2, "product:cyclic:2xcyclic:2")
        tw = amb.tower
        two = tw.embed(2)
        assert forms.pair(forms.TE, amb.one(), amb.one()) == two
        assert forms.pair(forms.TH, amb.one(), amb.one()) == two
        subspace = operators.SubfieldSubspace(tw, [1])
        proj = operators.coefficientwise_projector(amb, subspace, forms.TH)
        assert proj.is_fg_linear() and proj.is_projector()
        assert operators.is_self_adjoint(forms.TH, proj)
        assert operators.is_self_adjoint(forms.TE, proj)
        image = operators.image(proj)
        assert codes.is_lcd(forms.TH, image) and codes.is_lcd(forms.TE, image)
        assert operators.as_right_multiplication(proj) is None
    report(4, "F_9/(C_2 x C_2) coefficientwise projector", t, 1.0)


def test_criterion_05_adjoint_identity_suite():
    with Timer() as t:
        rng = np.random.default_rng(5)
        for (q, m, spec) in PROPERTY_AMBIENTS:
            amb = make_ambient(q, m, spec)
            hermitian = amb.m % 2 == 0
            for _ in range(1000):
                a = amb.random_element(rng)
                x = amb.random_element(rng)
                y = amb.random_element(rng)
                astar = a.star()
                for form in (forms.E, forms.TE):
                    assert forms.pair(form, multiply(a, x), y) == forms.pair(
                        form, x, multiply(astar, y))
                    assert forms.pair(form, multiply(x, a), y) == forms.pair(
                        form, x, multiply(y, astar))
                if hermitian:
                    abar = a.conj().star()
                    for form in (forms.H, forms.TH):
                        assert forms.pair(form, multiply(a, x), y) == forms.pair(
                            form, x, multiply(abar, y))
                        assert forms.pair(form, multiply(x, a), y) == forms.pair(
                            form, x, multiply(y, abar))
    report(5, "adjoint identities, 1000 triples x 5 ambients", t, 30.0)


def test_criterion_06_duality_suite():
    with Timer() as t:
        rng = np.random.default_rng(6)
        for (q, m, spec) in PROPERTY_AMBIENTS:
            amb = make_ambient(q, m, spec)
            tw = amb.tower
            for form in forms.trace_forms_for(amb):
                for _ in range(100):
                    c = random_submodule(amb, rng)
                    dual = forms.orthogonal(form, c)
                    assert dual.is_submodule and dual.verify_submodule()
                    assert c.dim_f + dual.dim_f == amb.mn
                    assert forms.orthogonal(form, dual) == c
            # exhaustive Euclidean orthogonality for random left ideals
            all_coeffs = np.zeros((amb.size, amb.n), dtype=np.int64)
            for idx, x in enumerate(amb.iter_elements()):
                all_coeffs[idx] = x.coeffs
            for _ in range(10):
                ideal = random_ideal(amb, rng)
                via_trace = forms.euclidean_orthogonal_of_ideal(forms.E, ideal)
                mask = np.ones(amb.size, dtype=bool)
                for c in ideal.basis_elements():
                    prods = tw.vmul(all_coeffs, c.coeffs[None, :])
                    mask &= tw.vsum(prods, axis=1) == 0
                assert int(mask.sum()) == via_trace.size
                for idx in np.nonzero(mask)[0][:64]:
                    x = AlgebraElement(amb, all_coeffs[idx])
                    assert via_trace.contains(x)
    report(6, "duality suite, 100 submodules x 5 ambients + E-duals", t, 60.0)


def test_criterion_07_projector_calculus_suite():
    with Timer() as t:
        rng = np.random.default_rng(7)
        scan_ambients = [
            (2, 1, "cyclic:3"),
            (3, 2, "cyclic:2"),
            (2, 3, "cyclic:3"),
            (2, 2, "cyclic:6"),
            (2, 1, "symmetric:3"),
        ]
        for (q, m, spec) in scan_ambients:
            amb = make_ambient(q, m, spec)
            assert amb.size <= 2**12
            one = amb.one()
            for e in codes.enumerate_idempotents(amb):
                op = operators.rho(e)
                opstar = operators.rho(e.star())
                assert operators.image(op) == codes.ideal_code(e)
                assert operators.kernel(op) == codes.ideal_code(one - e)
                assert operators.image(opstar) == codes.ideal_code(e.star())
                assert operators.kernel(opstar) == codes.ideal_code(one - e.star())
                assert operators.adjoint(forms.TE, op) == opstar
            for _ in range(20):
                s = operators.rho(amb.random_element(rng)) + \
                    random_coefficientwise_operator(amb, rng)
                u = operators.rho(amb.random_element(rng))
                assert s.is_fg_linear() and u.is_fg_linear()
                for form in forms.trace_forms_for(amb):
                    assert operators.adjoint(form, operators.adjoint(form, s)) == s
                    assert operators.adjoint(form, s.compose(u)) == operators.adjoint(
                        form, u).compose(operators.adjoint(form, s))
    report(7, "projector calculus over scanned idempotents", t, 60.0)


def test_criterion_08_theorem_cross_checks():
    with Timer() as t:
        scan_ambients = [
            (2, 3, "cyclic:3"),   # |KG| = 512
            (4, 2, "cyclic:2"),   # |KG| = 256
            (2, 2, "cyclic:2"),   # alternative small reading
            (2, 1, "cyclic:3"),
            (2, 2, "cyclic:6"),
            (2, 1, "symmetric:3"),
        ]
        checked = 0
        for (q, m, spec) in scan_ambients:
            amb = make_ambient(q, m, spec)
            for e in codes.enumerate_idempotents(amb):
                restricted = codes.restricted_code(e)
                ideal = codes.ideal_code(e)
                for form in forms.trace_forms_for(amb):
                    assert codes.lcd_criterion_rhoe(form, e) == codes.is_lcd(
                        form, restricted)
                    assert codes.selfdual_criterion_rhoe(form, e) == codes.is_self_dual(
                        form, restricted)
                    assert codes.ideal_selfdual_idempotent(form, e) == codes.is_self_dual(
                        form, ideal)
                    checked += 1
        assert checked >= 20
    report(8, f"Gram criteria vs direct duals on {checked} idempotent/form pairs", t, 120.0)


def test_criterion_09_lcd_characterization():
    with Timer() as t:
        rng = np.random.default_rng(9)
        # direction 1: TE-LCD codes give self-adjoint projectors
        lcd_corpus = []
        attempts = 0
        while len(lcd_corpus) < 50 and attempts < 4000:
            attempts += 1
            q, m, spec = PROPERTY_AMBIENTS[attempts % len(PROPERTY_AMBIENTS)]
            amb = make_ambient(q, m, spec)
            c = random_submodule(amb, rng)
            if codes.is_lcd(forms.TE, c):
                lcd_corpus.append(c)
        assert len(lcd_corpus) >= 50
        for c in lcd_corpus:
            proj = operators.projector_from_summand(
                c, forms.orthogonal(forms.TE, c))
            assert operators.is_self_adjoint(forms.TE, proj)
            assert operators.image(proj) == c

        # direction 2: self-adjoint projectors have TE-LCD images.
        # Sources independent of direction 1: coefficientwise projections,
        # right multiplication by self-star idempotents, identity/zero, and
        # the complement I - P of anything already collected.
        converse_ambients = PROPERTY_AMBIENTS + [
            (3, 1, "symmetric:3"),
            (2, 1, "dihedral:4"),
            (3, 1, "cyclic:4"),
            (5, 1, "cyclic:2"),
            (2, 2, "cyclic:4"),
            (3, 2, "product:cyclic:2xcyclic:2"),
        ]
        projectors = []
        for (q, m, spec) in converse_ambients:
            amb = make_ambient(q, m, spec)
            tw = amb.tower
            projectors.append(operators.identity_operator(amb))
            projectors.append(operators.zero_operator(amb))
            if amb.m >= 2:
                for c in range(1, tw.order):
                    if tw.trace(tw.mul(c, c)) != 0:
                        u = operators.SubfieldSubspace(tw, [c])
                        projectors.append(
                            operators.coefficientwise_projector(amb, u, forms.TE))
            pool = "K" if amb.size <= 2**12 else "F"
            for e in codes.enumerate_idempotents(amb, pool=pool, cap=2**16)[:20]:
                if e.star() == e:
                    projectors.append(operators.rho(e))
        projectors.extend(
            [operators.identity_operator(p.ambient) - p for p in list(projectors)]
        )
        seen = set()
        unique = []
        for p in projectors:
            key = (id(p.ambient), p.fmatrix.tobytes())
            if key not in seen:
                seen.add(key)
                unique.append(p)
        projectors = unique
        assert len(projectors) >= 50
        for proj in projectors:
            assert proj.is_projector() and proj.is_fg_linear()
            assert operators.is_self_adjoint(forms.TE, proj)
            assert codes.is_lcd(forms.TE, operators.image(proj))
    report(9, f"LCD characterization, {len(lcd_corpus)} codes / {len(projectors)} projectors", t, 120.0)


def test_criterion_10_mvn_suite():
    with Timer() as t:
        indeterminate_count = 0
        scan_ambients = [
            (2, 3, "cyclic:3"),   # 4 idempotents
            (4, 2, "cyclic:2"),   # 2 idempotents
            (2, 1, "symmetric:3"),  # 16 idempotents, non-commutative
        ]
        for (q, m, spec) in scan_ambients:
            amb = make_ambient(q, m, spec)
            idems = codes.enumerate_idempotents(amb)
            pairs = list(itertools.product(idems, repeat=2))
            if len(pairs) > 300:
                pairs = pairs[:300]
            for e, f in pairs:
                ideal_e, ideal_f = codes.ideal_code(e), codes.ideal_code(f)
                leg1 = modules_isomorphic(ideal_e, ideal_f, k_linear=True)
                leg2 = mvn_projectors(operators.rho(e), operators.rho(f),
                                      k_linear=True)
                leg3 = mvn_idempotents(e, f)
                leg4 = modules_isomorphic(
                    codes.ideal_code(e.star()), codes.ideal_code(f.star()),
                    k_linear=True)
                statuses = []
                for leg in (leg1, leg2, leg3, leg4):
                    if leg is INDETERMINATE:
                        indeterminate_count += 1
                        statuses.append(None)
                    else:
                        statuses.append(leg is not None)
                assert statuses[0] == statuses[1] == statuses[2] == statuses[3]
                if statuses[2]:
                    assert leg3.verify()
                    assert multiply(leg3.b, leg3.a) == e
                    assert multiply(leg3.a, leg3.b) == f
                    assert leg2.verify()
            # adjoint lemma on a slice of projector pairs
            projs = [operators.rho(e) for e in idems[:6]]
            for p, qq in itertools.combinations(projs, 2):
                for form in forms.trace_forms_for(amb):
                    direct = mvn_projectors(p, qq)
                    adj = mvn_projectors(operators.adjoint(form, p),
                                         operators.adjoint(form, qq))
                    assert (direct is not None) == (adj is not None)
        assert indeterminate_count == 0
    report(10, "Murray-von Neumann suite, exhaustive pairs, 0 indeterminate", t, 120.0)


def test_criterion_11_module_dual_suite():
    with Timer() as t:
        rng = np.random.default_rng(11)
        for (q, m, spec) in PROPERTY_AMBIENTS:
            amb = make_ambient(q, m, spec)
            trace_forms = forms.trace_forms_for(amb)
            for i in range(100):
                c = random_submodule(amb, rng)
                form = trace_forms[i % len(trace_forms)]
                rep = codes.module_dual_check(form, c, samples=10, seed=i)
                assert rep.dimension_ok and rep.kernel_ok and rep.equivariance_ok
    report(11, "module-dual suite, 100 submodules x 5 ambients", t, 120.0)


def test_criterion_12_verify_paper_command(capsys):
    with Timer() as t:
        assert cli.main(["verify-paper"]) == 0
        assert cli.main(["verify-paper", "--inject-fault"]) == 1
        capsys.readouterr()
    report(12, "verify-paper exit codes (clean 0, injected fault 1)", t, 30.0)
