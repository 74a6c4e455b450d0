import pytest
from hypothesis import given
from hypothesis import strategies as st

from christol.errors import DegreeMismatch, DivisionByZero, NotPrime, ReducibleModulus
from christol.gf import (FieldTooLarge, FqElem, field_arith, frobenius, make_field,
                         parse_field_spec)

from _strategies import elements, fields


def test_prime_field():
    F = make_field(2, 1)
    assert (F.p, F.e, F.q) == (2, 1, 2)


def test_f4_with_given_modulus():
    F = make_field(2, 2, [1, 1, 1])
    g = F.gen
    assert g * g + g + 1 == 0


def test_composite_characteristic():
    with pytest.raises(NotPrime):
        make_field(4, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, [1, 0, 1])     # (g+1)^2


def test_modulus_degree_checked():
    with pytest.raises(DegreeMismatch):
        make_field(2, 3, [1, 1, 1])


def test_field_size_cap():
    with pytest.raises(FieldTooLarge):
        make_field(2, 17)


def test_default_modulus_is_deterministic():
    assert make_field(2, 3) is make_field(2, 3)
    # smallest in lexicographic order of the low-to-high coefficient list
    assert tuple(make_field(3, 2).modulus) == (1, 0, 1)
    assert tuple(make_field(2, 3).modulus) == (1, 0, 1, 1)


def test_arith_examples():
    F2, F3, F4 = make_field(2), make_field(3), make_field(2, 2)
    assert field_arith(F2, "add", 1, 1) == F2(0)
    g = F4.gen
    assert field_arith(F4, "mul", g, g + 1) == F4.one
    assert field_arith(F3, "inv", 2) == F3(2)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        field_arith(make_field(3), "inv", 0)
    with pytest.raises(ZeroDivisionError):
        make_field(5)(1) / 0


def test_frobenius_examples():
    F4 = make_field(2, 2)
    g = F4.gen
    assert frobenius(F4, g, "forward") == g + 1
    assert frobenius(make_field(2), 1, "inverse") == 1
    assert frobenius(F4, frobenius(F4, g, "inverse"), "forward") == g


def test_coordinates_are_canonical():
    F = make_field(3, 2)
    for c in range(F.q):
        a = FqElem(F, c)
        assert all(0 <= v < 3 for v in a.coeffs)
        assert F(a.coeffs) == a
    assert FqElem(F, 0).coeffs == [0, 0]


def test_format_parse_roundtrip():
    for p, e in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)]:
        F = make_field(p, e)
        for c in range(F.q):
            assert F.parse_element(F.format_code(c)) == c


def test_parse_field_spec():
    assert parse_field_spec("p=2,e=1").q == 2
    F = parse_field_spec("p=2 e=2 modulus=1,1,1")
    assert F.q == 4
    assert parse_field_spec("p=5").q == 5


@st.composite
def triples(draw):
    F = draw(fields())
    a, b, c = (draw(elements(F)) for _ in range(3))
    return a, b, c


@given(triples())
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1


@given(triples())
def test_frobenius_additive(t):
    a, b, _ = t
    F = a.field
    assert frobenius(F, a + b) == frobenius(F, a) + frobenius(F, b)


@pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6),
                                 (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)])
def test_frobenius_inverse_sweep(p, e):
    F = make_field(p, e)
    for a in F.elements():
        assert frobenius(F, frobenius(F, a, "inverse"), "forward") == a


def test_vectorized_matches_scalar():
    import numpy as np
    F = make_field(3, 2)
    a = np.arange(F.q).repeat(F.q)
    b = np.tile(np.arange(F.q), F.q)
    prod = F.mul(a, b)
    summ = F.add(a, b)
    for x, y, m, s in zip(a, b, prod, summ):
        assert m == F.mul_code(int(x), int(y))
        assert s == F.add_code(int(x), int(y))
