import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finitype.numberfield import (
    QQ,
    FieldError,
    FieldMismatchError,
    NumberField,
    field_arith,
    field_sign,
    field_to_float,
)
from finitype.systems import golden_field
from oracle import GOLDEN, Q5

K = golden_field()
r = K.gen
CUBIC = NumberField([-2, 0, 0, 1], (1, 2), name="c")  # cube root of 2

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
golden_elems = st.tuples(fractions, fractions).map(lambda ab: K.element(ab))
cubic_elems = st.tuples(fractions, fractions, fractions).map(lambda abc: CUBIC.element(abc))


def to_q5(x):
    a, b = x.coeffs
    return Q5(a) + GOLDEN * b


# [PAPER] the defining relation
def test_r_squared_is_one_minus_r():
    assert field_arith(r, r, "mul") == 1 - r


# [DERIVED] r**3 = r * (1 - r) = r - r**2 = 2r - 1, checked with the sqrt(5) oracle
def test_r_cubed():
    assert r * (r * r) == 2 * r - 1
    assert to_q5(r * r * r) == GOLDEN * GOLDEN * GOLDEN


def test_add_zero_is_identity():
    x = K.element([Fraction(3, 7), -2])
    assert field_arith(x, K.zero, "add") == x


def test_signs():
    assert field_sign(K.zero) == 0
    assert field_sign(r - Fraction(1, 2)) == 1
    assert field_sign(r * r + r - 1) == 0
    assert field_sign(Fraction(3, 5) - r) == -1


def test_to_float_values():
    one = field_to_float(K.one, 53)
    assert one.lo == one.hi == 1
    enc = field_to_float(r, 53)
    assert enc.lo <= Fraction((math.sqrt(5) - 1) / 2) <= enc.hi or abs(float(enc.mid) - 0.6180339887498949) < 1e-15
    assert enc.width <= Fraction(4, 2**53)
    sq = field_to_float(r * r, 53)
    assert abs(float(sq.mid) - 0.3819660112501051) < 1e-15


def test_to_float_needs_16_bits():
    with pytest.raises(ValueError):
        field_to_float(r, 8)


def test_inverse_of_r():
    assert 1 / r == 1 + r


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        r / K.zero


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        field_arith(r, QQ(1), "add")


def test_field_validation():
    with pytest.raises(FieldError):
        NumberField([-1, 1, 1], (1, 2))  # no root in [1, 2]
    with pytest.raises(FieldError):
        NumberField([1, -2, 1], (0, 2))  # (x - 1)**2 is not square-free
    with pytest.raises(FieldError):
        NumberField([-1, 0, 1], (-2, 2))  # two roots, and equal signs at the ends


def test_structural_equality():
    assert golden_field() == K
    assert hash(golden_field()) == hash(K)


def test_str():
    assert str(1 - r) == "1 - r"
    assert str(K.zero) == "0"


@settings(max_examples=300, deadline=None)
@given(golden_elems, golden_elems, golden_elems)
def test_ring_axioms_golden(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@settings(max_examples=300, deadline=None)
@given(cubic_elems, cubic_elems, cubic_elems)
def test_ring_axioms_cubic(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)


@settings(max_examples=200, deadline=None)
@given(golden_elems, golden_elems)
def test_division_roundtrip(x, y):
    if not y.is_zero():
        assert (x * y) / y == x


@settings(max_examples=200, deadline=None)
@given(golden_elems)
def test_sign_matches_oracle(x):
    # oracle decides the sign of a + b*sqrt(5) by squaring
    assert x.sign() == to_q5(x).sign()
    enc = field_to_float(x, 128)
    if enc.excludes_zero():
        assert (enc.lo > 0) == (x.sign() > 0)


@settings(max_examples=200, deadline=None)
@given(golden_elems, golden_elems)
def test_products_match_oracle(x, y):
    assert to_q5(x * y) == to_q5(x) * to_q5(y)


@settings(max_examples=100, deadline=None)
@given(cubic_elems)
def test_cubic_enclosure(x):
    enc = field_to_float(x, 64)
    c = 2 ** (1 / 3)
    approx = sum(float(a) * c**i for i, a in enumerate(x.coeffs))
    assert float(enc.lo) - 1e-9 * (1 + abs(approx)) <= approx <= float(enc.hi) + 1e-9 * (1 + abs(approx))
    assert enc.width <= Fraction(4, 2**64) * max(1, abs(enc.lo), abs(enc.hi))
