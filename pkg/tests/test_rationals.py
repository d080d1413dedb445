from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lctkit.errors import DomainError, UsageError
from lctkit.rationals import (INFINITY, ExtendedNat, format_rational, parse_extended_nat,
                              parse_rational, phi_sm_alpha_member, phi_sm_witness,
                              t1_member)

nonzero = st.integers(min_value=1, max_value=10 ** 6)
signed = st.integers(min_value=-(10 ** 6), max_value=10 ** 6)


def test_parse_format_round_trip():
    assert parse_rational("3/5") == Fraction(3, 5)
    assert parse_rational("7") == Fraction(7)
    assert parse_rational("0.45") == Fraction(9, 20)
    assert format_rational(Fraction(3, 5)) == "3/5"
    assert format_rational(Fraction(7)) == "7"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_parse_rejects_garbage():
    for bad in ("", "x", "1/0", "1//2"):
        with pytest.raises(UsageError):
            parse_rational(bad)


@given(signed, nonzero, signed, nonzero)
@settings(max_examples=200)
def test_field_round_trips(p, q, r, s):
    a, b = Fraction(p, q), Fraction(r, s)
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a
    assert a.denominator > 0
    assert __import__("math").gcd(a.numerator, a.denominator) == 1


def test_extended_nat_basics():
    assert INFINITY.is_infinite
    assert INFINITY.one_minus_reciprocal() == 1
    assert INFINITY.reciprocal() == 0
    assert ExtendedNat(3) < INFINITY
    assert ExtendedNat(10 ** 9) < INFINITY
    assert ExtendedNat(2) < ExtendedNat(3)
    assert str(INFINITY) == "inf"
    assert str(ExtendedNat(4)) == "4"
    assert parse_extended_nat("inf") == INFINITY
    assert parse_extended_nat("12") == ExtendedNat(12)
    with pytest.raises(DomainError):
        ExtendedNat(0)


def test_phi_sm_witness_examples():
    assert phi_sm_witness(Fraction(0)) == ExtendedNat(1)
    assert phi_sm_witness(Fraction(1)) == INFINITY
    assert phi_sm_witness(Fraction(3, 5)) is None


def test_phi_sm_witness_round_trip():
    for m in range(1, 10 ** 4 + 1):
        assert phi_sm_witness(1 - Fraction(1, m)) == ExtendedNat(m)


def test_phi_sm_domain():
    with pytest.raises(DomainError):
        phi_sm_witness(Fraction(3, 2))
    with pytest.raises(DomainError):
        phi_sm_alpha_member(Fraction(1, 2), Fraction(-1, 2))


def test_phi_sm_alpha_examples():
    assert phi_sm_alpha_member(Fraction(3, 5), Fraction(1, 2))
    assert not phi_sm_alpha_member(Fraction(3, 5), Fraction(2, 3))
    assert phi_sm_alpha_member(Fraction(2, 3), Fraction(3, 4))


@given(st.integers(0, 60), st.integers(1, 60), st.integers(1, 60))
@settings(max_examples=200)
def test_phi_sm_alpha_monotone(num, den, den2):
    x = Fraction(min(num, den), den)
    alpha = Fraction(num % (den2 + 1), den2 + 1)
    alpha_lower = alpha / 2
    if phi_sm_alpha_member(x, alpha):
        assert phi_sm_alpha_member(x, alpha_lower)


def test_t1_member_examples():
    assert t1_member(Fraction(1, 7)) == ExtendedNat(7)
    assert t1_member(Fraction(2, 7)) is None
    assert t1_member(Fraction(0)) == INFINITY


def test_t1_phi_duality():
    for q in range(1, 200):
        for p in range(0, q + 1):
            c = Fraction(p, q)
            if t1_member(c) is not None:
                assert phi_sm_witness(1 - c) is not None
