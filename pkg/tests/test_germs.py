import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lctkit.errors import DomainError
from lctkit.germs import (AxesBoundary, CyclicQuotientGerm, LatticeVector,
                          diff_coefficient, hilbert_basis_interior, hj_evaluate,
                          hj_expand, mld_axes, pair_discr_check, toric_discrepancy)
from lctkit.thresholds import CoeffTerm, theta_value

from oracles import oracle_mld

F = Fraction


def coprime_q(rng, m):
    return rng.choice([q for q in range(1, m + 1) if gcd(m, q) == 1 and (q < m or m == 1)])


def test_hj_examples():
    assert hj_expand(2, 1) == [2]
    assert hj_expand(5, 2) == [3, 2]
    assert hj_expand(1, 1) == []


def test_hj_errors():
    with pytest.raises(DomainError):
        hj_expand(4, 2)
    with pytest.raises(DomainError):
        hj_expand(3, 3)
    with pytest.raises(DomainError):
        hj_expand(0, 1)


def test_hj_round_trip_all_m_up_to_200():
    for m in range(2, 201):
        for q in range(1, m):
            if gcd(m, q) != 1:
                continue
            expansion = hj_expand(m, q)
            assert all(a >= 2 for a in expansion)
            assert hj_evaluate(expansion) == F(m, q)


def test_germ_invariants():
    with pytest.raises(DomainError):
        CyclicQuotientGerm(4, 2)
    with pytest.raises(DomainError):
        CyclicQuotientGerm(3, 4)
    assert CyclicQuotientGerm(1, 1).is_smooth


def test_lattice_vector_validation():
    germ = CyclicQuotientGerm(3, 1)
    LatticeVector(germ, F(1, 3), F(1, 3))
    with pytest.raises(DomainError):  # congruence fails
        LatticeVector(germ, F(1, 3), F(2, 3))
    with pytest.raises(DomainError):  # not primitive
        LatticeVector(germ, F(2, 3), F(2, 3))
    with pytest.raises(DomainError):  # zero
        LatticeVector(germ, F(0), F(0))
    with pytest.raises(DomainError):  # denominator not dividing m
        LatticeVector(germ, F(1, 2), F(1, 2))


def test_toric_discrepancy_examples():
    smooth = CyclicQuotientGerm(1, 1)
    assert toric_discrepancy(smooth, AxesBoundary(), LatticeVector(smooth, F(1), F(1))) == 1
    lam = AxesBoundary(F(2, 5), F(1, 4))
    assert toric_discrepancy(smooth, lam, LatticeVector(smooth, F(1), F(0))) == F(-2, 5)
    assert toric_discrepancy(smooth, lam, LatticeVector(smooth, F(0), F(1))) == F(-1, 4)
    germ31 = CyclicQuotientGerm(3, 1)
    assert toric_discrepancy(germ31, AxesBoundary(),
                             LatticeVector(germ31, F(1, 3), F(1, 3))) == F(-1, 3)


def test_hilbert_basis_chain():
    assert [v.coords() for v in hilbert_basis_interior(CyclicQuotientGerm(3, 2))] == \
        [(F(1, 3), F(2, 3)), (F(2, 3), F(1, 3))]
    assert hilbert_basis_interior(CyclicQuotientGerm(1, 1)) == ()


def test_mld_examples():
    value, vec = mld_axes(CyclicQuotientGerm(1, 1), AxesBoundary())
    assert (value, vec.coords()) == (F(1), (F(1), F(1)))
    value, vec = mld_axes(CyclicQuotientGerm(2, 1), AxesBoundary())
    assert (value, vec.coords()) == (F(0), (F(1, 2), F(1, 2)))
    # the (3, 2) germ is a canonical double point: its exceptional
    # discrepancies vanish (cross-checked against the lattice oracle and
    # the chain pullback)
    value, vec = mld_axes(CyclicQuotientGerm(3, 2), AxesBoundary())
    assert (value, vec.coords()) == (F(0), (F(1, 3), F(2, 3)))
    value, vec = mld_axes(CyclicQuotientGerm(3, 1), AxesBoundary())
    assert (value, vec.coords()) == (F(-1, 3), (F(1, 3), F(1, 3)))


def test_mld_against_lattice_oracle():
    rng = random.Random(11)
    for _ in range(60):
        m = rng.randint(1, 15)
        q = coprime_q(rng, m)
        l1 = F(rng.randint(0, 8), 8)
        l2 = F(rng.randint(0, 8), 8)
        for include in (False, True):
            got, _ = mld_axes(CyclicQuotientGerm(m, q), AxesBoundary(l1, l2), include)
            assert got == oracle_mld(m, q, l1, l2, include)


def test_mld_axis_values_with_codim1():
    germ = CyclicQuotientGerm(5, 2)
    lam = AxesBoundary(F(1), F(9, 10))
    value, _ = mld_axes(germ, lam, include_codim1=True)
    assert value == -1  # the axis with coefficient 1


@given(st.integers(0, 10), st.integers(0, 10), st.integers(1, 10))
@settings(max_examples=100, deadline=None)
def test_mld_monotone_in_coefficients(a, b, step):
    germ = CyclicQuotientGerm(7, 3)
    l1, l2 = F(a, 10), F(b, 10)
    bumped = min(F(1), l1 + F(step, 100))
    low, _ = mld_axes(germ, AxesBoundary(l1, l2))
    high, _ = mld_axes(germ, AxesBoundary(bumped, l2))
    assert high <= low


def test_pair_discr_examples():
    doc = pair_discr_check(CyclicQuotientGerm(2, 1), AxesBoundary(F(1), F(1)), 6)
    assert doc["verdict"] == "hypothesis-fails"
    assert doc["mld"] == "-1"
    # boundary case: the blowup discrepancy equals -1 + 1/6 exactly, so the
    # hypothesis (>=) holds and the sum bound holds with equality
    doc = pair_discr_check(CyclicQuotientGerm(1, 1), AxesBoundary(F(11, 12), F(11, 12)), 6)
    assert doc["verdict"] == "implication-holds"
    with pytest.raises(DomainError):
        pair_discr_check(CyclicQuotientGerm(2, 1), AxesBoundary(F(1, 2), F(1)), 6)
    with pytest.raises(DomainError):
        pair_discr_check(CyclicQuotientGerm(2, 1), AxesBoundary(F(1), F(1)), 5)


def test_diff_coefficient_examples():
    d = F(3, 7)
    assert diff_coefficient(1, [(1, d)]) == d
    c = F(2, 5)
    assert diff_coefficient(2, [(1, c)]) == (1 + c) / 2
    assert diff_coefficient(3, [(1, F(1, 2))]) == F(5, 6)
    assert diff_coefficient(3, [(1, F(1, 2))]) == theta_value(CoeffTerm(3, 1), F(1, 2))
    with pytest.raises(DomainError):
        diff_coefficient(0, [])
    with pytest.raises(DomainError):
        diff_coefficient(2, [(-1, F(1, 2))])
