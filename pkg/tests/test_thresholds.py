from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lctkit.errors import DomainError, UsageError
from lctkit.thresholds import (CoeffTerm, WitnessT2, accumulation_report, farey_interval,
                               form_family, iter_witnesses, t2_enumerate,
                               t2_enumerate_rows, t2_form_check, t2_member,
                               t2_witness_search, theta_value)

from oracles import oracle_min_witness, oracle_witness_solutions, reduced_fractions

F = Fraction


def canon(witness: WitnessT2) -> tuple[tuple[int, int], ...]:
    return tuple((t.m, t.k) for t in witness.terms)


def test_theta_value_examples():
    assert theta_value(CoeffTerm(2, 0), F(5, 6)) == F(1, 2)
    assert theta_value(CoeffTerm(1, 1), F(5, 6)) == F(5, 6)
    assert theta_value(CoeffTerm(3, 1), F(1, 2)) == F(5, 6)


def test_coeff_term_invariants():
    with pytest.raises(DomainError):
        CoeffTerm(1, 0)
    with pytest.raises(DomainError):
        CoeffTerm(0, 1)
    with pytest.raises(DomainError):
        CoeffTerm(2, -1)


def test_witness_construction_verifies():
    WitnessT2(F(5, 6), (CoeffTerm(1, 1), CoeffTerm(2, 0), CoeffTerm(3, 0)))
    with pytest.raises(DomainError):  # wrong sum
        WitnessT2(F(5, 6), (CoeffTerm(1, 1), CoeffTerm(2, 0), CoeffTerm(4, 0)))
    with pytest.raises(DomainError):  # no positive k
        WitnessT2(F(1, 2), (CoeffTerm(2, 0), CoeffTerm(2, 0), CoeffTerm(2, 0), CoeffTerm(2, 0)))
    with pytest.raises(DomainError):  # not sorted
        WitnessT2(F(5, 6), (CoeffTerm(2, 0), CoeffTerm(1, 1), CoeffTerm(3, 0)))


def test_witness_search_examples():
    assert canon(t2_witness_search(F(5, 6))) == ((1, 1), (2, 0), (3, 0))
    # lexicographic minimum for 3/4: two terms of value 3/4 and one of 1/2
    # precede the (1,1),(2,0),(4,0) solution in canonical order
    assert canon(t2_witness_search(F(3, 4))) == ((1, 1), (1, 1), (2, 0))
    assert t2_witness_search(F(5, 7)) is None
    assert t2_witness_search(F(1)) is None


def test_witness_search_matches_oracle_spot():
    for c in (F(5, 6), F(3, 4), F(2, 3), F(5, 7), F(7, 10), F(1, 2), F(4, 7)):
        got = t2_witness_search(c)
        want = oracle_min_witness(c)
        if want is None:
            assert got is None
        else:
            assert got is not None
            assert canon(got) == want


def test_iter_witnesses_capped_equals_oracle_spot():
    for c in (F(5, 6), F(1, 2), F(1, 3), F(3, 4), F(5, 7)):
        mine = sorted(canon(w) for w in iter_witnesses(c, max_m=12, max_k=12, max_r=6))
        assert mine == oracle_witness_solutions(c)


def test_t2_member_examples():
    v = t2_member(F(1, 3))
    assert v.kind == "in_t1" and v.n.value == 3
    v = t2_member(F(5, 6))
    assert v.kind == "in_t2" and canon(v.witness) == ((1, 1), (2, 0), (3, 0))
    v = t2_member(F(5, 7))
    assert v.kind == "not_in_t2"
    assert v.bounds["r_max"] == 4 and v.bounds["k_max"] == 1
    with pytest.raises(DomainError):
        t2_member(F(7, 6))
    with pytest.raises(DomainError):
        t2_member(F(0))


def test_t1_subset_of_t2():
    for n in range(1, 51):
        v = t2_member(F(1, n))
        assert v.kind == "in_t1" and v.n.value == n


def test_verdict_json_shapes():
    assert t2_member(F(1, 3)).to_json() == {"c": "1/3", "verdict": "in_t1", "n": 3}
    doc = t2_member(F(5, 6)).to_json()
    assert doc == {"c": "5/6", "verdict": "in_t2",
                   "witness": [{"m": 1, "k": 1}, {"m": 2, "k": 0}, {"m": 3, "k": 0}]}
    doc = t2_member(F(5, 7)).to_json()
    assert doc["verdict"] == "not_in_t2" and "bounds" in doc


def test_form_check_examples():
    assert t2_form_check(F(5, 6)) == 3
    assert t2_form_check(F(1)) == 2
    assert t2_form_check(F(5, 7)) is None
    with pytest.raises(DomainError):
        t2_form_check(F(1, 2))
    with pytest.raises(DomainError):
        t2_form_check(F(7, 6))


def test_form_family_variants_differ_at_endpoint():
    with_one = form_family(F(1, 2), F(1), 100, n_min=2)
    without = form_family(F(1, 2), F(1), 100, n_min=3)
    assert set(with_one) - set(without) == {F(1)}
    # 1/2 is a member of the set but not of the family
    assert F(1, 2) not in with_one
    assert t2_member(F(1, 2)).kind == "in_t1"


def test_farey_interval_matches_brute_force():
    for lo, hi, maxden in ((F(1, 3), F(2, 3), 12), (F(1, 100), F(1), 17),
                           (F(1, 2), F(1, 2), 5)):
        got = list(farey_interval(lo, hi, maxden))
        assert got == reduced_fractions(lo, hi, maxden)
    got = list(farey_interval(F(1, 3), F(2, 3), 12, include_lo=False, include_hi=False))
    want = [x for x in reduced_fractions(F(1, 3), F(2, 3), 12) if x not in (F(1, 3), F(2, 3))]
    assert got == want


def test_enumerate_interval_examples():
    # full certified set for denominator 10 on [1/2, 1]
    got = t2_enumerate(F(1, 2), F(1), 10)
    assert got == [F(1, 2), F(5, 9), F(4, 7), F(3, 5), F(5, 8), F(2, 3),
                   F(7, 10), F(3, 4), F(5, 6), F(1)]
    assert t2_enumerate(F(9, 10), F(1), 10, closed_ends=(True, False)) == []
    assert t2_enumerate(F(1, 3), F(1, 3), 3) == [F(1, 3)]


def test_enumerate_rows_form_column():
    rows = t2_enumerate_rows(F(1, 2), F(1), 10)
    by_c = {row.c: row for row in rows}
    assert by_c[F(5, 6)].n_form == 3
    assert by_c[F(1)].n_form == 2
    assert by_c[F(1, 2)].n_form is None


def test_enumerate_usage_errors():
    with pytest.raises(UsageError):
        t2_enumerate(F(1, 2), F(1), 1)
    with pytest.raises(UsageError):
        t2_enumerate(F(2, 3), F(1, 3), 10)
    with pytest.raises(UsageError):
        t2_enumerate(F(0), F(1), 10)


def test_enumerate_worker_determinism():
    serial = t2_enumerate_rows(F(2, 5), F(9, 10), 40, workers=1)
    parallel = t2_enumerate_rows(F(2, 5), F(9, 10), 40, workers=3)
    assert [(r.c, r.verdict.to_json(), r.n_form) for r in serial] == \
           [(r.c, r.verdict.to_json(), r.n_form) for r in parallel]


def test_accumulation_report_examples():
    values = t2_enumerate(F(9, 20), F(3, 5), 60)
    [rec] = accumulation_report(values, [F(1, 2)], F(1, 50))
    assert rec["count"] >= 1
    assert rec["target"] == "1/2"
    assert accumulation_report([], [F(1, 2)], F(1, 10)) == [
        {"target": "1/2", "count": 0, "nearest": None}]
    assert accumulation_report([F(1, 2)], [F(1, 2)], F(1, 7))[0]["count"] == 0
    with pytest.raises(UsageError):
        accumulation_report([F(2, 3), F(1, 3)], [F(1, 2)], F(1, 10))
    with pytest.raises(UsageError):
        accumulation_report([], [F(1, 2)], F(0))


def test_accumulation_nearest_tie_breaks_low():
    rec = accumulation_report([F(1, 3), F(2, 3)], [F(1, 2)], F(1, 4))[0]
    assert rec["count"] == 2
    assert rec["nearest"] == "1/3"


@given(st.integers(1, 60), st.integers(1, 60))
@settings(max_examples=150, deadline=None)
def test_witness_reverification_property(p, q):
    if gcd(p, q) != 1 or p > q:
        return
    c = F(p, q)
    verdict = t2_member(c)
    if verdict.kind != "in_t2":
        return
    total = F(0)
    ksum = 0
    for t in verdict.witness.terms:
        assert t.k * c < 1
        total += 1 - F(1, t.m) + F(t.k, t.m) * c
        ksum += t.k
    assert total == 2 and ksum >= 1
