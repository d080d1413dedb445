"""Seeded verification campaigns with JSON reports.

Each runner returns a report of the form
{"lemma": ..., "params": ..., "instances_checked": ..., "counterexamples": [...]}
(with the seed echoed for the randomized ones); a nonempty counterexample
list is the caller's signal to exit with status 1.  Unseeded runs draw a
seed and echo it, so every falsification attempt is replayable.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import UsageError
from .germs import AxesBoundary, CyclicQuotientGerm, pair_discr_check
from .lemmas import EqSLedger, lemma_p1_scan, lct2_scan, solve_for_c, solve_for_gamma
from .rationals import format_rational


def _resolve_seed(seed: Optional[int]) -> int:
    return random.randrange(2 ** 32) if seed is None else seed


def verify_lemma_p1(n_param: int, max_m: int, max_den: int) -> dict:
    return lemma_p1_scan(n_param, max_m, max_den)


def verify_lct2(n_param: int, max_m: int, max_den: int) -> dict:
    return lct2_scan(n_param, max_m, max_den)


def _random_germ(rng: random.Random, max_m: int) -> CyclicQuotientGerm:
    m = rng.randint(1, max_m)
    q = rng.choice([q for q in range(1, m + 1) if gcd(m, q) == 1 and (q < m or m == 1)])
    return CyclicQuotientGerm(m, q)


def _random_near_one(rng: random.Random, n_param: int, max_gap_den: int = 64) -> Fraction:
    """A coefficient in (1 - 1/N, 1]: one minus a gap strictly below 1/N."""
    den = rng.randint(1, max_gap_den)
    hi = (den - 1) // n_param  # num/den < 1/N  iff  num*N < den
    num = rng.randint(0, hi) if hi > 0 else 0
    return 1 - Fraction(num, den)


def verify_pair_discr(samples: int, seed: Optional[int] = None, max_m: int = 50,
                      n_lo: int = 6, n_hi: int = 12) -> dict:
    """Random instances of the two-axes discrepancy implication."""
    if samples < 1 or max_m < 1 or n_lo < 6 or n_hi < n_lo:
        raise UsageError("bad sampling parameters")
    seed = _resolve_seed(seed)
    rng = random.Random(seed)
    counterexamples = []
    outcomes = {"hypothesis-fails": 0, "implication-holds": 0, "counterexample": 0}
    for _ in range(samples):
        n_param = rng.randint(n_lo, n_hi)
        germ = _random_germ(rng, max_m)
        boundary = AxesBoundary(_random_near_one(rng, n_param),
                                _random_near_one(rng, n_param))
        doc = pair_discr_check(germ, boundary, n_param)
        outcomes[doc["verdict"]] += 1
        if doc["verdict"] == "counterexample":
            counterexamples.append(doc)
    return {
        "lemma": "pair-discrepancy",
        "params": {"samples": samples, "seed": seed, "max_m": max_m,
                   "n_lo": n_lo, "n_hi": n_hi},
        "instances_checked": samples,
        "outcomes": outcomes,
        "counterexamples": counterexamples,
    }


def _random_ledger(rng: random.Random) -> EqSLedger:
    q = rng.randint(1, 12)
    c = Fraction(rng.randint(1, q), q)
    r_cap = int(1 / c)
    terms = tuple((rng.randint(1, 12), rng.randint(0, min(3, r_cap)))
                  for _ in range(rng.randint(1, 5)))
    den = rng.randint(1, 12)
    return EqSLedger(
        pa=rng.randint(0, 2),
        gamma_sq=Fraction(rng.randint(1, 12), rng.randint(1, 4)),
        gamma=Fraction(rng.randint(1, den), den),
        diff_terms=terms,
        c=c,
    )


def verify_eq_s(count: int, seed: Optional[int] = None) -> dict:
    """Solve/verify round trips of the adjunction identity on random ledgers.

    For every ledger: solving for c and substituting back must satisfy
    the identity exactly (or the no-solution report must be consistent);
    solving for gamma always succeeds and must verify exactly; and when
    every r vanishes the solved gamma must not depend on c.
    """
    if count < 1:
        raise UsageError("count must be positive")
    seed = _resolve_seed(seed)
    rng = random.Random(seed)
    counterexamples = []
    for idx in range(count):
        ledger = _random_ledger(rng)
        problems = []
        sc = solve_for_c(ledger)
        if sc.status == "unique":
            if ledger.lhs(sc.value) != ledger.rhs():
                problems.append("solve_for_c does not verify")
        elif sc.status == "identically-satisfied":
            if ledger.lhs(Fraction(1, 3)) != ledger.rhs() or ledger.lhs(Fraction(1)) != ledger.rhs():
                problems.append("identically-satisfied claim fails")
        else:  # none: slope vanished, constants differ
            if any(r for _, r in ledger.diff_terms) or ledger.lhs() == ledger.rhs():
                problems.append("no-solution report inconsistent")
        sg = solve_for_gamma(ledger)
        if sg.status != "unique" or ledger.lhs() != ledger.rhs(sg.value):
            problems.append("solve_for_gamma does not verify")
        if all(r == 0 for _, r in ledger.diff_terms):
            other_c = Fraction(1) if ledger.c != 1 else Fraction(1, 2)
            shifted = EqSLedger(ledger.pa, ledger.gamma_sq, ledger.gamma,
                                ledger.diff_terms, other_c)
            if solve_for_gamma(shifted).value != sg.value:
                problems.append("gamma depends on c although every r vanishes")
        if problems:
            counterexamples.append({
                "index": idx,
                "ledger": {
                    "pa": ledger.pa,
                    "gamma_sq": format_rational(ledger.gamma_sq),
                    "gamma": format_rational(ledger.gamma),
                    "terms": [[s, r] for s, r in ledger.diff_terms],
                    "c": format_rational(ledger.c),
                },
                "problems": problems,
            })
    return {
        "lemma": "adjunction-ledger",
        "params": {"count": count, "seed": seed},
        "instances_checked": count,
        "counterexamples": counterexamples,
    }
