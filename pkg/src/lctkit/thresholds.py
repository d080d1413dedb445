"""Membership certificates and interval enumeration for two-dimensional
log canonical thresholds.

A rational c in (0,1] is certified to be a two-dimensional threshold
either by being a reciprocal integer (the one-dimensional set T1) or by
a multiset of coefficient terms (m_i, k_i) whose values
1 - 1/m_i + k_i*c/m_i sum to exactly 2, with every k_i*c < 1 strictly
and at least one k_i positive.  The search for such a multiset is
complete, so a negative verdict is exhaustive over the full solution
space and is reported together with the bounds certifying that.

Above 1/2 the certified set has a closed form (1/2 plus a unit
fraction); ``t2_form_check`` implements that form independently of the
search so the two routes can be cross-validated.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Literal, Optional

from .errors import DomainError, UsageError
from .rationals import HALF, ONE, ZERO, format_rational, t1_member, ExtendedNat


@dataclass(frozen=True)
class CoeffTerm:
    """One boundary coefficient, encoded as 1 - 1/m + k*c/m.

    The zero-valued term (m=1, k=0) is forbidden: it would make witness
    multisets non-canonical.  The bound k*c < 1 depends on c and is
    checked by the enclosing witness.
    """

    m: int
    k: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.k < 0:
            raise DomainError(f"coefficient term needs m >= 1, k >= 0, got ({self.m}, {self.k})")
        if self.m == 1 and self.k == 0:
            raise DomainError("the zero term (m=1, k=0) is not allowed in a witness")

    def value(self, c: Fraction) -> Fraction:
        return theta_value(self, c)


def theta_value(term: CoeffTerm, c: Fraction) -> Fraction:
    """Exact coefficient value 1 - 1/m + k*c/m."""
    if not (ZERO < c <= ONE):
        raise DomainError(f"c must lie in (0, 1], got {format_rational(c)}")
    p, q = c.numerator, c.denominator
    return Fraction((term.m - 1) * q + term.k * p, term.m * q)


@dataclass(frozen=True)
class WitnessT2:
    """A certified solution: terms in canonical (m, k) order summing to 2.

    Construction re-verifies every invariant, so holding a WitnessT2 is
    itself a proof of membership that any consumer can re-run.
    """

    c: Fraction
    terms: tuple[CoeffTerm, ...]

    def __post_init__(self) -> None:
        if not (ZERO < self.c <= ONE):
            raise DomainError(f"c must lie in (0, 1], got {format_rational(self.c)}")
        if list(self.terms) != sorted(self.terms, key=lambda t: (t.m, t.k)):
            raise DomainError("witness terms must be sorted by (m, k)")
        if sum(t.k for t in self.terms) < 1:
            raise DomainError("witness needs at least one positive k")
        total = ZERO
        for t in self.terms:
            if t.k * self.c >= ONE:
                raise DomainError(f"term ({t.m}, {t.k}) violates k*c < 1 at c={format_rational(self.c)}")
            total += theta_value(t, self.c)
        if total != 2:
            raise DomainError(f"witness values sum to {format_rational(total)}, not 2")

    def values(self) -> tuple[Fraction, ...]:
        return tuple(theta_value(t, self.c) for t in self.terms)

    def to_json(self) -> list[dict]:
        return [{"m": t.m, "k": t.k} for t in self.terms]


VerdictKind = Literal["in_t1", "in_t2", "not_in_t2"]


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of the membership decision, always self-certifying.

    in_t1 carries the reciprocal witness n, in_t2 a re-verifiable
    witness multiset, not_in_t2 the bounds under which the exhaustive
    search came up empty.
    """

    c: Fraction
    kind: VerdictKind
    n: Optional[ExtendedNat] = None
    witness: Optional[WitnessT2] = None
    bounds: Optional[dict] = None

    @property
    def is_member(self) -> bool:
        return self.kind != "not_in_t2"

    def to_json(self) -> dict:
        doc: dict = {"c": format_rational(self.c), "verdict": self.kind}
        if self.kind == "in_t1":
            assert self.n is not None
            doc["n"] = str(self.n) if self.n.is_infinite else self.n.value
        elif self.kind == "in_t2":
            assert self.witness is not None
            doc["witness"] = self.witness.to_json()
        else:
            doc["bounds"] = self.bounds
        return doc


def _check_c(c: Fraction) -> None:
    if not (ZERO < c <= ONE):
        raise DomainError(f"c must lie in (0, 1], got {format_rational(c)}")


def _search_bounds(c: Fraction, max_m: Optional[int], max_k: Optional[int],
                   max_r: Optional[int]) -> tuple[int, int]:
    """Exhaustive caps on k and the term count r for the equation at c.

    Every admissible term value is at least min(c, 1/2): a term with
    m = 1 needs k >= 1 and is worth k*c >= c, one with m >= 2 is worth
    at least 1 - 1/m >= 1/2.  A sum of 2 therefore uses at most
    floor(2/min(c, 1/2)) terms, and at least 3 because each value is
    strictly below 1.  k*c < 1 caps k at floor((q-1)/p).
    """
    p, q = c.numerator, c.denominator
    k_cap = (q - 1) // p
    if max_k is not None:
        k_cap = min(k_cap, max_k)
    v = c if c < HALF else HALF
    r_cap = (2 * v.denominator) // v.numerator
    if max_r is not None:
        r_cap = min(r_cap, max_r)
    return k_cap, r_cap


def _enumerate_solutions(c: Fraction, visit: Callable[[tuple[tuple[int, int], ...]], None],
                         max_m: Optional[int] = None, max_k: Optional[int] = None,
                         max_r: Optional[int] = None) -> dict:
    """Complete search over the solution multisets of the degree-2 equation.

    Organized over the deficiencies u_i = 1 - value_i = (1 - k_i*c)/m_i,
    chosen in nonincreasing order against the running target
    sum(u) = r - 2.  At a node with `rem` slots still open and deficiency
    `s` still to place, the next u satisfies u >= s/rem (it is the
    largest remaining) which together with u <= 1/m bounds m <= rem/s;
    k never exceeds floor((q-1)/p).  Each admissible r in [3, r_cap] is
    searched separately, so the traversal visits every solution exactly
    once.  `visit` receives each solution as a canonically sorted tuple
    of (m, k) pairs.  Returns the bounds record certifying completeness.

    The inner loops run on raw integer pairs (num/den) rather than
    Fraction to keep the exhaustive enumeration affordable.
    """
    _check_c(c)
    p, q = c.numerator, c.denominator
    k_cap, r_cap = _search_bounds(c, max_m, max_k, max_r)
    stats = {"nodes": 0, "max_m_explored": 0}
    terms: list[tuple[int, int]] = []

    def rec(rem: int, sn: int, sd: int, pn: int, pd: int, pm: int, pk: int, ksum: int) -> None:
        # remaining sum s = sn/sd > 0; previous deficiency pn/pd with tie pair (pm, pk)
        stats["nodes"] += 1
        if rem == 1:
            qsn = q * sn
            for k in range(k_cap + 1):
                num = q - k * p
                m, rr = divmod(num * sd, qsn)
                if rr or m < 1 or (max_m is not None and m > max_m):
                    continue
                # u = s exactly; enforce nonincreasing order with (m, k) ties
                cross = num * pd - pn * q * m
                if cross > 0 or (cross == 0 and (m, k) < (pm, pk)):
                    continue
                if ksum + k < 1:
                    continue
                if m > stats["max_m_explored"]:
                    stats["max_m_explored"] = m
                terms.append((m, k))
                visit(tuple(sorted(terms)))
                terms.pop()
            return
        m_hi = (rem * sd) // sn
        if max_m is not None and m_hi > max_m:
            m_hi = max_m
        for m in range(1, m_hi + 1):
            qm = q * m
            for k in range(k_cap + 1):
                if m == 1 and k == 0:
                    continue
                num = q - k * p  # u = num/qm, decreasing in k
                lhs = num * sd
                if lhs * rem < sn * qm:
                    break  # u < s/rem, and shrinking further with k
                if lhs >= sn * qm:
                    continue  # u >= s: nothing left for the other rem-1 terms
                cross = num * pd - pn * qm
                if cross > 0 or (cross == 0 and (m, k) < (pm, pk)):
                    continue
                if m > stats["max_m_explored"]:
                    stats["max_m_explored"] = m
                # s' = s - u = (sn*qm - num*sd) / (sd*qm), reduced
                nn = sn * qm - lhs
                nd = sd * qm
                g = gcd(nn, nd)
                terms.append((m, k))
                rec(rem - 1, nn // g, nd // g, num, qm, m, k, ksum + k)
                terms.pop()
        return

    for r in range(3, r_cap + 1):
        rec(r, r - 2, 1, 1, 1, 0, 0, 0)

    return {
        "r_min": 3,
        "r_max": r_cap,
        "k_max": k_cap,
        "m_rule": "m <= open_slots / remaining_deficiency at every node",
        "max_m_explored": stats["max_m_explored"],
        "nodes": stats["nodes"],
    }


def iter_witnesses(c: Fraction, max_m: Optional[int] = None, max_k: Optional[int] = None,
                   max_r: Optional[int] = None) -> list[WitnessT2]:
    """All witnesses for c within the optional caps, canonically sorted.

    With caps this is the capped restriction of the complete search;
    without caps it is the full (finite) solution set.
    """
    found: set[tuple[tuple[int, int], ...]] = set()
    _enumerate_solutions(c, found.add, max_m=max_m, max_k=max_k, max_r=max_r)
    return [WitnessT2(c, tuple(CoeffTerm(m, k) for m, k in sol)) for sol in sorted(found)]


def t2_witness_search(c: Fraction) -> Optional[WitnessT2]:
    """Lexicographically minimal witness for c, or None if no solution exists.

    Runs the complete deficiency search and keeps the minimum of the
    canonically sorted solutions, so ties are broken reproducibly.
    """
    best: list[tuple[tuple[int, int], ...]] = []

    def visit(sol: tuple[tuple[int, int], ...]) -> None:
        if not best or sol < best[0]:
            best[:] = [sol]

    _enumerate_solutions(c, visit)
    if not best:
        return None
    return WitnessT2(c, tuple(CoeffTerm(m, k) for m, k in best[0]))


def search_bounds_record(c: Fraction) -> dict:
    """The completeness bounds the search ran under, for negative verdicts."""
    k_cap, r_cap = _search_bounds(c, None, None, None)
    return {
        "r_min": 3,
        "r_max": r_cap,
        "k_max": k_cap,
        "m_rule": "m <= open_slots / remaining_deficiency at every node",
    }


def t2_member(c: Fraction) -> MembershipVerdict:
    """Decide membership of c in the two-dimensional threshold set.

    Reciprocal integers are routed to the T1 branch first; this absorbs
    every boundary solution with k*c = 1, which is why the witness
    search can keep k*c < 1 strict.
    """
    _check_c(c)
    n = t1_member(c)
    if n is not None:
        return MembershipVerdict(c, "in_t1", n=n)
    witness = t2_witness_search(c)
    if witness is not None:
        return MembershipVerdict(c, "in_t2", witness=witness)
    return MembershipVerdict(c, "not_in_t2", bounds=search_bounds_record(c))


def t2_form_check(c: Fraction) -> Optional[int]:
    """n >= 2 with c = 1/2 + 1/n, if the offset from 1/2 is a unit fraction.

    This is the closed form of the certified set above 1/2, implemented
    independently of the witness search.
    """
    if not (HALF < c <= ONE):
        raise DomainError(f"form check needs c in (1/2, 1], got {format_rational(c)}")
    offset = c - HALF
    if offset.numerator == 1 and offset.denominator >= 2:
        return offset.denominator
    return None


def form_family(lo: Fraction, hi: Fraction, maxden: int, n_min: int = 2) -> list[Fraction]:
    """Members 1/2 + 1/n (n >= n_min) inside [lo, hi] with denominator <= maxden.

    Two conventions for the family's smallest index circulate (n >= 2,
    which includes 1, and n >= 3, which does not); callers can request
    either, and the enumeration report exposes both so the discrepancy
    stays visible instead of being silently resolved.
    """
    if n_min < 2:
        raise UsageError("n_min must be at least 2")
    out = []
    # den(1/2 + 1/n) >= n/2, so members with denominator <= maxden need
    # n <= 2*maxden; this bounds the loop even when lo <= 1/2.
    for n in range(n_min, 2 * maxden + 1):
        v = HALF + Fraction(1, n)
        if lo <= v <= hi and v.denominator <= maxden:
            out.append(v)
    return sorted(out)


# ---------------------------------------------------------------------------
# Interval enumeration (mediant-tree traversal, denominator-pruned)
# ---------------------------------------------------------------------------

def farey_interval(lo: Fraction, hi: Fraction, maxden: int,
                   include_lo: bool = True, include_hi: bool = True) -> Iterable[Fraction]:
    """Reduced fractions with denominator <= maxden in [lo, hi] ∩ (0, 1], ascending.

    Walks the mediant tree between 0/1 and 1/1; a subtree's mediant has
    the smallest denominator in the subtree, so pruning at
    denominator > maxden is exact, and subtrees outside [lo, hi] are
    skipped by cross-multiplied interval tests.  The value 1 is handled
    as the right endpoint.
    """
    if maxden < 2:
        raise UsageError(f"maxden must be at least 2, got {maxden}")
    if not (ZERO < lo <= hi <= ONE):
        raise UsageError(
            f"need 0 < lo <= hi <= 1, got [{format_rational(lo)}, {format_rational(hi)}]")
    ln, ld = lo.numerator, lo.denominator
    hn, hd = hi.numerator, hi.denominator
    # (a, b, c, d, visited): subtree of fractions strictly between a/b and c/d
    stack: list[tuple[int, int, int, int, bool]] = [(0, 1, 1, 1, False)]
    while stack:
        a, b, cc, d, visited = stack.pop()
        mn, md = a + cc, b + d
        if md > maxden:
            continue
        if visited:
            ge_lo = mn * ld > ln * md or (mn * ld == ln * md and include_lo)
            le_hi = mn * hd < hn * md or (mn * hd == hn * md and include_hi)
            if ge_lo and le_hi:
                yield Fraction(mn, md)
            # right subtree spans (mn/md, cc/d): only useful below hi
            if mn * hd < hn * md:
                stack.append((mn, md, cc, d, False))
        else:
            stack.append((a, b, cc, d, True))
            # left subtree spans (a/b, mn/md): only useful above lo
            if mn * ld > ln * md:
                stack.append((a, b, mn, md, False))
    if hi == ONE and include_hi:
        yield ONE


@dataclass(frozen=True)
class EnumRow:
    """One certified member of an enumerated interval."""

    c: Fraction
    verdict: MembershipVerdict
    n_form: Optional[int]  # unit-fraction offset from 1/2, when c > 1/2


def _enum_chunk(args: tuple) -> list[EnumRow]:
    lo, hi, maxden, include_lo, include_hi = args
    rows = []
    for c in farey_interval(lo, hi, maxden, include_lo, include_hi):
        verdict = t2_member(c)
        if verdict.is_member:
            n_form = t2_form_check(c) if c > HALF else None
            rows.append(EnumRow(c, verdict, n_form))
    return rows


def t2_enumerate_rows(lo: Fraction, hi: Fraction, maxden: int,
                      closed_ends: tuple[bool, bool] = (True, True),
                      workers: int = 1) -> list[EnumRow]:
    """Certified members of [lo, hi] with denominator <= maxden, ascending.

    With workers > 1 the interval is split into equal subintervals that
    are enumerated independently and merged in order; the output is
    identical to the serial run.
    """
    if maxden < 2:
        raise UsageError(f"maxden must be at least 2, got {maxden}")
    if not (ZERO < lo <= hi <= ONE):
        raise UsageError(
            f"need 0 < lo <= hi <= 1, got [{format_rational(lo)}, {format_rational(hi)}]")
    if workers < 1:
        raise UsageError("workers must be at least 1")
    include_lo, include_hi = closed_ends
    if workers == 1 or lo == hi:
        return _enum_chunk((lo, hi, maxden, include_lo, include_hi))
    cuts = [lo + (hi - lo) * i / workers for i in range(workers + 1)]
    jobs = []
    for i in range(workers):
        first, last = i == 0, i == workers - 1
        jobs.append((cuts[i], cuts[i + 1], maxden,
                     include_lo if first else True,
                     include_hi if last else False))
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(_enum_chunk, jobs))
    return [row for chunk in chunks for row in chunk]


def t2_enumerate(lo: Fraction, hi: Fraction, maxden: int,
                 closed_ends: tuple[bool, bool] = (True, True),
                 workers: int = 1) -> list[Fraction]:
    """The certified members themselves (see t2_enumerate_rows)."""
    return [row.c for row in t2_enumerate_rows(lo, hi, maxden, closed_ends, workers)]


def accumulation_report(values: list[Fraction], targets: list[Fraction],
                        delta: Fraction) -> list[dict]:
    """Per-target counts of values in (t - delta, t + delta) excluding t itself.

    Values must be sorted ascending; counting is exact binary search.
    The nearest value is taken over the whole list (target excluded),
    ties broken toward the smaller value.
    """
    if delta <= 0:
        raise UsageError("delta must be positive")
    if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
        raise UsageError("values must be sorted ascending")
    report = []
    for t in targets:
        left = bisect.bisect_right(values, t - delta)
        right = bisect.bisect_left(values, t + delta)
        count = right - left
        pos = bisect.bisect_left(values, t)
        present = pos < len(values) and values[pos] == t
        if present and left <= pos < right:
            count -= 1
        nearest: Optional[Fraction] = None
        for idx in (pos - 1, pos, pos + 1):
            if 0 <= idx < len(values) and values[idx] != t:
                v = values[idx]
                if nearest is None or (abs(v - t), v) < (abs(nearest - t), nearest):
                    nearest = v
        report.append({
            "target": format_rational(t),
            "count": count,
            "nearest": None if nearest is None else format_rational(nearest),
        })
    return report
