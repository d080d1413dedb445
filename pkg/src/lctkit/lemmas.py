"""Desk-scale verifiers for the combinatorial facts behind the calculus.

Each verifier either checks a single instance against a stated
implication (reporting hypothesis-fails / implication-holds /
counterexample) or exhaustively scans a bounded family and returns the
list of conclusion failures, expected empty.  Everything is exact; scans
are deterministic and their reports are JSON-friendly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .errors import DomainError, UsageError
from .germs import AxesBoundary, CyclicQuotientGerm, mld_axes
from .rationals import HALF, ONE, ZERO, format_rational, phi_sm_alpha_member
from .thresholds import farey_interval


def _alpha(n_param: int) -> Fraction:
    if n_param < 6:
        raise DomainError(f"N must be at least 6, got {n_param}")
    return HALF + Fraction(1, n_param)


@dataclass(frozen=True)
class P1Boundary:
    """Coefficients of a boundary on the projective line.

    The degree-2 condition (the boundary being anticanonical) is
    hypothesis (i) of the verifier rather than a construction-time
    constraint, so that violations are reportable.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        for lam in self.coefficients:
            if not (ZERO <= lam <= ONE):
                raise DomainError(f"coefficient {format_rational(lam)} outside [0, 1]")

    def degree(self) -> Fraction:
        return sum(self.coefficients, ZERO)


def lemma_p1_verify(n_param: int, boundary: P1Boundary) -> dict:
    """Check the degree-2 boundary bound on the projective line.

    Hypotheses: (i) the coefficients sum to 2, (ii) each lies in the
    hyperstandard set extended by [1/2 + 1/N, 1], (iii) some coefficient
    lies strictly between 1/2 + 1/N and 1.  Claimed conclusion: every
    coefficient is at most 1 - 1/N.
    """
    alpha = _alpha(n_param)
    coeffs = boundary.coefficients
    doc: dict = {
        "N": n_param,
        "coefficients": [format_rational(x) for x in coeffs],
    }
    if boundary.degree() != 2:
        doc["verdict"] = "hypothesis-violated"
        doc["reason"] = f"(i) coefficients sum to {format_rational(boundary.degree())}, not 2"
        return doc
    for lam in coeffs:
        if not phi_sm_alpha_member(lam, alpha):
            doc["verdict"] = "hypothesis-violated"
            doc["reason"] = (f"(ii) {format_rational(lam)} is not hyperstandard and lies "
                             f"below {format_rational(alpha)}")
            return doc
    witness = next((j for j, lam in enumerate(coeffs) if alpha < lam < ONE), None)
    if witness is None:
        doc["verdict"] = "hypothesis-violated"
        doc["reason"] = f"(iii) no coefficient strictly between {format_rational(alpha)} and 1"
        return doc
    doc["witness_index"] = witness
    cap = ONE - Fraction(1, n_param)
    bad = [format_rational(lam) for lam in coeffs if lam > cap]
    if bad:
        doc["verdict"] = "counterexample"
        doc["violating"] = bad
    else:
        doc["verdict"] = "conclusion-holds"
    return doc


def _p1_pool(n_param: int, max_m: int, max_den: int) -> list[Fraction]:
    """Admissible nonzero coefficients: hyperstandard values with m <= max_m
    plus every rational in [1/2 + 1/N, 1] with denominator <= max_den."""
    alpha = _alpha(n_param)
    pool = {ONE - Fraction(1, m) for m in range(2, max_m + 1)}
    pool.update(farey_interval(alpha, ONE, max_den))
    return sorted(pool)


def lemma_p1_scan(n_param: int, max_m: int, max_den: int) -> dict:
    """Exhaustive scan of boundaries with up to 4 components.

    Enumerates multisets from the coefficient pool that sum to exactly 2
    and satisfy hypothesis (iii); zero coefficients are omitted since
    they change nothing.  Returns every conclusion failure (expected:
    none).
    """
    alpha = _alpha(n_param)
    cap = ONE - Fraction(1, n_param)
    pool = _p1_pool(n_param, max_m, max_den)
    members = set(pool)
    checked = 0
    failures: list[list[str]] = []

    def visit(coeffs: tuple[Fraction, ...]) -> None:
        nonlocal checked
        if not any(alpha < lam < ONE for lam in coeffs):
            return
        checked += 1
        if any(lam > cap for lam in coeffs):
            failures.append([format_rational(x) for x in coeffs])

    def rec(start: int, slots: int, remaining: Fraction, acc: list[Fraction]) -> None:
        if slots == 1:
            # the last coefficient is determined; keep the multiset sorted
            if remaining in members and (not acc or remaining >= acc[-1]):
                visit(tuple(acc) + (remaining,))
            return
        for i in range(start, len(pool)):
            v = pool[i]
            if v * slots > remaining:
                break
            if remaining - v > slots - 1:  # later coefficients are at most 1 each
                continue
            acc.append(v)
            rec(i, slots - 1, remaining - v, acc)
            acc.pop()

    for r in (2, 3, 4):
        rec(0, r, Fraction(2), [])

    return {
        "lemma": "p1-boundary",
        "params": {"N": n_param, "max_m": max_m, "max_den": max_den},
        "instances_checked": checked,
        "counterexamples": sorted(failures),
    }


def xi_transform(coefficients: list[Fraction], n_param: int) -> list[Fraction]:
    """Round every coefficient strictly above 1 - 1/N up to 1; fix the rest."""
    if n_param < 6:
        raise DomainError(f"N must be at least 6, got {n_param}")
    cutoff = ONE - Fraction(1, n_param)
    out = []
    for lam in coefficients:
        if not (ZERO <= lam <= ONE):
            raise DomainError(f"coefficient {format_rational(lam)} outside [0, 1]")
        out.append(ONE if lam > cutoff else lam)
    return out


def lct2_desk_check(germ: CyclicQuotientGerm, boundary: AxesBoundary, n_param: int) -> dict:
    """Rounding-up preserves log canonicity on quotient germs with axes boundary.

    Hypothesis: the pair (germ, boundary) is klt (every discrepancy,
    axis values included, strictly above -1).  Conclusion: after raising
    each coefficient above 1 - 1/N to 1, the pair stays lc (all
    discrepancies at least -1).  Scope is deliberately toric: the germ
    is a cyclic quotient and the boundary sits on the two axes, so both
    sides are exact lattice computations.
    """
    alpha = _alpha(n_param)
    for lam in (boundary.lambda1, boundary.lambda2):
        if not phi_sm_alpha_member(lam, alpha):
            raise DomainError(
                f"coefficient {format_rational(lam)} is not hyperstandard and lies below "
                f"{format_rational(alpha)}")
    mld_before, _ = mld_axes(germ, boundary, include_codim1=True)
    xi = xi_transform([boundary.lambda1, boundary.lambda2], n_param)
    rounded = AxesBoundary(xi[0], xi[1])
    mld_after, _ = mld_axes(germ, rounded, include_codim1=True)
    doc = {
        "germ": {"m": germ.m, "q": germ.q},
        "N": n_param,
        "coefficients": [format_rational(boundary.lambda1), format_rational(boundary.lambda2)],
        "rounded": [format_rational(x) for x in xi],
        "mld_before": format_rational(mld_before),
        "mld_after": format_rational(mld_after),
        "scope": "toric: cyclic quotient germ, boundary on the two axes",
    }
    if not mld_before > -1:
        doc["verdict"] = "hypothesis-fails"
    elif mld_after >= -1:
        doc["verdict"] = "implication-holds"
    else:
        doc["verdict"] = "counterexample"
    return doc


def lct2_scan(n_param: int, max_m: int, max_den: int) -> dict:
    """Scan all quotient germs with m <= max_m against all admissible
    axes coefficients of denominator <= max_den; collect counterexamples."""
    from math import gcd

    alpha = _alpha(n_param)
    pool = [ZERO] + [x for x in farey_interval(Fraction(1, max_den), ONE, max_den)
                     if phi_sm_alpha_member(x, alpha)]
    checked = 0
    failures = []
    for m in range(1, max_m + 1):
        for q in range(1, m + 1):
            if gcd(m, q) != 1:
                continue
            germ = CyclicQuotientGerm(m, q)
            for l1 in pool:
                for l2 in pool:
                    doc = lct2_desk_check(germ, AxesBoundary(l1, l2), n_param)
                    checked += 1
                    if doc["verdict"] == "counterexample":
                        failures.append(doc)
    return {
        "lemma": "lct2-rounding",
        "params": {"N": n_param, "max_m": max_m, "max_den": max_den},
        "instances_checked": checked,
        "counterexamples": failures,
    }


@dataclass(frozen=True)
class EqSLedger:
    """Adjunction bookkeeping for a curve on a surface.

    Records the curve's arithmetic genus and self-intersection, the
    coefficient gamma of the curve, the correction terms (s_j, r_j) of
    the adjunction different, and the threshold parameter c the term
    values refer to.  Correction coefficients use the weak bound
    r_j * c <= 1 (their values may reach 1), while witness terms keep
    the strict bound; the two conventions are deliberate.
    """

    pa: int
    gamma_sq: Fraction
    gamma: Fraction
    diff_terms: tuple[tuple[int, int], ...]
    c: Fraction

    def __post_init__(self) -> None:
        if self.pa < 0:
            raise DomainError("arithmetic genus must be nonnegative")
        if self.gamma_sq <= 0:
            raise DomainError("self-intersection must be positive")
        if not (ZERO < self.gamma <= ONE):
            raise DomainError("gamma must lie in (0, 1]")
        if not (ZERO < self.c <= ONE):
            raise DomainError("c must lie in (0, 1]")
        for s, r in self.diff_terms:
            if s < 1 or r < 0:
                raise DomainError(f"bad correction term ({s}, {r})")
            if r * self.c > 1:
                raise DomainError(f"term ({s}, {r}) violates r*c <= 1")
            # coefficient 1 - 1/s + r*c/s then lies in [0, 1] automatically

    def lhs(self, c: Optional[Fraction] = None) -> Fraction:
        cc = self.c if c is None else c
        return sum((ONE - Fraction(1, s) + Fraction(r, s) * cc for s, r in self.diff_terms),
                   ZERO)

    def rhs(self, gamma: Optional[Fraction] = None) -> Fraction:
        g = self.gamma if gamma is None else gamma
        return 2 - 2 * self.pa + (ONE - g) * self.gamma_sq


SolveStatus = Literal["unique", "none", "identically-satisfied"]


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    value: Optional[Fraction] = None

    def to_json(self) -> dict:
        doc: dict = {"status": self.status}
        if self.value is not None:
            doc["value"] = format_rational(self.value)
        return doc


def adjunction_holds(ledger: EqSLedger) -> bool:
    """Exact check of the adjunction identity at the ledger's own c and gamma."""
    return ledger.lhs() == ledger.rhs()


def solve_for_c(ledger: EqSLedger) -> SolveResult:
    """The unique c making the identity hold, if the c-coefficient survives.

    The identity is affine-linear in c with slope sum(r_j / s_j); when
    every r_j vanishes the equation either holds identically or has no
    solution.
    """
    slope = sum((Fraction(r, s) for s, r in ledger.diff_terms), ZERO)
    const = sum((ONE - Fraction(1, s) for s, r in ledger.diff_terms), ZERO)
    target = ledger.rhs()
    if slope == 0:
        if const == target:
            return SolveResult("identically-satisfied")
        return SolveResult("none")
    return SolveResult("unique", (target - const) / slope)


def solve_for_gamma(ledger: EqSLedger) -> SolveResult:
    """The unique gamma making the identity hold; the slope is the
    (positive) self-intersection, so the solution always exists."""
    # lhs = 2 - 2*pa + (1 - gamma) * gamma_sq
    return SolveResult("unique",
                       ONE - (ledger.lhs() - 2 + 2 * ledger.pa) / ledger.gamma_sq)


def lp_numeric_check(c: Fraction, terms: list[tuple[int, int, Fraction]],
                     anticanonical_degree: Fraction) -> dict:
    """Numeric class conditions on a rank-one surface.

    terms are (m, k, degree) with positive degree; checks that the
    boundary is anticanonical in degree, that the reduced-multiplicity
    part leaves the anticanonical degree strictly positive, and that at
    least one k is positive.  Reports the first failing condition.
    """
    if not (ZERO < c <= ONE):
        raise DomainError(f"c must lie in (0, 1], got {format_rational(c)}")
    if anticanonical_degree <= 0:
        raise DomainError("anticanonical degree must be positive")
    total = ZERO
    frozen = ZERO
    k_sum = 0
    for m, k, degree in terms:
        if m < 1 or k < 0:
            raise DomainError(f"bad term ({m}, {k})")
        if degree <= 0:
            raise DomainError("degrees must be positive")
        value = ONE - Fraction(1, m) + Fraction(k, m) * c
        total += value * degree
        frozen += (ONE - Fraction(1, m)) * degree
        k_sum += k
    doc = {
        "c": format_rational(c),
        "anticanonical_degree": format_rational(anticanonical_degree),
        "boundary_degree": format_rational(total),
    }
    if total != anticanonical_degree:
        doc["verdict"] = "fails"
        doc["failed"] = "degree-match"
    elif anticanonical_degree - frozen <= 0:
        doc["verdict"] = "fails"
        doc["failed"] = "ample-reduction"
    elif k_sum < 1:
        doc["verdict"] = "fails"
        doc["failed"] = "positive-k"
    else:
        doc["verdict"] = "passes"
    return doc
