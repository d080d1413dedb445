"""Exact rational arithmetic and the elementary coefficient sets.

Every number in the library is an exact ``fractions.Fraction`` (arbitrary
precision, always reduced, positive denominator); there is no floating
point anywhere on a computation path.  The textual exchange format is
``"p/q"`` with ``/q`` omitted when the denominator is 1, and ``"inf"``
for the infinite multiplicity.

The hyperstandard coefficient set is {1 - 1/m : m a positive integer or
infinity}; its alpha-extension additionally admits the interval
[alpha, 1].  Membership tests return the witnessing multiplicity rather
than a bare boolean so every verdict can be re-checked by evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, UsageError

# The universal exact number type of the library.
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a plain integer / exact decimal) to a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Render a Fraction as ``"p/q"``, omitting ``/q`` when q = 1."""
    return str(Fraction(x))


@dataclass(frozen=True)
class ExtendedNat:
    """A positive integer extended with an explicit infinity.

    Infinity is its own case (``value is None``), not a sentinel integer,
    so that 1 - 1/inf = 1 and 1/inf = 0 are total, exact operations.
    Infinity compares strictly greater than every integer.
    """

    value: int | None = None

    def __post_init__(self) -> None:
        if self.value is not None and (not isinstance(self.value, int) or self.value < 1):
            raise DomainError(f"extended multiplicity must be a positive integer or infinity, got {self.value!r}")

    @classmethod
    def infinity(cls) -> "ExtendedNat":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def reciprocal(self) -> Fraction:
        """1/m, with 1/inf = 0."""
        return ZERO if self.value is None else Fraction(1, self.value)

    def one_minus_reciprocal(self) -> Fraction:
        """1 - 1/m, with the limit value 1 at infinity."""
        return ONE - self.reciprocal()

    def _key(self) -> tuple[int, int]:
        # (1, 0) for infinity sorts above every (0, n)
        return (1, 0) if self.value is None else (0, self.value)

    def __lt__(self, other: "ExtendedNat") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "ExtendedNat") -> bool:
        return self._key() <= other._key()

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INFINITY = ExtendedNat.infinity()


def parse_extended_nat(text: str) -> ExtendedNat:
    text = text.strip().lower()
    if text in ("inf", "infinity", "oo"):
        return INFINITY
    try:
        return ExtendedNat(int(text))
    except ValueError as exc:
        raise UsageError(f"not a positive integer or 'inf': {text!r}") from exc


def _check_unit_interval(name: str, x: Fraction) -> None:
    if not (ZERO <= x <= ONE):
        raise DomainError(f"{name} must lie in [0, 1], got {format_rational(x)}")


def phi_sm_witness(x: Fraction) -> ExtendedNat | None:
    """Witness m with x = 1 - 1/m, if the hyperstandard set contains x.

    Returns infinity exactly when x = 1, and None when no multiplicity
    (finite or infinite) produces x.
    """
    _check_unit_interval("x", x)
    if x == ONE:
        return INFINITY
    gap = ONE - x  # = 1/m
    if gap.numerator == 1:
        return ExtendedNat(gap.denominator)
    return None


def phi_sm_alpha_member(x: Fraction, alpha: Fraction) -> bool:
    """True iff x is hyperstandard or lies in the admitted tail [alpha, 1]."""
    _check_unit_interval("x", x)
    _check_unit_interval("alpha", alpha)
    return alpha <= x <= ONE or phi_sm_witness(x) is not None


def t1_member(c: Fraction) -> ExtendedNat | None:
    """Witness n with c = 1/n for the one-dimensional threshold set.

    n = infinity corresponds to c = 0; returns None when 1/c is not
    integral.
    """
    _check_unit_interval("c", c)
    if c == ZERO:
        return INFINITY
    if c.numerator == 1:
        return ExtendedNat(c.denominator)
    return None
