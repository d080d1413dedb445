"""Exact arithmetic for two-dimensional log canonical thresholds.

Core library: membership certificates for the threshold set, interval
enumeration with accumulation-point reporting, discrepancy and threshold
computation for cyclic quotient surface germs and resolution graphs, and
desk-scale verifiers for the combinatorial lemmas the calculus rests on.
A FastAPI service wraps the library; the CLI is a thin client of the
service.
"""

from .rationals import (
    ExtendedNat,
    INFINITY,
    Rational,
    format_rational,
    parse_rational,
    phi_sm_alpha_member,
    phi_sm_witness,
    t1_member,
)
from .thresholds import (
    CoeffTerm,
    EnumRow,
    MembershipVerdict,
    WitnessT2,
    accumulation_report,
    farey_interval,
    form_family,
    iter_witnesses,
    t2_enumerate,
    t2_enumerate_rows,
    t2_form_check,
    t2_member,
    t2_witness_search,
    theta_value,
)

__all__ = [
    "ExtendedNat",
    "INFINITY",
    "Rational",
    "format_rational",
    "parse_rational",
    "phi_sm_alpha_member",
    "phi_sm_witness",
    "t1_member",
    "CoeffTerm",
    "EnumRow",
    "MembershipVerdict",
    "WitnessT2",
    "accumulation_report",
    "farey_interval",
    "form_family",
    "iter_witnesses",
    "t2_enumerate",
    "t2_enumerate_rows",
    "t2_form_check",
    "t2_member",
    "t2_witness_search",
    "theta_value",
]

__version__ = "0.1.0"
