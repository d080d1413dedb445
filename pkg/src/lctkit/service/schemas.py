"""Pydantic request models for the HTTP service.

Rationals travel as "p/q" strings (exact decimals also accepted); the
endpoints parse and validate them with the library's own parsers so the
service and the in-process API enforce identical domains.
"""

from typing import Optional

from pydantic import BaseModel, Field


class T2MemberRequest(BaseModel):
    c: str = Field(description='threshold candidate in (0, 1], as "p/q"')


class T2WitnessesRequest(BaseModel):
    c: str
    max_m: Optional[int] = None
    max_k: Optional[int] = None
    max_r: Optional[int] = None


class T2EnumRequest(BaseModel):
    lo: str
    hi: str
    max_den: int
    closed_lo: bool = True
    closed_hi: bool = True
    workers: Optional[int] = None
    use_cache: bool = True


class T2AccumRequest(BaseModel):
    lo: str
    hi: str
    max_den: int
    targets: list[str]
    delta: str
    closed_lo: bool = True
    closed_hi: bool = True
    workers: Optional[int] = None
    use_cache: bool = True


class GermHjRequest(BaseModel):
    m: int
    q: int


class GermMldRequest(BaseModel):
    m: int
    q: int
    l1: str = "0"
    l2: str = "0"
    include_codim1: bool = False


class GermDiscRequest(BaseModel):
    m: int
    q: int
    v1: str
    v2: str
    l1: str = "0"
    l2: str = "0"


class LctRequest(BaseModel):
    graph: dict
    components: Optional[list[int]] = None


class VerifyLemmaP1Request(BaseModel):
    n: int = 6
    max_m: Optional[int] = None
    max_den: Optional[int] = None


class VerifyPairDiscrRequest(BaseModel):
    samples: int = 1000
    seed: Optional[int] = None
    max_m: int = 50
    n_lo: int = 6
    n_hi: int = 12


class VerifyLct2Request(BaseModel):
    n: int = 6
    max_m: Optional[int] = None
    max_den: Optional[int] = None


class VerifyEqSRequest(BaseModel):
    count: int = 500
    seed: Optional[int] = None


class LedgerEqSRequest(BaseModel):
    pa: int
    gamma_sq: str
    terms: list[list[int]]  # [s, r] pairs
    gamma: Optional[str] = None
    c: Optional[str] = None
    mode: str = "check"  # check | solve-c | solve-gamma
