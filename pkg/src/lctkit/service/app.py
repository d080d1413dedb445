"""FastAPI service wrapping the threshold library.

The service owns the enumeration cache and the worker pool; clients
(including the bundled CLI) talk JSON.  Domain, usage and structural
errors map to HTTP 422 with a machine-readable kind, so a thin client
can translate them back to its usage exit code.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..cache import EnumerationCache
from ..config import RunConfig, load_config
from ..errors import DomainError, StructuralError, UsageError
from ..germs import (AxesBoundary, CyclicQuotientGerm, LatticeVector, hj_expand,
                     mld_axes, toric_discrepancy)
from ..graphs import ResolutionGraph, lct_from_graph
from ..lemmas import EqSLedger, adjunction_holds, solve_for_c, solve_for_gamma
from ..rationals import HALF, ONE, format_rational, parse_rational
from ..thresholds import (EnumRow, accumulation_report, form_family, iter_witnesses,
                          t2_enumerate_rows, t2_member)
from ..verify import verify_eq_s, verify_lct2, verify_lemma_p1, verify_pair_discr
from .schemas import (GermDiscRequest, GermHjRequest, GermMldRequest, LctRequest,
                      LedgerEqSRequest, T2AccumRequest, T2EnumRequest, T2MemberRequest,
                      T2WitnessesRequest, VerifyEqSRequest, VerifyLct2Request,
                      VerifyLemmaP1Request, VerifyPairDiscrRequest)

ENDPOINT_NOTE = (
    "Above 1/2 the certified set is {1/2 + 1/n}; the family is reported both "
    "with n >= 2 (which includes 1) and with n >= 3, because the two "
    "conventions disagree about the endpoint, and 1/2 itself is a member "
    "through the reciprocal-integer branch, not through the family."
)


def _rows_payload(rows: list[EnumRow]) -> list[dict]:
    return [{
        "c": format_rational(row.c),
        "verdict": row.verdict.to_json(),
        "n_form": row.n_form,
    } for row in rows]


def create_app(config: RunConfig | None = None) -> FastAPI:
    cfg = config or load_config()
    cache = EnumerationCache(cfg.cache_dir)
    app = FastAPI(title="lctkit", version=__version__,
                  description="Exact two-dimensional log canonical threshold service")

    @app.exception_handler(DomainError)
    @app.exception_handler(UsageError)
    @app.exception_handler(StructuralError)
    async def _error_handler(_request: Request, exc: Exception):
        kind = {"DomainError": "domain", "UsageError": "usage",
                "StructuralError": "structural"}[type(exc).__name__]
        return JSONResponse(status_code=422, content={"detail": str(exc), "kind": kind})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/config")
    def show_config() -> dict:
        return cfg.as_dict()

    @app.post("/t2/member")
    def t2_member_endpoint(req: T2MemberRequest) -> dict:
        return t2_member(parse_rational(req.c)).to_json()

    @app.post("/t2/witnesses")
    def t2_witnesses_endpoint(req: T2WitnessesRequest) -> dict:
        caps = {
            "max_m": req.max_m if req.max_m is not None else cfg.oracle_max_m,
            "max_k": req.max_k if req.max_k is not None else cfg.oracle_max_k,
            "max_r": req.max_r if req.max_r is not None else cfg.oracle_max_r,
        }
        witnesses = iter_witnesses(parse_rational(req.c), **caps)
        return {"c": req.c, "caps": caps,
                "witnesses": [w.to_json() for w in witnesses]}

    def _enumerate(lo: Fraction, hi: Fraction, max_den: int,
                   closed: tuple[bool, bool], workers: int,
                   use_cache: bool) -> tuple[list[EnumRow], bool]:
        key = EnumerationCache.key(lo, hi, max_den, closed)
        if use_cache:
            cached = cache.load(key)
            if cached is not None:
                return cached, True
        rows = t2_enumerate_rows(lo, hi, max_den, closed, workers)
        if use_cache:
            cache.store(key, rows)
        return rows, False

    @app.post("/t2/enumerate")
    def t2_enumerate_endpoint(req: T2EnumRequest) -> dict:
        lo, hi = parse_rational(req.lo), parse_rational(req.hi)
        closed = (req.closed_lo, req.closed_hi)
        workers = req.workers if req.workers is not None else cfg.workers
        rows, hit = _enumerate(lo, hi, req.max_den, closed, workers, req.use_cache)
        doc = {
            "lo": format_rational(lo),
            "hi": format_rational(hi),
            "max_den": req.max_den,
            "closed_lo": closed[0],
            "closed_hi": closed[1],
            "cache_hit": hit,
            "members": [format_rational(r.c) for r in rows],
            "rows": _rows_payload(rows),
        }
        if hi > HALF:
            fam_lo = max(lo, HALF)
            doc["family_n_ge_2"] = [format_rational(x) for x in
                                    form_family(fam_lo, hi, req.max_den, 2)]
            doc["family_n_ge_3"] = [format_rational(x) for x in
                                    form_family(fam_lo, hi, req.max_den, 3)]
            doc["endpoint_note"] = ENDPOINT_NOTE
        return doc

    @app.post("/t2/accumulation")
    def t2_accumulation_endpoint(req: T2AccumRequest) -> dict:
        lo, hi = parse_rational(req.lo), parse_rational(req.hi)
        closed = (req.closed_lo, req.closed_hi)
        workers = req.workers if req.workers is not None else cfg.workers
        rows, hit = _enumerate(lo, hi, req.max_den, closed, workers, req.use_cache)
        values = [r.c for r in rows]
        targets = [parse_rational(t) for t in req.targets]
        delta = parse_rational(req.delta)
        return {
            "lo": format_rational(lo),
            "hi": format_rational(hi),
            "max_den": req.max_den,
            "cache_hit": hit,
            "values_count": len(values),
            "delta": format_rational(delta),
            "report": accumulation_report(values, targets, delta),
        }

    @app.post("/germ/hj")
    def germ_hj_endpoint(req: GermHjRequest) -> dict:
        return {"m": req.m, "q": req.q, "expansion": hj_expand(req.m, req.q)}

    @app.post("/germ/mld")
    def germ_mld_endpoint(req: GermMldRequest) -> dict:
        germ = CyclicQuotientGerm(req.m, req.q)
        boundary = AxesBoundary(parse_rational(req.l1), parse_rational(req.l2))
        value, vec = mld_axes(germ, boundary, req.include_codim1)
        return {
            "mld": format_rational(value),
            "argmin": [format_rational(vec.v1), format_rational(vec.v2)],
            "include_codim1": req.include_codim1,
        }

    @app.post("/germ/discrepancy")
    def germ_disc_endpoint(req: GermDiscRequest) -> dict:
        germ = CyclicQuotientGerm(req.m, req.q)
        boundary = AxesBoundary(parse_rational(req.l1), parse_rational(req.l2))
        vec = LatticeVector(germ, parse_rational(req.v1), parse_rational(req.v2))
        return {"value": format_rational(toric_discrepancy(germ, boundary, vec))}

    @app.post("/lct")
    def lct_endpoint(req: LctRequest) -> dict:
        graph = ResolutionGraph.from_json(req.graph)
        result = lct_from_graph(graph, req.components)
        doc = result.to_json()
        verdict = t2_member(result.value)
        doc["membership"] = verdict.to_json()
        if graph.name:
            doc["graph"] = graph.name
        return doc

    @app.post("/verify/lemma-p1")
    def verify_lemma_p1_endpoint(req: VerifyLemmaP1Request) -> dict:
        return verify_lemma_p1(req.n,
                               req.max_m if req.max_m is not None else cfg.scan_max_m,
                               req.max_den if req.max_den is not None else cfg.scan_max_den)

    @app.post("/verify/pair-discr")
    def verify_pair_discr_endpoint(req: VerifyPairDiscrRequest) -> dict:
        return verify_pair_discr(req.samples, req.seed, req.max_m, req.n_lo, req.n_hi)

    @app.post("/verify/lct2")
    def verify_lct2_endpoint(req: VerifyLct2Request) -> dict:
        # the full hyperstandard pool grows quadratically; default bounds
        # stay desk-sized
        return verify_lct2(req.n,
                           req.max_m if req.max_m is not None else 12,
                           req.max_den if req.max_den is not None else 8)

    @app.post("/verify/eq-s")
    def verify_eq_s_endpoint(req: VerifyEqSRequest) -> dict:
        return verify_eq_s(req.count, req.seed)

    @app.post("/ledger/eq-s")
    def ledger_eq_s_endpoint(req: LedgerEqSRequest) -> dict:
        if req.mode not in ("check", "solve-c", "solve-gamma"):
            raise UsageError(f"unknown mode {req.mode!r}")
        if req.mode == "check" and (req.gamma is None or req.c is None):
            raise UsageError("check mode needs both gamma and c")
        gamma = parse_rational(req.gamma) if req.gamma is not None else ONE
        c = parse_rational(req.c) if req.c is not None else HALF
        terms = tuple((int(s), int(r)) for s, r in req.terms)
        ledger = EqSLedger(req.pa, parse_rational(req.gamma_sq), gamma, terms, c)
        doc: dict = {"mode": req.mode}
        if req.mode == "check":
            doc["holds"] = adjunction_holds(ledger)
        elif req.mode == "solve-c":
            doc["solution"] = solve_for_c(ledger).to_json()
        else:
            doc["solution"] = solve_for_gamma(ledger).to_json()
        return doc

    return app


app = create_app()
