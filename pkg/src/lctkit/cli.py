"""Thin command-line client of the threshold service.

Every command builds a request and sends it to the service: a remote
one when --server (or LCTKIT_SERVER) is set, otherwise an in-process
instance of the same FastAPI app, so both paths exercise identical
code.  Exit codes: 0 success, 1 a verification found counterexamples,
2 parse/usage/domain errors.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click
import httpx

from .config import RunConfig, load_config
from .errors import UsageError


class ServiceClient:
    """HTTP or in-process ASGI transport with uniform error mapping."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self._base = cfg.server or "http://lctkit.local"
        self._transport: Optional[httpx.AsyncBaseTransport] = None
        if not cfg.server:
            from .service.app import create_app
            self._transport = httpx.ASGITransport(app=create_app(cfg))

    def _request(self, method: str, path: str, payload: Optional[dict]) -> httpx.Response:
        import asyncio

        async def go() -> httpx.Response:
            async with httpx.AsyncClient(transport=self._transport, base_url=self._base,
                                         timeout=600.0) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())

    def _handle(self, resp: httpx.Response) -> dict:
        if resp.status_code == 200:
            return resp.json()
        try:
            detail = resp.json().get("detail")
        except ValueError:
            detail = resp.text
        click.echo(f"error: {detail}", err=True)
        raise SystemExit(2)

    def post(self, path: str, payload: dict) -> dict:
        return self._handle(self._request("POST", path, payload))

    def get(self, path: str) -> dict:
        return self._handle(self._request("GET", path, None))


def _json_dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _witness_text(witness: Optional[list[dict]]) -> str:
    if not witness:
        return ""
    return ";".join(f"{t['m']}:{t['k']}" for t in witness)


def _render_rows(rows: list[dict], fmt: str) -> str:
    header = ["c", "verdict", "n_form", "witness"]
    body = []
    for row in rows:
        verdict = row["verdict"]
        body.append([
            row["c"],
            verdict["verdict"],
            "" if row.get("n_form") is None else str(row["n_form"]),
            _witness_text(verdict.get("witness")),
        ])
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(cells) for cells in body]
        return "\n".join(lines)
    widths = [max(len(header[i]), *(len(cells[i]) for cells in body)) if body else len(header[i])
              for i in range(len(header))]
    lines = ["  ".join(header[i].ljust(widths[i]) for i in range(len(header)))]
    for cells in body:
        lines.append("  ".join(cells[i].ljust(widths[i]) for i in range(len(header))))
    return "\n".join(lines)


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; "
              "default is an in-process instance.")
@click.option("--config", "config_file", default=None, type=click.Path(),
              help="Flat KEY=VALUE config file.")
@click.option("--format", "output_format", default=None,
              type=click.Choice(["json", "csv", "table"]), help="Listing format.")
@click.option("--cache-dir", default=None, help="Enumeration cache directory.")
@click.option("--workers", default=None, type=int, help="Worker processes for enumeration.")
@click.pass_context
def main(ctx: click.Context, server: Optional[str], config_file: Optional[str],
         output_format: Optional[str], cache_dir: Optional[str],
         workers: Optional[int]) -> None:
    """Exact two-dimensional log canonical threshold toolkit."""
    try:
        cfg = load_config(config_file, server=server, output_format=output_format,
                          cache_dir=cache_dir, workers=workers)
    except UsageError as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(2)
    ctx.obj = cfg


def _client(ctx: click.Context) -> ServiceClient:
    return ServiceClient(ctx.obj)


# --------------------------------------------------------------------- t2

@main.group()
def t2() -> None:
    """Membership, enumeration and accumulation for the threshold set."""


@t2.command("member")
@click.argument("c")
@click.pass_context
def t2_member_cmd(ctx: click.Context, c: str) -> None:
    """Decide membership of C and print the JSON verdict."""
    doc = _client(ctx).post("/t2/member", {"c": c})
    click.echo(_json_dumps(doc))


@t2.command("enum")
@click.option("--lo", required=True)
@click.option("--hi", required=True)
@click.option("--max-den", required=True, type=int)
@click.option("--open-lo", is_flag=True, help="Exclude the left endpoint.")
@click.option("--open-hi", is_flag=True, help="Exclude the right endpoint.")
@click.option("--no-cache", is_flag=True, help="Bypass the enumeration cache.")
@click.pass_context
def t2_enum_cmd(ctx: click.Context, lo: str, hi: str, max_den: int,
                open_lo: bool, open_hi: bool, no_cache: bool) -> None:
    """List the certified members of [LO, HI] with denominator <= MAX-DEN."""
    cfg: RunConfig = ctx.obj
    doc = _client(ctx).post("/t2/enumerate", {
        "lo": lo, "hi": hi, "max_den": max_den,
        "closed_lo": not open_lo, "closed_hi": not open_hi,
        "workers": cfg.workers, "use_cache": not no_cache,
    })
    doc.pop("cache_hit", None)  # repeated runs must be byte-identical
    if cfg.output_format == "json":
        click.echo(_json_dumps(doc))
    else:
        click.echo(_render_rows(doc["rows"], cfg.output_format))


@t2.command("accum")
@click.option("--lo", required=True)
@click.option("--hi", required=True)
@click.option("--max-den", required=True, type=int)
@click.option("--targets", required=True, help='Comma-separated targets, e.g. "1/2,3/5".')
@click.option("--delta", required=True)
@click.option("--no-cache", is_flag=True)
@click.pass_context
def t2_accum_cmd(ctx: click.Context, lo: str, hi: str, max_den: int,
                 targets: str, delta: str, no_cache: bool) -> None:
    """Count members near each target (target itself excluded)."""
    cfg: RunConfig = ctx.obj
    doc = _client(ctx).post("/t2/accumulation", {
        "lo": lo, "hi": hi, "max_den": max_den,
        "targets": [t.strip() for t in targets.split(",") if t.strip()],
        "delta": delta, "workers": cfg.workers, "use_cache": not no_cache,
    })
    doc.pop("cache_hit", None)
    click.echo(_json_dumps(doc))


# --------------------------------------------------------------------- germ

@main.group()
def germ() -> None:
    """Cyclic quotient germ calculus."""


@germ.command("hj")
@click.argument("m", type=int)
@click.argument("q", type=int)
@click.pass_context
def germ_hj_cmd(ctx: click.Context, m: int, q: int) -> None:
    """Continued-fraction expansion of the (M, Q) germ's resolution chain."""
    doc = _client(ctx).post("/germ/hj", {"m": m, "q": q})
    click.echo(" ".join(str(a) for a in doc["expansion"]))


@germ.command("mld")
@click.argument("m", type=int)
@click.argument("q", type=int)
@click.option("--l1", default="0", help="Coefficient of the first axis.")
@click.option("--l2", default="0", help="Coefficient of the second axis.")
@click.option("--include-codim1", is_flag=True,
              help="Let the axis valuations themselves compete.")
@click.pass_context
def germ_mld_cmd(ctx: click.Context, m: int, q: int, l1: str, l2: str,
                 include_codim1: bool) -> None:
    """Minimal discrepancy of the germ against the axes boundary."""
    doc = _client(ctx).post("/germ/mld", {
        "m": m, "q": q, "l1": l1, "l2": l2, "include_codim1": include_codim1,
    })
    click.echo(doc["mld"])


@germ.command("disc")
@click.argument("m", type=int)
@click.argument("q", type=int)
@click.option("--v1", required=True, help="First coordinate of the lattice vector.")
@click.option("--v2", required=True, help="Second coordinate of the lattice vector.")
@click.option("--l1", default="0")
@click.option("--l2", default="0")
@click.pass_context
def germ_disc_cmd(ctx: click.Context, m: int, q: int, v1: str, v2: str,
                  l1: str, l2: str) -> None:
    """Discrepancy of one lattice valuation."""
    doc = _client(ctx).post("/germ/discrepancy", {
        "m": m, "q": q, "v1": v1, "v2": v2, "l1": l1, "l2": l2,
    })
    click.echo(doc["value"])


# --------------------------------------------------------------------- lct

@main.group()
def lct() -> None:
    """Thresholds from resolution graphs."""


@lct.command("graph")
@click.argument("graph_file", type=click.Path())
@click.option("--components", default=None,
              help='Override component multiplicities, e.g. "1,1".')
@click.pass_context
def lct_graph_cmd(ctx: click.Context, graph_file: str, components: Optional[str]) -> None:
    """Threshold of the divisor described by GRAPH_FILE, with the binding constraint."""
    try:
        with open(graph_file, "r", encoding="utf-8") as fh:
            graph_doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: cannot read graph file {graph_file}: {exc}", err=True)
        raise SystemExit(2)
    mults = None
    if components is not None:
        try:
            mults = [int(x) for x in components.split(",") if x.strip()]
        except ValueError:
            click.echo(f"error: bad component list {components!r}", err=True)
            raise SystemExit(2)
    doc = _client(ctx).post("/lct", {"graph": graph_doc, "components": mults})
    click.echo(doc["lct"])
    if "binding" in doc:
        click.echo(f"binding: {doc['binding']['kind']} {doc['binding']['id']}")
    elif doc.get("capped"):
        click.echo("binding: none (capped at 1)")


# --------------------------------------------------------------------- verify

@main.group()
def verify() -> None:
    """Exhaustive and sampled verifiers; exit 1 when counterexamples exist."""


def _finish_verify(doc: dict) -> None:
    click.echo(_json_dumps(doc))
    if doc["counterexamples"]:
        raise SystemExit(1)


@verify.command("lemma-p1")
@click.option("--n", "n_param", default=6, type=int, show_default=True)
@click.option("--max-m", default=None, type=int)
@click.option("--max-den", default=None, type=int)
@click.pass_context
def verify_lemma_p1_cmd(ctx: click.Context, n_param: int, max_m: Optional[int],
                        max_den: Optional[int]) -> None:
    """Scan degree-2 boundaries on the line for conclusion failures."""
    _finish_verify(_client(ctx).post("/verify/lemma-p1", {
        "n": n_param, "max_m": max_m, "max_den": max_den,
    }))


@verify.command("pair-discr")
@click.option("--samples", default=1000, type=int, show_default=True)
@click.option("--seed", default=None, type=int)
@click.option("--max-m", default=50, type=int, show_default=True)
@click.pass_context
def verify_pair_discr_cmd(ctx: click.Context, samples: int, seed: Optional[int],
                          max_m: int) -> None:
    """Sample the two-axes discrepancy implication on random germs."""
    _finish_verify(_client(ctx).post("/verify/pair-discr", {
        "samples": samples, "seed": seed, "max_m": max_m,
    }))


@verify.command("lct2")
@click.option("--n", "n_param", default=6, type=int, show_default=True)
@click.option("--max-m", default=None, type=int)
@click.option("--max-den", default=None, type=int)
@click.pass_context
def verify_lct2_cmd(ctx: click.Context, n_param: int, max_m: Optional[int],
                    max_den: Optional[int]) -> None:
    """Scan quotient germs for failures of the rounding-up implication."""
    _finish_verify(_client(ctx).post("/verify/lct2", {
        "n": n_param, "max_m": max_m, "max_den": max_den,
    }))


@verify.command("eq-s")
@click.option("--random", "count", default=500, type=int, show_default=True,
              help="Number of random ledgers.")
@click.option("--seed", default=None, type=int)
@click.pass_context
def verify_eq_s_cmd(ctx: click.Context, count: int, seed: Optional[int]) -> None:
    """Solve/verify round trips of the adjunction identity."""
    _finish_verify(_client(ctx).post("/verify/eq-s", {"count": count, "seed": seed}))


# --------------------------------------------------------------------- ledger

@main.group()
def ledger() -> None:
    """Adjunction bookkeeping."""


@ledger.command("eq-s")
@click.option("--pa", required=True, type=int, help="Arithmetic genus.")
@click.option("--gamma-sq", required=True, help="Self-intersection (positive rational).")
@click.option("--terms", required=True, help='Correction terms "s:r,s:r,...".')
@click.option("--gamma", default=None, help="Curve coefficient in (0, 1].")
@click.option("--c", default=None, help="Threshold parameter in (0, 1].")
@click.option("--mode", default="check", show_default=True,
              type=click.Choice(["check", "solve-c", "solve-gamma"]))
@click.pass_context
def ledger_eq_s_cmd(ctx: click.Context, pa: int, gamma_sq: str, terms: str,
                    gamma: Optional[str], c: Optional[str], mode: str) -> None:
    """Check the adjunction identity or solve it for c or gamma."""
    try:
        parsed = [[int(a), int(b)] for a, b in
                  (item.split(":") for item in terms.split(",") if item.strip())]
    except ValueError:
        click.echo(f"error: bad terms {terms!r}, expected \"s:r,s:r\"", err=True)
        raise SystemExit(2)
    doc = _client(ctx).post("/ledger/eq-s", {
        "pa": pa, "gamma_sq": gamma_sq, "terms": parsed,
        "gamma": gamma, "c": c, "mode": mode,
    })
    click.echo(_json_dumps(doc))


# --------------------------------------------------------------------- config

@main.group(name="config")
def config_group() -> None:
    """Configuration."""


@config_group.command("show")
@click.pass_context
def config_show_cmd(ctx: click.Context) -> None:
    """Print the effective configuration."""
    cfg: RunConfig = ctx.obj
    click.echo(_json_dumps(cfg.as_dict()))


# --------------------------------------------------------------------- serve

@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8321, type=int, show_default=True)
@click.pass_context
def serve_cmd(ctx: click.Context, host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app
    uvicorn.run(create_app(ctx.obj), host=host, port=port)


if __name__ == "__main__":
    main()
