"""Run configuration: compiled defaults, optional flat config file, env overrides.

Precedence, lowest to highest: built-in defaults, config file
(KEY=VALUE lines), environment variables (LCTKIT_CACHE_DIR,
LCTKIT_WORKERS, LCTKIT_SERVER, LCTKIT_CONFIG for the file path),
explicit keyword overrides (CLI flags).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import UsageError

ENV_CACHE_DIR = "LCTKIT_CACHE_DIR"
ENV_WORKERS = "LCTKIT_WORKERS"
ENV_SERVER = "LCTKIT_SERVER"
ENV_CONFIG = "LCTKIT_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    # caps for the capped witness enumeration used in cross-checks
    oracle_max_m: int = 12
    oracle_max_k: int = 12
    oracle_max_r: int = 6
    # default bounds for the exhaustive scans
    scan_max_m: int = 60
    scan_max_den: int = 60
    cache_dir: str = str(Path.home() / ".cache" / "lctkit")
    output_format: str = "table"  # json | csv | table
    workers: int = 1
    server: str = ""  # empty: in-process service

    def __post_init__(self) -> None:
        for name in ("oracle_max_m", "oracle_max_k", "oracle_max_r",
                     "scan_max_m", "scan_max_den"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")
        if self.workers < 1:
            raise UsageError("workers must be at least 1")
        if self.output_format not in ("json", "csv", "table"):
            raise UsageError(f"unknown output format {self.output_format!r}")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_INT_KEYS = {"oracle_max_m", "oracle_max_k", "oracle_max_r",
             "scan_max_m", "scan_max_den", "workers"}


def _parse_config_file(path: str) -> dict:
    values: dict = {}
    known = {f.name for f in fields(RunConfig)}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected KEY=VALUE, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key not in known:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = int(value) if key in _INT_KEYS else value
    return values


def load_config(config_file: str | None = None, **overrides) -> RunConfig:
    """Resolve the effective configuration (defaults < file < env < overrides)."""
    cfg = RunConfig()
    path = config_file or os.environ.get(ENV_CONFIG)
    if path:
        cfg = replace(cfg, **_parse_config_file(path))
    env: dict = {}
    if os.environ.get(ENV_CACHE_DIR):
        env["cache_dir"] = os.environ[ENV_CACHE_DIR]
    if os.environ.get(ENV_WORKERS):
        try:
            env["workers"] = int(os.environ[ENV_WORKERS])
        except ValueError as exc:
            raise UsageError(f"{ENV_WORKERS} must be an integer") from exc
    if os.environ.get(ENV_SERVER):
        env["server"] = os.environ[ENV_SERVER]
    if env:
        cfg = replace(cfg, **env)
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg
