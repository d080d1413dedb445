"""Versioned JSON cache for interval enumerations.

Entries are keyed by (lo, hi, maxden, end flags); a stored file carries
the cache format version and the full key, and a hit requires both to
match exactly, so a format bump or hash collision can only cause a
recomputation, never a wrong answer.  Cached rows deserialize to the
same objects the enumeration produces, which keeps repeated runs
byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .rationals import format_rational, parse_rational, ExtendedNat, parse_extended_nat
from .thresholds import CoeffTerm, EnumRow, MembershipVerdict, WitnessT2

CACHE_VERSION = 1


def _row_to_json(row: EnumRow) -> dict:
    return {
        "c": format_rational(row.c),
        "verdict": row.verdict.to_json(),
        "n_form": row.n_form,
    }


def verdict_from_json(doc: dict) -> MembershipVerdict:
    c = parse_rational(doc["c"])
    kind = doc["verdict"]
    if kind == "in_t1":
        n = doc["n"]
        ext = parse_extended_nat(str(n)) if isinstance(n, str) else ExtendedNat(int(n))
        return MembershipVerdict(c, "in_t1", n=ext)
    if kind == "in_t2":
        witness = WitnessT2(c, tuple(CoeffTerm(int(t["m"]), int(t["k"]))
                                     for t in doc["witness"]))
        return MembershipVerdict(c, "in_t2", witness=witness)
    return MembershipVerdict(c, "not_in_t2", bounds=doc.get("bounds"))


def _row_from_json(doc: dict) -> EnumRow:
    return EnumRow(parse_rational(doc["c"]), verdict_from_json(doc["verdict"]),
                   doc.get("n_form"))


class EnumerationCache:
    def __init__(self, directory: str):
        self.directory = Path(directory)

    @staticmethod
    def key(lo: Fraction, hi: Fraction, maxden: int,
            closed_ends: tuple[bool, bool]) -> dict:
        return {
            "lo": format_rational(lo),
            "hi": format_rational(hi),
            "maxden": maxden,
            "closed_lo": closed_ends[0],
            "closed_hi": closed_ends[1],
        }

    def _path(self, key: dict) -> Path:
        digest = hashlib.sha256(
            json.dumps(key, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
        return self.directory / f"enum-{digest[:24]}.json"

    def load(self, key: dict) -> Optional[list[EnumRow]]:
        path = self._path(key)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        if doc.get("version") != CACHE_VERSION or doc.get("key") != key:
            return None
        try:
            return [_row_from_json(row) for row in doc["rows"]]
        except (KeyError, TypeError, ValueError):
            return None

    def store(self, key: dict, rows: list[EnumRow]) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        doc = {
            "version": CACHE_VERSION,
            "key": key,
            "rows": [_row_to_json(row) for row in rows],
        }
        self._path(key).write_text(
            json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n",
            encoding="utf-8")
