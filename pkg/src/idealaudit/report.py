"""Canonical JSON and flat CSV output."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .auditor import CHECKS, AuditConfig, AuditRecord, FamilySummary

SCHEMA_VERSION = "1.0"
TOOL_VERSION = "0.1.0"
SAFE_INT = 2**53


def canonical(obj):
    """Plain JSON values: rationals as "p/q", integers beyond 53 bits as strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if -SAFE_INT < obj < SAFE_INT else str(obj)
    if isinstance(obj, float):
        raise TypeError(f"refusing to serialise inexact value {obj!r}")
    if isinstance(obj, Fraction) or type(obj).__name__ == "mpq":
        f = Fraction(int(obj.numerator), int(obj.denominator))
        return canonical(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return canonical(obj.to_dict())
    return str(obj)


def dumps(doc) -> str:
    return json.dumps(canonical(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory and rename it."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _meta(record: AuditRecord, config: AuditConfig) -> dict:
    meta = dict(record.meta)
    meta.update(seed=config.seed, trials=config.trials, tool_version=TOOL_VERSION)
    return meta


def record_document(record: AuditRecord, config: AuditConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "ring": record.ring,
        "ideal": record.ideal,
        "invariants": record.invariants,
        "inequalities": [v.to_dict() for v in record.verdicts],
        "meta": _meta(record, config),
    }


def family_document(summary: FamilySummary, config: AuditConfig, source: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "source": source,
        "count": summary.count,
        "tallies": summary.tallies,
        "counterexamples": [
            {"ideal": r.ideal, "checks": [v.name for v in r.verdicts if v.counterexample]}
            for r in summary.rows
            if any(v.counterexample for v in r.verdicts)
        ],
        "retained": [record_document(r, config) for r in summary.retained],
        "meta": {"seed": config.seed, "trials": config.trials, "n_max": config.n_max, "tool_version": TOOL_VERSION},
    }


CSV_INVARIANTS = ("mu", "loewy", "ord", "colength", "e", "m_full")


def csv_text(records: Iterable[AuditRecord], checks: Sequence[str] = CHECKS) -> str:
    """One row per ideal, one slack column per check (blank when skipped)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["ring", "ideal", *CSV_INVARIANTS, *(f"slack_{c}" for c in checks)])
    for rec in records:
        slacks = {v.name: v.slack for v in rec.verdicts}
        row = [rec.ring, rec.ideal]
        row += ["" if rec.invariants.get(k) is None else canonical(rec.invariants[k]) for k in CSV_INVARIANTS]
        row += ["" if slacks.get(c) is None else canonical(slacks[c]) for c in checks]
        w.writerow(row)
    return buf.getvalue()


def emit(text: str, path: Optional[str], stream) -> None:
    if path:
        write_atomic(path, text)
    else:
        stream.write(text)
