"""Verification records and their serializations.

A report is a list of checks plus optional tables.  Hard checks are exact
identities; soft checks compare a fitted constant against a configured
slack and only warn on failure unless promoted to hard.  Timing fields are
kept apart from the payload so that two runs with the same configuration
serialize identically once timings are stripped.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

SCHEMA_VERSION = "1.0"

PASS, FAIL, WARN, BUDGET, SKIP = "pass", "fail", "warn", "budget-exceeded", "skipped"
HARD, SOFT = "hard", "soft"

EXIT_PASS, EXIT_HARD_FAIL, EXIT_USAGE = 0, 1, 2

CHECK_FIELDS = ("suite", "name", "anchor", "kind", "status", "measured", "bound", "ratio", "runtime")


def plain(x: Any) -> Any:
    """JSON-friendly image of exact and numpy values.  Exact rationals keep
    their exact text; complex numbers become [re, im]."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, float):
        return x if math.isfinite(x) else str(x)
    if isinstance(x, complex):
        return [plain(x.real), plain(x.imag)]
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [plain(v) for v in items]
    if hasattr(x, "item") and callable(x.item):  # numpy scalar
        return plain(x.item())
    if hasattr(x, "tolist"):
        return plain(x.tolist())
    return str(x)


@dataclass
class Check:
    name: str
    anchor: str
    kind: str = HARD
    status: str = PASS
    measured: Any = None
    bound: Any = None
    ratio: Optional[float] = None
    runtime: float = 0.0
    detail: Dict[str, Any] = field(default_factory=dict)
    suite: str = ""

    def payload(self) -> dict:
        out = {k: plain(getattr(self, k)) for k in CHECK_FIELDS if k != "runtime"}
        out["detail"] = plain(self.detail)
        return out

    def as_dict(self) -> dict:
        d = self.payload()
        d["runtime"] = round(self.runtime, 6)
        return d

    @property
    def blocking(self) -> bool:
        return self.status == FAIL


@dataclass
class Report:
    suite: str
    config: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    tables: Dict[str, List[dict]] = field(default_factory=dict)
    primary_table: Optional[str] = None
    runtime: float = 0.0

    def add(self, check: Check) -> Check:
        check.suite = check.suite or self.suite
        self.checks.append(check)
        return check

    def summary(self) -> dict:
        counts = {s: 0 for s in (PASS, FAIL, WARN, BUDGET, SKIP)}
        for c in self.checks:
            counts[c.status] = counts.get(c.status, 0) + 1
        return {"checks": len(self.checks), **counts, "status": self.status}

    @property
    def status(self) -> str:
        if any(c.status == FAIL for c in self.checks):
            return FAIL
        if any(c.status == BUDGET for c in self.checks):
            return BUDGET
        if any(c.status == WARN for c in self.checks):
            return WARN
        return PASS

    def exit_code(self) -> int:
        """Unrun checks (budget exceeded) are not verified, so they block too;
        soft warnings do not."""
        return EXIT_HARD_FAIL if self.status in (FAIL, BUDGET) else EXIT_PASS

    def payload(self) -> dict:
        """Everything except timings, in a fixed key order."""
        return {"schema_version": SCHEMA_VERSION, "suite": self.suite, "config": plain(self.config),
                "summary": self.summary(), "checks": [c.payload() for c in self.checks],
                "tables": {k: plain(v) for k, v in self.tables.items()}}

    def as_dict(self) -> dict:
        d = self.payload()
        d["checks"] = [c.as_dict() for c in self.checks]
        d["runtime"] = round(self.runtime, 6)
        return d

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _csv(rows: Sequence[dict], columns: Optional[Sequence[str]] = None) -> str:
    buf = io.StringIO()
    cols = list(columns) if columns else (list(rows[0].keys()) if rows else [])
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k)) for k in cols})
    return buf.getvalue()


def _cell(v):
    v = plain(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return v


def _text(report: Report) -> str:
    lines = [f"# {report.suite}  schema {SCHEMA_VERSION}  status {report.status}"]
    for c in report.checks:
        tag = c.status.upper()
        m = "" if c.measured is None else f"  measured={_short(c.measured)}"
        b = "" if c.bound is None else f"  bound={_short(c.bound)}"
        lines.append(f"{tag:<16}{c.kind:<5} {c.suite}:{c.name}{m}{b}")
    s = report.summary()
    lines.append(f"# {s['checks']} checks: {s[PASS]} pass, {s[FAIL]} fail, {s[WARN]} warn, {s[BUDGET]} over budget")
    return "\n".join(lines) + "\n"


def _short(v) -> str:
    v = plain(v)
    text = json.dumps(v) if isinstance(v, (list, dict)) else str(v)
    return text if len(text) <= 60 else text[:57] + "..."


def emit(report: Report, fmt: str = "json", timings: bool = True) -> bytes:
    """Serialize a report.  CSV emits the suite's primary table when it has
    one (otherwise the check list)."""
    if fmt == "json":
        body = report.as_dict() if timings else report.payload()
        return (json.dumps(body, indent=2) + "\n").encode()
    if fmt == "csv":
        if report.primary_table and report.primary_table in report.tables:
            return _csv(report.tables[report.primary_table]).encode()
        rows = [c.as_dict() if timings else c.payload() for c in report.checks]
        return _csv(rows, [k for k in CHECK_FIELDS if timings or k != "runtime"]).encode()
    if fmt == "text":
        return _text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


def from_dict(d: dict) -> Report:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
    rep = Report(d["suite"], d.get("config", {}), tables=d.get("tables", {}), runtime=d.get("runtime", 0.0))
    for c in d.get("checks", []):
        rep.checks.append(Check(c["name"], c["anchor"], c["kind"], c["status"], c.get("measured"),
                                c.get("bound"), c.get("ratio"), c.get("runtime", 0.0),
                                c.get("detail", {}), c.get("suite", d["suite"])))
    return rep


def merge(reports: Sequence[Report]) -> Report:
    """Concatenate reports in suite-name order; tables are prefixed by suite."""
    out = Report("merged")
    for rep in sorted(reports, key=lambda r: r.suite):
        out.config[rep.suite] = rep.config
        for c in rep.checks:
            out.checks.append(c)
        for k, v in rep.tables.items():
            out.tables[f"{rep.suite}.{k}"] = v
        out.runtime += rep.runtime
    return out
